#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "ptl/model.hpp"
#include "ptl/syntax.hpp"

namespace ptl {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

// State names may also start with a digit, e.g. the outcomes of a die.
bool is_state_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

class ModelReader {
 public:
  ModelReader(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  ModelSpec read() {
    spec_.file = file_;
    spec_.name = file_.empty() ? "model" : std::filesystem::path(file_).stem().string();
    std::size_t pos = 0;
    bool saw_states = false;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      ++line_;
      std::string_view raw = text_.substr(pos, end - pos);
      pos = end + 1;
      std::string_view l = trim(strip_comment(raw));
      if (l.empty()) continue;
      if (auto s = section_name(l)) {
        section_ = *s;
        saw_states |= section_ == "states";
        continue;
      }
      if (l.rfind("initial", 0) == 0 && (l.size() == 7 || l[7] == ':' || std::isspace(static_cast<unsigned char>(l[7])))) {
        std::string_view rest = trim(l.substr(7));
        if (!rest.empty() && rest.front() == ':') rest = trim(rest.substr(1));
        if (!is_state_name(rest)) fail("expected a state name after 'initial:'");
        if (spec_.initial) fail("initial state declared twice");
        spec_.initial = std::string(rest);
        continue;
      }
      if (section_.empty()) fail("expected a section header (types, objects, states, actions, transitions, valuation)");
      if (section_ == "types") symbol(l);
      else if (section_ == "objects") objects(l);
      else if (section_ == "states") states(l);
      else if (section_ == "actions") actions(l);
      else if (section_ == "transitions") transition(l);
      else valuation(l);
    }
    if (!saw_states || spec_.states.empty()) {
      line_ = 0;
      fail("at least one state required");
    }
    return spec_;
  }

 private:
  std::string_view text_;
  std::string file_;
  ModelSpec spec_;
  std::string section_;
  int line_ = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(SourceSpan{file_, line_, 1, 0}, message);
  }

  static std::optional<std::string> section_name(std::string_view l) {
    if (l.back() == ':') l = trim(l.substr(0, l.size() - 1));
    for (const char* s : {"types", "objects", "states", "actions", "transitions", "valuation"})
      if (l == s) return std::string(s);
    return std::nullopt;
  }

  void identifier(std::string_view w, const char* what) const {
    bool ok = std::string_view(what) == "state" ? is_state_name(w) : is_identifier(w);
    if (!ok) fail(std::string("invalid ") + what + " name '" + std::string(w) + "'");
  }

  Type type_at(std::string_view text) const { return parse_type(text, TextOrigin{file_, line_, 1}); }

  void symbol(std::string_view l) {
    auto colon = l.find(':');
    if (colon == std::string_view::npos) fail("expected 'name : type' or 'name : type := definition'");
    SymbolDecl d;
    d.line = line_;
    d.name = std::string(trim(l.substr(0, colon)));
    identifier(d.name, "symbol");
    std::string_view rest = l.substr(colon + 1);
    if (auto def = rest.find(":="); def != std::string_view::npos) {
      d.definition = std::string(trim(rest.substr(def + 2)));
      if (d.definition.empty()) fail("empty definition for '" + d.name + "'");
      rest = rest.substr(0, def);
    }
    d.type = type_at(trim(rest));
    spec_.symbols.push_back(std::move(d));
  }

  void objects(std::string_view l) {
    auto colon = l.find(':');
    auto names = words(l.substr(0, colon));
    std::vector<std::string> sorts;
    if (colon != std::string_view::npos) sorts = words(l.substr(colon + 1));
    if (names.empty()) fail("expected object names");
    for (const auto& s : sorts) identifier(s, "sort");
    for (const auto& n : names) {
      identifier(n, "object");
      spec_.objects.push_back(ObjectDecl{n, sorts, line_});
    }
  }

  void states(std::string_view l) {
    for (const auto& n : words(l)) {
      identifier(n, "state");
      spec_.states.push_back(n);
    }
  }

  void actions(std::string_view l) {
    auto colon = l.find(':');
    if (colon == std::string_view::npos) {
      for (const auto& n : words(l)) {
        identifier(n, "action");
        spec_.actions.push_back(ActionDecl{n, 0, line_});
      }
      return;
    }
    ActionDecl a;
    a.line = line_;
    a.name = std::string(trim(l.substr(0, colon)));
    identifier(a.name, "action");
    Type t = type_at(trim(l.substr(colon + 1)));
    while (!t.is_action()) {
      if (t.kind() != Type::Kind::Arrow || !t.from().is_base(BaseKind::Object))
        fail("action '" + a.name + "' must have type obj -> ... -> action");
      ++a.arity;
      t = t.to();
    }
    spec_.actions.push_back(std::move(a));
  }

  GroundTerm term(std::string_view text) const {
    try {
      return parse_ground_term(text);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  void transition(std::string_view l) {
    static const std::regex re(R"(^(\S+)\s+--(.+?)-->\s*(\S+)\s*@\s*(\S+)$)");
    std::string line(l);
    std::smatch m;
    if (!std::regex_match(line, m, re)) fail("expected '<state> --<action>--> <state> @ <probability>'");
    TransitionDecl t;
    t.line = line_;
    t.source = m[1];
    if (t.source != "*") identifier(t.source, "state");
    t.action = term(m[2].str());
    t.target = m[3];
    identifier(t.target, "state");
    if (!parse_rational(m[4].str(), t.probability)) fail("malformed probability '" + m[4].str() + "'");
    spec_.transitions.push_back(std::move(t));
  }

  void valuation(std::string_view l) {
    auto colon = l.find(':');
    if (colon == std::string_view::npos) fail("expected '<state> : <atom> <atom> ...'");
    ValuationDecl v;
    v.line = line_;
    v.state = std::string(trim(l.substr(0, colon)));
    if (v.state != "*") identifier(v.state, "state");
    std::string_view rest = trim(l.substr(colon + 1));
    // Atoms are separated by whitespace outside parentheses.
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= rest.size(); ++i) {
      char c = i < rest.size() ? rest[i] : ' ';
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
        std::string_view w = trim(rest.substr(start, i - start));
        if (!w.empty()) v.atoms.push_back(term(w));
        start = i + 1;
      }
    }
    if (depth != 0) fail("unbalanced parentheses in atom list");
    spec_.valuation.push_back(std::move(v));
  }
};

}  // namespace

GroundTerm parse_ground_term(std::string_view text) {
  text = trim(text);
  GroundTerm t;
  auto open = text.find('(');
  t.head = std::string(trim(text.substr(0, open)));
  if (!is_identifier(t.head)) throw ParseError({}, "invalid ground term '" + std::string(text) + "'");
  if (open == std::string_view::npos) return t;
  if (text.back() != ')') throw ParseError({}, "missing ')' in '" + std::string(text) + "'");
  std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  std::size_t start = 0;
  while (true) {
    auto comma = inner.find(',', start);
    std::string_view arg = trim(inner.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!is_identifier(arg)) throw ParseError({}, "invalid argument '" + std::string(arg) + "' in '" + std::string(text) + "'");
    t.args.emplace_back(arg);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return t;
}

ModelSpec parse_model(std::string_view text, const std::string& file) { return ModelReader(text, file).read(); }

std::string print_model(const ModelSpec& spec) {
  std::ostringstream out;
  if (!spec.symbols.empty()) {
    out << "types\n";
    for (const auto& d : spec.symbols) {
      out << "  " << d.name << " : " << to_string(d.type);
      if (!d.definition.empty()) out << " := " << d.definition;
      out << "\n";
    }
  }
  if (!spec.objects.empty()) {
    out << "objects\n";
    for (const auto& o : spec.objects) {
      out << "  " << o.name;
      if (!o.sorts.empty()) {
        out << " :";
        for (const auto& s : o.sorts) out << " " << s;
      }
      out << "\n";
    }
  }
  out << "states\n ";
  for (const auto& s : spec.states) out << " " << s;
  out << "\n";
  if (spec.initial) out << "initial: " << *spec.initial << "\n";
  if (!spec.actions.empty()) {
    out << "actions\n";
    for (const auto& a : spec.actions) {
      out << "  " << a.name;
      if (a.arity > 0) {
        out << " :";
        for (std::size_t i = 0; i < a.arity; ++i) out << " obj ->";
        out << " action";
      }
      out << "\n";
    }
  }
  if (!spec.transitions.empty()) {
    out << "transitions\n";
    for (const auto& t : spec.transitions)
      out << "  " << t.source << " --" << t.action.str() << "--> " << t.target << " @ " << to_string(t.probability)
          << "\n";
  }
  if (!spec.valuation.empty()) {
    out << "valuation\n";
    for (const auto& v : spec.valuation) {
      out << "  " << v.state << " :";
      for (const auto& a : v.atoms) {
        std::string s = a.str();
        s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
        out << " " << s;
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model load_model(const std::string& path) { return validate_model(parse_model(read_file(path), path)); }

}  // namespace ptl
