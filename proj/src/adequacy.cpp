#include "ptl/adequacy.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace ptl {

namespace {

using Code = ModelError::Code;

bool is_outcome_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::size_t ProbabilitySpace::index(const std::string& outcome) const {
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    if (outcomes[i] == outcome) return i;
  throw ModelError(Code::UnknownOutcome, "unknown outcome '" + outcome + "'");
}

ProbabilitySpace make_space(std::vector<std::string> outcomes, std::vector<Rational> mass) {
  if (outcomes.empty()) throw ModelError(Code::InvalidSpace, "a probability space needs at least one outcome");
  if (outcomes.size() > 64) throw ModelError(Code::InvalidSpace, "at most 64 outcomes are supported");
  if (mass.size() != outcomes.size())
    throw ModelError(Code::InvalidSpace, "every outcome needs exactly one mass");
  std::set<std::string> seen;
  Rational total = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!is_outcome_name(outcomes[i])) throw ModelError(Code::InvalidSpace, "invalid outcome name '" + outcomes[i] + "'");
    if (!seen.insert(outcomes[i]).second)
      throw ModelError(Code::DuplicateDeclaration, "outcome '" + outcomes[i] + "' listed twice");
    if (mass[i] < 0)
      throw ModelError(Code::ProbabilityRange, "mass of '" + outcomes[i] + "' is negative: " + to_string(mass[i]),
                       mass[i]);
    total += mass[i];
  }
  if (total != 1) throw ModelError(Code::ProbabilitySum, "masses sum to " + to_string(total) + ", not 1", total);
  return ProbabilitySpace{std::move(outcomes), std::move(mass)};
}

ProbabilitySpace parse_space(std::string_view text, const std::string& file) {
  std::vector<std::string> outcomes;
  std::map<std::string, Rational> masses;
  std::vector<std::string> mass_order;
  bool saw_outcomes = false, saw_mass = false;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(SourceSpan{file, line_no, 1, 0}, msg); };
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view l = trim(strip_comment(raw));
    if (l.empty()) continue;
    auto colon = l.find(':');
    if (colon == std::string_view::npos) fail("expected 'outcomes:' or 'mass:'");
    std::string_view key = trim(l.substr(0, colon));
    std::istringstream rest{std::string(l.substr(colon + 1))};
    if (key == "outcomes") {
      if (saw_outcomes) fail("duplicate 'outcomes:' line");
      saw_outcomes = true;
      for (std::string w; rest >> w;) outcomes.push_back(w);
    } else if (key == "mass") {
      if (saw_mass) fail("duplicate 'mass:' line");
      saw_mass = true;
      for (std::string w; rest >> w;) {
        auto eq = w.find('=');
        Rational r;
        if (eq == std::string::npos || !parse_rational(w.substr(eq + 1), r)) fail("expected 'outcome=rational', got '" + w + "'");
        std::string name = w.substr(0, eq);
        if (!masses.emplace(name, r).second) fail("mass of '" + name + "' given twice");
        mass_order.push_back(name);
      }
    } else {
      fail("unknown key '" + std::string(key) + "'");
    }
  }
  if (!saw_outcomes) fail("missing 'outcomes:' line");
  if (!saw_mass) fail("missing 'mass:' line");
  std::vector<Rational> mass;
  for (const auto& o : outcomes) {
    auto it = masses.find(o);
    if (it == masses.end()) throw ModelError(Code::InvalidSpace, "no mass given for outcome '" + o + "'");
    mass.push_back(it->second);
  }
  for (const auto& name : mass_order)
    if (std::find(outcomes.begin(), outcomes.end(), name) == outcomes.end())
      throw ModelError(Code::UnknownOutcome, "mass given for unknown outcome '" + name + "'");
  return make_space(std::move(outcomes), std::move(mass));
}

ProbabilitySpace load_space(const std::string& path) { return parse_space(read_file(path), path); }

std::string print_space(const ProbabilitySpace& space) {
  std::string out = "outcomes:";
  for (const auto& o : space.outcomes) out += " " + o;
  out += "\nmass:";
  for (std::size_t i = 0; i < space.outcomes.size(); ++i) out += " " + space.outcomes[i] + "=" + to_string(space.mass[i]);
  return out + "\n";
}

SetExpr SetExpr::singleton(std::string outcome) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::Singleton, std::move(outcome), {}}));
}
SetExpr SetExpr::complement(SetExpr e) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::Complement, {}, {std::move(e)}}));
}
SetExpr SetExpr::union_of(SetExpr a, SetExpr b) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::Union, {}, {std::move(a), std::move(b)}}));
}
SetExpr SetExpr::intersection(SetExpr a, SetExpr b) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::Intersection, {}, {std::move(a), std::move(b)}}));
}

int SetExpr::depth() const {
  switch (kind()) {
    case Kind::Singleton: return 1;
    case Kind::Complement: return left().depth() + 1;
    default: return std::max(left().depth(), right().depth()) + 1;
  }
}

bool operator==(const SetExpr& a, const SetExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SetExpr::Kind::Singleton: return a.outcome() == b.outcome();
    case SetExpr::Kind::Complement: return a.left() == b.left();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

namespace {

class SetParser {
 public:
  explicit SetParser(std::string_view text) : text_(text) {}

  SetExpr parse() {
    SetExpr e = unions();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(SourceSpan{"", 1, static_cast<int>(pos_) + 1, 1}, "set expression: " + msg);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SetExpr unions() {
    SetExpr e = intersections();
    while (eat('|')) e = SetExpr::union_of(e, intersections());
    return e;
  }
  SetExpr intersections() {
    SetExpr e = unary();
    while (eat('&')) e = SetExpr::intersection(e, unary());
    return e;
  }
  SetExpr unary() {
    if (eat('~')) return SetExpr::complement(unary());
    if (eat('(')) {
      SetExpr e = unions();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (eat('{')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name.empty()) fail("expected an outcome name");
      if (!eat('}')) fail("expected '}'");
      return SetExpr::singleton(name);
    }
    skip();
    fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of input");
  }
};

// 0: union, 1: intersection, 2: complement/singleton
int set_level(const SetExpr& e) {
  switch (e.kind()) {
    case SetExpr::Kind::Union: return 0;
    case SetExpr::Kind::Intersection: return 1;
    default: return 2;
  }
}

std::string wrap(const SetExpr& e, int required) {
  std::string s = to_string(e);
  return set_level(e) < required ? "(" + s + ")" : s;
}

}  // namespace

SetExpr parse_set_expr(std::string_view text) { return SetParser(text).parse(); }

std::string to_string(const SetExpr& e) {
  switch (e.kind()) {
    case SetExpr::Kind::Singleton: return "{" + e.outcome() + "}";
    case SetExpr::Kind::Complement: return "~" + wrap(e.left(), 2);
    case SetExpr::Kind::Union: return wrap(e.left(), 0) + " | " + wrap(e.right(), 1);
    case SetExpr::Kind::Intersection: return wrap(e.left(), 1) + " & " + wrap(e.right(), 2);
  }
  return "?";
}

std::uint64_t denote_mask(const ProbabilitySpace& space, const SetExpr& e) {
  const std::uint64_t all = space.outcomes.size() == 64 ? ~0ULL : ((1ULL << space.outcomes.size()) - 1);
  switch (e.kind()) {
    case SetExpr::Kind::Singleton: return 1ULL << space.index(e.outcome());
    case SetExpr::Kind::Complement: return all & ~denote_mask(space, e.left());
    case SetExpr::Kind::Union: return denote_mask(space, e.left()) | denote_mask(space, e.right());
    case SetExpr::Kind::Intersection: return denote_mask(space, e.left()) & denote_mask(space, e.right());
  }
  return 0;
}

std::vector<std::string> denote(const ProbabilitySpace& space, const SetExpr& e) {
  std::uint64_t mask = denote_mask(space, e);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < space.outcomes.size(); ++i)
    if (mask >> i & 1) out.push_back(space.outcomes[i]);
  return out;
}

Rational measure(const ProbabilitySpace& space, const SetExpr& e) {
  std::uint64_t mask = denote_mask(space, e);
  Rational sum = 0;
  for (std::size_t i = 0; i < space.outcomes.size(); ++i)
    if (mask >> i & 1) sum += space.mass[i];
  return sum;
}

namespace {

std::string atom_name(std::size_t k) { return "F" + std::to_string(k + 1); }

}  // namespace

Model translate_space(const ProbabilitySpace& space, const std::string& action) {
  std::set<std::string> outcomes(space.outcomes.begin(), space.outcomes.end());
  if (outcomes.count(action)) throw ModelError(Code::NameClash, "action name '" + action + "' is also an outcome");
  for (std::size_t k = 0; k < space.outcomes.size(); ++k) {
    if (outcomes.count(atom_name(k)))
      throw ModelError(Code::NameClash, "atom name '" + atom_name(k) + "' is also an outcome");
    if (action == atom_name(k)) throw ModelError(Code::NameClash, "action name '" + action + "' is also an atom");
  }
  std::string initial = "w";
  while (outcomes.count(initial) || initial == action) initial += "0";

  ModelSpec spec;
  spec.name = "translation";
  spec.states.push_back(initial);
  spec.initial = initial;
  spec.actions.push_back(ActionDecl{action, 0, 0});
  for (std::size_t k = 0; k < space.outcomes.size(); ++k) {
    const std::string& o = space.outcomes[k];
    spec.states.push_back(o);
    spec.symbols.push_back(SymbolDecl{atom_name(k), Type::prop(), "", 0});
    if (space.mass[k] > 0) spec.transitions.push_back(TransitionDecl{initial, GroundAction{action, {}}, o, space.mass[k], 0});
    spec.valuation.push_back(ValuationDecl{o, {GroundAtom{atom_name(k), {}}}, 0});
  }
  return validate_model(spec);
}

Expr translate_event(const ProbabilitySpace& space, const SetExpr& e) {
  switch (e.kind()) {
    case SetExpr::Kind::Singleton: return Expr::sym(atom_name(space.index(e.outcome())));
    case SetExpr::Kind::Complement: return mk_not(translate_event(space, e.left()));
    case SetExpr::Kind::Union: return mk_or(translate_event(space, e.left()), translate_event(space, e.right()));
    case SetExpr::Kind::Intersection:
      return mk_and(translate_event(space, e.left()), translate_event(space, e.right()));
  }
  throw ModelError(Code::InvalidSpace, "unknown set expression");
}

std::vector<SetExpr> enumerate_set_exprs(const ProbabilitySpace& space, int depth, bool dedupe) {
  std::vector<SetExpr> all;
  std::set<std::uint64_t> seen;
  auto keep = [&](SetExpr e, std::vector<SetExpr>& level) {
    if (dedupe && !seen.insert(denote_mask(space, e)).second) return;
    level.push_back(e);
  };
  // by_depth[d] holds the kept expressions of depth exactly d + 1.
  std::vector<std::vector<SetExpr>> by_depth;
  if (depth < 1) return all;
  by_depth.emplace_back();
  for (const auto& o : space.outcomes) keep(SetExpr::singleton(o), by_depth[0]);
  for (int d = 2; d <= depth; ++d) {
    std::vector<SetExpr> level;
    const auto& prev = by_depth[d - 2];
    for (const auto& e : prev) keep(SetExpr::complement(e), level);
    std::vector<const SetExpr*> shallower, deepest;
    for (int k = 0; k <= d - 2; ++k)
      for (const auto& e : by_depth[k]) (k == d - 2 ? deepest : shallower).push_back(&e);
    std::vector<const SetExpr*> lower = shallower;
    lower.insert(lower.end(), deepest.begin(), deepest.end());
    // At least one operand has depth d - 1.
    for (auto op : {SetExpr::Kind::Union, SetExpr::Kind::Intersection})
      for (const SetExpr* a : lower)
        for (const SetExpr* b : lower) {
          if (a->depth() != d - 1 && b->depth() != d - 1) continue;
          keep(op == SetExpr::Kind::Union ? SetExpr::union_of(*a, *b) : SetExpr::intersection(*a, *b), level);
        }
    by_depth.push_back(std::move(level));
  }
  for (auto& level : by_depth)
    for (auto& e : level) all.push_back(std::move(e));
  return all;
}

CheckReport check_adequacy(const ProbabilitySpace& space, int depth, bool dedupe, const std::string& action) {
  if (depth < 1) throw ModelError(Code::InvalidSpace, "depth bound must be at least 1");
  Model m = translate_space(space, action);
  const std::size_t w = *m.initial();
  const std::vector<GroundAction> trace{GroundAction{action, {}}};
  CheckReport r;
  auto exprs = enumerate_set_exprs(space, depth, dedupe);
  for (const auto& e : exprs) {
    Rational expected = measure(space, e);
    Expr g = translate_event(space, e);
    Rational got = eval_q(m, w, trace, g);
    if (got != expected) {
      r.verdict = Verdict::Violated;
      r.summary = "measure(" + to_string(e) + ") = " + to_string(expected) + " but " +
                  print_formula(mk_q({Expr::sym(action)}, g)) + " = " + to_string(got);
      r.values = {{"measure(" + to_string(e) + ")", expected}, {print_formula(mk_q({Expr::sym(action)}, g)), got}};
      r.numeric = got;
      r.witness = Witness{m.name(), m.states()[w], {to_string(e)}};
      return r;
    }
  }
  r.verdict = Verdict::Satisfied;
  r.summary = std::to_string(exprs.size()) + " set expression(s) up to depth " + std::to_string(depth) +
              (dedupe ? " (one per event)" : "") + ": measure equals Q[" + action + "] of the translation in every case";
  return r;
}

}  // namespace ptl
