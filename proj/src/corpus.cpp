#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include "ptl/adequacy.hpp"
#include "ptl/cli.hpp"

namespace ptl {

namespace fs = std::filesystem;

namespace {

// One manifest line. Kinds (first word):
//   <model> <file.ptl:name> <state|*> expect <satisfied|violated|error|rational>
//   model <model> expect <ok|ModelErrorCode>
//   adequacy <space> <depth> expect <satisfied|violated>
//   independent <model> <a> <b> expect <satisfied|violated|error>
//   shortcut <model> <a1,...,an> <file.ptl:p1,...> <state|*> expect <satisfied|violated|error>
struct Fixture {
  std::string tag;
  int line = 0;
  std::string text;
  std::vector<std::string> fields;  // before `expect`
  std::string expected;
};

class MalformedManifest : public Error {
 public:
  using Error::Error;
};

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

class FixtureRunner {
 public:
  explicit FixtureRunner(fs::path dir) : dir_(std::move(dir)) {}

  // The observed outcome of the fixture, in the vocabulary of `expect`.
  std::string observe(const Fixture& f) {
    const auto& x = f.fields;
    const std::string& kind = x[0];
    if (kind == "model") return observe_model(f);
    if (kind == "adequacy") {
      need(f, 3);
      CheckReport r = check_adequacy(load_space(path(x[1])), std::stoi(x[2]));
      return to_string(r.verdict);
    }
    if (kind == "independent") {
      need(f, 4);
      const Model& m = model(x[1]);
      return to_string(check_independent(m, action(m, x[2]), action(m, x[3])).verdict);
    }
    if (kind == "shortcut") {
      need(f, 5);
      const Model& m = model(x[1]);
      std::vector<GroundAction> actions;
      for (const auto& a : split_on(x[2], ',')) actions.push_back(action(m, a));
      std::vector<Expr> props;
      for (const auto& p : split_on(x[3], ',')) props.push_back(formula(m, p));
      std::optional<std::size_t> w;
      if (x[4] != "*") w = m.state(x[4]);
      return to_string(check_shortcut(m, actions, props, w).verdict);
    }
    need(f, 3);
    const Model& m = model(x[0]);
    Expr e = formula(m, x[1], /*require_formula=*/false);
    Rational expected;
    if (parse_rational(f.expected, expected)) {
      std::size_t w = x[2] == "*" ? initial(m) : m.state(x[2]);
      try {
        return to_string(eval_number(m, w, e));
      } catch (const EvalError& err) {
        return std::string("error (") + err.what() + ")";
      }
    }
    check_formula(e, m.signature());
    CheckReport r = x[2] == "*" ? globally_satisfies(m, e) : satisfies(m, m.state(x[2]), e);
    return to_string(r.verdict);
  }

 private:
  fs::path dir_;
  std::map<std::string, Model> models_;

  static void need(const Fixture& f, std::size_t n) {
    if (f.fields.size() != n)
      throw MalformedManifest(f.tag + ":" + std::to_string(f.line) + ": expected " + std::to_string(n) +
                              " fields before 'expect'");
  }

  std::string path(const std::string& rel) const { return (dir_ / rel).string(); }

  const Model& model(const std::string& rel) {
    auto it = models_.find(rel);
    if (it == models_.end()) it = models_.emplace(rel, load_model(path(rel))).first;
    return it->second;
  }

  static std::size_t initial(const Model& m) {
    if (auto s = m.initial()) return *s;
    throw ModelError(ModelError::Code::NoInitialState, "model " + m.name() + " declares no initial state");
  }

  std::string observe_model(const Fixture& f) {
    need(f, 2);
    try {
      load_model(path(f.fields[1]));
      return "ok";
    } catch (const ModelError& e) {
      return to_string(e.code());
    }
  }

  GroundAction action(const Model& m, const std::string& text) const {
    return eval_action(m, initial(m), read_expr(text, m.signature()));
  }

  Expr formula(const Model& m, const std::string& ref, bool require_formula = true) const {
    auto pos = ref.rfind(':');
    if (pos == std::string::npos) throw MalformedManifest("formula reference '" + ref + "' is not file.ptl:name");
    std::string file = path(ref.substr(0, pos)), name = ref.substr(pos + 1);
    for (auto& def : parse_formula_file(read_file(file), file))
      if (def.name == name) {
        if (require_formula) return formula_for(m, def.expr);
        Expr e = desugar(def.expr, m.signature());
        infer_type(e, m.signature());
        return e;
      }
    throw Error("no definition '" + name + "' in '" + file + "'");
  }
};

std::vector<Fixture> read_manifest(const fs::path& file) {
  std::vector<Fixture> out;
  std::istringstream in(read_file(file.string()));
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::istringstream words{std::string(strip_comment(line))};
    Fixture f{file.stem().string(), n, line, {}, {}};
    std::string w;
    bool seen_expect = false;
    while (words >> w) {
      if (seen_expect) {
        if (!f.expected.empty()) throw MalformedManifest(f.tag + ":" + std::to_string(n) + ": one expectation per line");
        f.expected = w;
      } else if (w == "expect") {
        seen_expect = true;
      } else {
        f.fields.push_back(w);
      }
    }
    if (f.fields.empty() && !seen_expect) continue;
    if (f.fields.empty() || f.expected.empty())
      throw MalformedManifest(f.tag + ":" + std::to_string(n) + ": expected '<fixture> expect <outcome>'");
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

int run_corpus(const std::string& dir, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> manifests;
  if (fs::is_directory(dir))
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".manifest") manifests.push_back(entry.path());
  std::sort(manifests.begin(), manifests.end());

  std::vector<Fixture> fixtures;
  try {
    for (const auto& m : manifests) {
      auto more = read_manifest(m);
      fixtures.insert(fixtures.end(), more.begin(), more.end());
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (fixtures.empty()) {
    err << "error: no fixtures in '" << dir << "'\n";
    return kExitUsage;
  }

  FixtureRunner runner{fs::path(dir)};
  std::map<std::string, std::pair<int, int>> counts;  // tag -> (passed, total)
  std::vector<std::string> tags;
  int failed = 0;
  for (const auto& f : fixtures) {
    std::string got;
    try {
      got = runner.observe(f);
    } catch (const MalformedManifest& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const Error& e) {
      got = std::string("error (") + e.what() + ")";
    }
    bool pass = got == f.expected || (f.expected == "error" && got.rfind("error", 0) == 0);
    Rational want, have;
    if (!pass && parse_rational(f.expected, want) && parse_rational(got, have)) pass = want == have;
    if (!counts.count(f.tag)) tags.push_back(f.tag);
    auto& [passed, total] = counts[f.tag];
    ++total;
    if (pass) ++passed;
    else ++failed;
    out << (pass ? "PASS " : "FAIL ") << f.tag << ":" << f.line << ": " << std::string(strip_comment(f.text));
    if (!pass) out << "  (got " << got << ")";
    out << "\n";
  }
  out << "summary:\n";
  for (const auto& tag : tags)
    out << "  " << tag << ": " << counts[tag].first << "/" << counts[tag].second << " passed\n";
  out << (failed == 0 ? "all fixtures passed" : std::to_string(failed) + " fixture(s) failed") << "\n";
  return failed == 0 ? kExitSatisfied : kExitViolated;
}

}  // namespace ptl
