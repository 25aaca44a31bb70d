#include "support.hpp"

#include <algorithm>
#include <map>

namespace ptl::testing {

std::string corpus_path(const std::string& rel) { return std::string(PTL_CORPUS_DIR) + "/" + rel; }

Model corpus_model(const std::string& stem) { return load_model(corpus_path("models/" + stem + ".ptlm")); }

std::vector<FormulaSuite> formula_suites() {
  return {
      {"coin", {"coin", "biasedcoin"}},
      {"biasedcoin", {"biasedcoin", "coin"}},
      {"twotoss", {"twotoss"}},
      {"magical", {"magical"}},
      {"bag", {"bag4", "bag5"}},
      {"dice12", {"dice12"}},
      {"twosucc", {"twosucc"}},
      {"montyhall", {"montyhall"}},
  };
}

std::vector<std::string> valid_model_stems() {
  return {"coin", "biasedcoin", "twotoss", "magical", "bag4", "bag5", "dice12", "twosucc", "montyhall"};
}

Expr formula_def(const Model& m, const std::string& file_stem, const std::string& name) {
  const std::string file = corpus_path("formulas/" + file_stem + ".ptl");
  for (const auto& def : parse_formula_file(read_file(file), file))
    if (def.name == name) {
      Expr e = desugar(def.expr, m.signature());
      infer_type(e, m.signature());
      return e;
    }
  throw Error("no definition " + name + " in " + file);
}

Expr ground_expr(const GroundTerm& t) { return atom(t.head, t.args); }

std::vector<std::pair<std::string, Rational>> spec_successors(const ModelSpec& spec, const std::string& state,
                                                              const GroundAction& action) {
  std::vector<std::pair<std::string, Rational>> out;
  for (const auto& t : spec.transitions)
    if ((t.source == state || t.source == "*") && t.action == action) out.emplace_back(t.target, t.probability);
  return out;
}

Rational oracle_q(const Model& m, std::size_t state, const GroundAction& a, const Expr& phi) {
  Rational sum = 0;
  for (const auto& [target, p] : spec_successors(m.spec(), m.states()[state], a))
    if (eval_formula(m, m.state(target), phi)) sum += p;
  return sum;
}

Rational oracle_trace(const Model& m, std::size_t state, const std::vector<GroundAction>& actions,
                      const std::vector<Expr>& props) {
  if (actions.empty()) return 1;
  std::vector<GroundAction> rest_a(actions.begin() + 1, actions.end());
  std::vector<Expr> rest_p(props.begin() + 1, props.end());
  Rational sum = 0;
  for (const auto& [target, p] : spec_successors(m.spec(), m.states()[state], actions[0])) {
    std::size_t t = m.state(target);
    if (eval_formula(m, t, props[0])) sum += p * oracle_trace(m, t, rest_a, rest_p);
  }
  return sum;
}

namespace {

int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<Rational> random_weights(std::mt19937& rng, std::size_t n, int zero_one_in) {
  std::vector<int> w(n);
  int total = 0;
  for (auto& x : w) {
    x = (zero_one_in > 0 && uniform(rng, 1, zero_one_in) == 1) ? 0 : uniform(rng, 1, 12);
    total += x;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  std::vector<Rational> out;
  for (int x : w) out.push_back(Rational(x, total));
  return out;
}

}  // namespace

ModelSpec random_spec(std::mt19937& rng) {
  ModelSpec spec;
  spec.name = "random";
  spec.symbols.push_back({"P", Type::arrow(Type::object(), Type::prop()), "", 0});
  spec.symbols.push_back({"R", Type::prop(), "", 0});
  spec.symbols.push_back({"K", Type::prop(), "exists x : obj . P(x) /\\ R", 0});
  const int n_objects = uniform(rng, 1, 3);
  for (int i = 1; i <= n_objects; ++i) spec.objects.push_back({"o" + std::to_string(i), {"Thing"}, 0});
  const int n_states = uniform(rng, 1, 5);
  for (int i = 0; i < n_states; ++i) spec.states.push_back("s" + std::to_string(i));
  spec.initial = "s0";
  spec.actions.push_back({"a", 0, 0});
  spec.actions.push_back({"b", 1, 0});
  std::vector<GroundAction> ground{{"a", {}}};
  for (const auto& o : spec.objects) ground.push_back({"b", {o.name}});
  for (const auto& s : spec.states)
    for (const auto& g : ground) {
      std::vector<std::string> targets = spec.states;
      std::shuffle(targets.begin(), targets.end(), rng);
      targets.resize(uniform(rng, 1, std::min<int>(3, n_states)));
      auto weights = random_weights(rng, targets.size(), 0);
      for (std::size_t k = 0; k < targets.size(); ++k) spec.transitions.push_back({s, g, targets[k], weights[k], 0});
    }
  for (const auto& s : spec.states) {
    ValuationDecl v{s, {}, 0};
    if (uniform(rng, 0, 1)) v.atoms.push_back({"R", {}});
    for (const auto& o : spec.objects)
      if (uniform(rng, 0, 1)) v.atoms.push_back({"P", {o.name}});
    if (!v.atoms.empty()) spec.valuation.push_back(std::move(v));
  }
  return spec;
}

Expr random_formula(const Model& m, std::mt19937& rng, int depth) {
  std::vector<Expr> leaves{mk_true(), mk_false()};
  for (const auto& a : m.ground_atoms()) leaves.push_back(ground_expr(a));
  for (const auto& d : m.definitions())
    if (d.type == Type::prop()) leaves.push_back(Expr::sym(d.name));
  const auto& actions = m.ground_actions();
  if (depth <= 0 || uniform(rng, 0, 3) == 0) return leaves[uniform(rng, 0, static_cast<int>(leaves.size()) - 1)];
  auto sub = [&] { return random_formula(m, rng, depth - 1); };
  auto action = [&] { return ground_expr(actions[uniform(rng, 0, static_cast<int>(actions.size()) - 1)]); };
  int pick = uniform(rng, 0, actions.empty() ? 4 : 8);
  switch (pick) {
    case 0: return mk_not(sub());
    case 1: return mk_and(sub(), sub());
    case 2: return mk_or(sub(), sub());
    case 3: return mk_imp(sub(), sub());
    case 4: return mk_iff(sub(), sub());
    case 5: return Expr::diamond(action(), std::nullopt, sub());
    case 6: return Expr::box(action(), sub());
    case 7: return Expr::diamond(action(), Expr::lit(Rational(uniform(rng, 1, 4), 4)), sub());
    default:
      return mk_binary(Builtin::Ge, mk_q({action()}, sub()), Expr::lit(Rational(uniform(rng, 0, 3), 3)));
  }
}

ProbabilitySpace random_space(std::mt19937& rng, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("w" + std::to_string(i));
  return make_space(names, random_weights(rng, n, 5));
}

Rational random_probability(std::mt19937& rng) {
  int d = uniform(rng, 1, 30);
  return Rational(uniform(rng, 1, d), d);
}

}  // namespace ptl::testing
