// One PASS/FAIL line per acceptance criterion. Exit status 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace ptl;
using namespace ptl::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Expr def(const Model& m, const std::string& file, const std::string& name) { return formula_def(m, file, name); }

void monty_hall_theorem(Outcome& o) {
  auto start = Clock::now();
  Model m = corpus_model("montyhall");
  std::size_t s0 = m.state("s0");
  std::vector<GroundAction> sw{{"h", {}}, {"p", {"d1"}}, {"o", {}}, {"s", {}}};
  std::vector<GroundAction> stay{{"h", {}}, {"p", {"d1"}}, {"o", {}}, {"nos", {}}};
  Expr v = Expr::sym("V");
  Rational win_switch = eval_q_trace(m, s0, sw, {mk_true(), mk_true(), mk_true(), v});
  Rational win_stay = eval_q_trace(m, s0, stay, {mk_true(), mk_true(), mk_true(), v});
  CheckReport conj = satisfies(m, s0, def(m, "montyhall", "conjecture"));
  double t = seconds_since(start);
  o.require(win_switch == Rational(2, 3), "switch = 2/3");
  o.require(win_stay == Rational(1, 3), "stay = 1/3");
  o.require(eval_q(m, s0, sw, v) == Rational(2, 3), "Q over the action list = 2/3");
  o.require(conj.verdict == Verdict::Satisfied, "conjecture satisfied");
  o.require(t < 1.0, "runtime < 1 s");
  o.detail << "switch=" << to_string(win_switch) << " stay=" << to_string(win_stay)
           << " conjecture=" << to_string(conj.verdict) << " time=" << t << "s";
}

void failed_conjectures(Outcome& o) {
  Model m = corpus_model("montyhall");
  std::size_t s0 = m.state("s0");
  for (const char* name : {"failed_box", "failed_current"}) {
    CheckReport r = satisfies(m, s0, def(m, "montyhall", name));
    o.require(r.verdict == Verdict::Violated, std::string(name) + " violated");
    o.require(r.witness && m.find_state(r.witness->state).has_value(), std::string(name) + " has a witness state");
    o.detail << name << ": " << to_string(r.verdict) << " at " << (r.witness ? r.witness->state : "?") << "; ";
  }
}

void coin_examples(Outcome& o) {
  Model m = corpus_model("coin");
  std::size_t s0 = m.state("s0");
  auto check = [&](const std::string& text) {
    return satisfies(m, s0, read_formula(text, m.signature())).verdict == Verdict::Satisfied;
  };
  Rational q = eval_number(m, s0, read_expr("Q[toss(c)](heads(c))", m.signature()));
  o.require(q == Rational(1, 2), "Q[toss](heads) = 1/2");
  o.require(check("box[toss(c)] (heads(c) \\/ tails(c))"), "box[toss](heads or tails)");
  o.require(check("dia[toss(c)] tails(c)"), "dia[toss] tails");
  o.require(check("dia[toss(c)]{1/2} heads(c)"), "dia^{1/2}[toss] heads");
  o.detail << "Q[toss(c)](heads(c)) = " << to_string(q);
}

void two_toss_product(Outcome& o) {
  Model m = corpus_model("twotoss");
  GroundAction t{"t", {"c"}};
  Expr h = atom("H", {"c"});
  Rational q = eval_q_trace(m, m.state("s0"), std::vector<GroundAction>{t, t}, {h, h});
  CheckReport r = check_shortcut(m, {t, t}, {h, h}, m.state("s0"));
  o.require(q == Rational(1, 4), "Q[t;t](H;H) = 1/4");
  o.require(r.verdict == Verdict::Satisfied, "shortcut satisfied");
  o.require(r.values.size() == 4 && r.values.back().value == Rational(1, 4), "product of single tosses = 1/4");
  o.detail << "Q[t;t](H;H) = " << to_string(q) << "; " << r.summary;
}

void magical_coin(Outcome& o) {
  Model m = corpus_model("magical");
  GroundAction t{"t", {"c"}};
  std::size_t s = m.state("s");
  CheckReport ind = check_independent(m, t, t, std::vector<Expr>{atom("H", {"c"})});
  std::vector<Expr> ht{atom("H", {"c"}), atom("T", {"c"})};
  Rational q = eval_q_trace(m, s, std::vector<GroundAction>{t, t}, ht);
  Rational tree = oracle_trace(m, s, {t, t}, ht);
  o.require(ind.verdict == Verdict::Violated, "independence violated");
  o.require(q == Rational(1, 2), "Q[t;t](H;T) = 1/2");
  o.require(tree == q, "exhaustive tree enumeration agrees");
  o.detail << "independent: " << to_string(ind.verdict) << "; Q[t;t](H;T) = " << to_string(q)
           << " (tree: " << to_string(tree) << ")";
}

void bags(Outcome& o) {
  GroundAction a{"a", {}};
  std::vector<Expr> props{Expr::sym("Sph"), Expr::sym("Blk")};
  Model four = corpus_model("bag4"), five = corpus_model("bag5");
  CheckReport r4 = check_shortcut(four, {a}, props);
  CheckReport r5 = check_shortcut(five, {a}, props);
  auto q = [&](const Model& m, const Expr& e) { return eval_q(m, *m.initial(), std::vector<GroundAction>{a}, e); };
  o.require(r4.verdict == Verdict::Satisfied && r4.numeric == Rational(1, 4), "bag4 Q(S and B) = 1/4");
  o.require(q(four, props[0]) * q(four, props[1]) == Rational(1, 4), "bag4 product = 1/4");
  o.require(!r4.warnings.empty(), "same-action warning");
  o.require(r5.verdict == Verdict::Violated && r5.numeric == Rational(1, 5), "bag5 Q(S and B) = 1/5");
  o.require(q(five, props[0]) * q(five, props[1]) == Rational(6, 25), "bag5 product = 6/25");
  o.detail << "bag4: " << r4.summary << "; bag5: " << r5.summary;
}

void adequacy(Outcome& o) {
  auto start = Clock::now();
  std::mt19937 rng(20240607);
  std::size_t spaces = 0, events = 0;
  for (; spaces < 120; ++spaces) {
    ProbabilitySpace space = random_space(rng, 1 + rng() % 6);
    Model m = translate_space(space);
    std::size_t w = *m.initial();
    GroundAction a{"a", {}};
    for (const auto& e : enumerate_set_exprs(space, 3, /*dedupe=*/false)) {
      ++events;
      if (measure(space, e) != eval_q(m, w, std::vector<GroundAction>{a}, translate_event(space, e))) {
        o.require(false, "measure(" + to_string(e) + ") equals Q[a](g(E))");
        break;
      }
    }
  }
  double t = seconds_since(start);
  o.require(spaces >= 100, "at least 100 spaces");
  o.require(t < 30.0, "runtime < 30 s");
  o.detail << spaces << " spaces, " << events << " set expressions up to depth 3, time=" << t << "s";
}

void non_validities(Outcome& o) {
  Model dice = corpus_model("dice12"), two = corpus_model("twosucc");
  CheckReport d = satisfies(dice, *dice.initial(), def(dice, "dice12", "q_to_dia"));
  CheckReport t = satisfies(two, *two.initial(), def(two, "twosucc", "dia_to_q"));
  o.require(d.verdict == Verdict::Violated, "Q[a](phi) = 1/6 -> dia[a]{1/6} phi violated on the dice");
  o.require(t.verdict == Verdict::Violated, "dia[a]{p} phi -> Q[a](phi) = p violated on two successors");
  std::string manifest = read_file(corpus_path("disambiguation.manifest"));
  o.require(manifest.find("dice12.ptl:q_to_dia w expect violated") != std::string::npos &&
                manifest.find("twosucc.ptl:dia_to_q s0 expect violated") != std::string::npos,
            "both shipped as fixtures");
  o.detail << "dice: " << to_string(d.verdict) << "; two successors: " << to_string(t.verdict) << " (" << t.summary
           << ")";
}

Rational expected_sum(const ModelSpec& spec, const std::string& state, const GroundAction& a) {
  Rational sum = 0;
  for (const auto& [target, p] : spec_successors(spec, state, a)) sum += p;
  return sum;
}

void frame_invariant(Outcome& o) {
  std::mt19937 rng(99);
  std::vector<ModelSpec> bases;
  for (const auto& stem : valid_model_stems()) bases.push_back(corpus_model(stem).spec());
  for (int i = 0; i < 40; ++i) bases.push_back(random_spec(rng));
  int rejected = 0, accepted = 0;
  for (int trial = 0; trial < 600; ++trial) {
    ModelSpec spec = bases[trial % bases.size()];
    std::size_t k = rng() % spec.transitions.size();
    TransitionDecl& tr = spec.transitions[k];
    bool drop = rng() % 3 == 0;
    std::string state = tr.source == "*" ? spec.states[rng() % spec.states.size()] : tr.source;
    GroundAction action = tr.action;
    if (drop) {
      spec.transitions.erase(spec.transitions.begin() + static_cast<long>(k));
    } else {
      Rational p = random_probability(rng);
      if (p == tr.probability) continue;
      tr.probability = p;
    }
    Rational sum = expected_sum(spec, state, action);
    if (sum == 0 || sum == 1) {
      // Dropping a certain transition leaves the action disabled, which is a valid frame.
      try {
        validate_model(spec);
        ++accepted;
      } catch (const ModelError& e) {
        o.require(false, std::string("unexpected rejection: ") + e.what());
      }
      continue;
    }
    try {
      validate_model(spec);
      o.require(false, "perturbed model accepted (sum " + to_string(sum) + ")");
    } catch (const ModelError& e) {
      bool ok = e.code() == ModelError::Code::ProbabilitySum && e.value() == sum &&
                std::string(e.what()).find(to_string(sum)) != std::string::npos;
      o.require(ok, std::string("exact sum reported: expected ") + to_string(sum) + ", got " + e.what());
      ++rejected;
    }
  }
  try {
    load_model(corpus_path("models/badcoin.ptlm"));
    o.require(false, "badcoin rejected");
  } catch (const ModelError& e) {
    o.require(e.value() == Rational(5, 6), "badcoin reports 5/6");
  }
  o.require(rejected >= 300, "enough perturbations");
  o.detail << rejected << " perturbed models rejected with their exact sum, " << accepted
           << " sum-preserving perturbations accepted";
}

void round_trip(Outcome& o) {
  int formulas = 0, models = 0, literals = 0;
  for (const auto& suite : formula_suites()) {
    const std::string file = corpus_path("formulas/" + suite.file + ".ptl");
    Model m = corpus_model(suite.models.front());
    for (const auto& d : parse_formula_file(read_file(file), file)) {
      Expr e = desugar(d.expr, m.signature());
      Expr again = read_expr(print_formula(e), m.signature());
      o.require(alpha_equal(again, e), suite.file + ":" + d.name);
      ++formulas;
    }
  }
  for (const auto& stem : valid_model_stems()) {
    ModelSpec spec = corpus_model(stem).spec();
    o.require(parse_model(print_model(spec)) == spec, "model " + stem);
    for (const auto& sym : spec.symbols)
      if (!sym.definition.empty()) ++formulas;
    ++models;
  }
  std::mt19937 rng(5);
  std::uniform_int_distribution<long long> num(-1'000'000'000'000LL, 1'000'000'000'000LL), den(1, 999'999'999'989LL);
  for (; literals < 2000; ++literals) {
    Rational r(num(rng), den(rng));
    Expr e = read_expr(print_formula(Expr::lit(r)), {});
    const Lit* lit = e.as<Lit>();
    Rational back = lit ? lit->value : eval_number(corpus_model("coin"), 0, e);
    o.require(back == r, "literal " + to_string(r));
  }
  o.detail << formulas << " formulas, " << models << " models, " << literals << " random rationals";
}

// A random trace of up to `len` actions, each enabled at every state the trace so far can reach.
std::vector<GroundAction> enabled_trace(const Model& m, std::size_t start, std::size_t len, std::mt19937& rng) {
  std::vector<GroundAction> trace;
  std::set<std::size_t> reach{start};
  while (trace.size() < len) {
    std::vector<GroundAction> candidates;
    for (const auto& a : m.ground_actions())
      if (std::all_of(reach.begin(), reach.end(), [&](std::size_t w) { return m.enabled(w, a); }))
        candidates.push_back(a);
    if (candidates.empty()) break;
    trace.push_back(candidates[rng() % candidates.size()]);
    std::set<std::size_t> next;
    for (std::size_t w : reach)
      for (const auto& succ : m.successors(w, trace.back())) next.insert(succ.state);
    reach = std::move(next);
  }
  return trace;
}

void evaluator_invariants(Outcome& o) {
  std::mt19937 rng(1234);
  std::vector<Model> models;
  for (const auto& stem : valid_model_stems()) models.push_back(corpus_model(stem));
  const std::size_t corpus_count = models.size();
  for (int i = 0; i < 30; ++i) models.push_back(validate_model(random_spec(rng)));
  std::size_t instances = 0, additive = 0, skipped = 0, corpus_instances = 0;
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const Model& m = models[mi];
    for (int k = 0; k < 120; ++k) {
      std::size_t s = rng() % m.states().size();
      std::vector<GroundAction> trace = enabled_trace(m, s, rng() % 4, rng);
      Expr phi = random_formula(m, rng, 3), chi = random_formula(m, rng, 3);
      Expr psi = mk_and(chi, mk_not(phi));  // disjoint from phi at every state
      try {
        Rational q_phi = eval_q(m, s, trace, phi);
        Rational q_not = eval_q(m, s, trace, mk_not(phi));
        Rational q_psi = eval_q(m, s, trace, psi);
        Rational q_or = eval_q(m, s, trace, mk_or(phi, psi));
        o.require(q_phi + q_not == 1, "complement at " + m.name() + "/" + m.states()[s] + ": " + print_formula(phi));
        o.require(q_or == q_phi + q_psi, "additivity at " + m.name() + ": " + print_formula(phi));
        o.require(q_phi >= 0 && q_phi <= 1, "range");
        ++instances;
        ++additive;
        if (mi < corpus_count) ++corpus_instances;
      } catch (const EvalError&) {
        ++skipped;  // a disabled action inside Q
      }
    }
  }
  o.require(instances >= 1000, "at least 1000 instances");
  o.require(corpus_instances >= 300, "corpus models well covered");
  o.detail << instances << " (model, trace, formula) instances (" << corpus_instances << " on the corpus, " << skipped
           << " skipped for disabled actions), " << additive << " additivity pairs";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Monty Hall theorem", monty_hall_theorem},
      {"failed conjectures", failed_conjectures},
      {"coin examples", coin_examples},
      {"two-toss product", two_toss_product},
      {"magical coin", magical_coin},
      {"bag examples", bags},
      {"adequacy of the space translation", adequacy},
      {"non-validities of Q against the annotated diamond", non_validities},
      {"frame invariant enforcement", frame_invariant},
      {"parser round-trip", round_trip},
      {"complement and additivity invariants", evaluator_invariants},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " -- "
              << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
