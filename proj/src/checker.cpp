#include "ptl/checker.hpp"

#include <filesystem>

namespace ptl {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    case Verdict::Error: return "error";
  }
  return "?";
}

Theory load_theory(const std::string& path) {
  return Theory{std::filesystem::path(path).stem().string(), parse_formula_file(read_file(path), path)};
}

Expr formula_for(const Model& model, const SurfaceExpr& s) {
  Expr e = desugar(s, model.signature());
  check_formula(e, model.signature());
  return e;
}

namespace {

bool mentions_q(const Expr& e) {
  if (auto* s = e.as<Sym>()) return s->builtin == Builtin::Q;
  if (e.as<QTrace>()) return true;
  if (auto* a = e.as<App>()) return mentions_q(a->fn) || mentions_q(a->arg);
  if (auto* l = e.as<Lam>()) return mentions_q(l->body);
  if (auto* d = e.as<Diamond>()) return mentions_q(d->body) || (d->prob && mentions_q(*d->prob));
  if (auto* b = e.as<Box>()) return mentions_q(b->body);
  return false;
}

const char* relation_text(Builtin b, bool holds) {
  switch (b) {
    case Builtin::Eq: return holds ? "=" : "!=";
    case Builtin::Lt: return holds ? "<" : ">=";
    case Builtin::Gt: return holds ? ">" : "<=";
    case Builtin::Le: return holds ? "<=" : ">";
    case Builtin::Ge: return holds ? ">=" : "<";
    default: return "?";
  }
}

bool is_relation(Builtin b) {
  return b == Builtin::Eq || b == Builtin::Lt || b == Builtin::Gt || b == Builtin::Le || b == Builtin::Ge;
}

// Walks a formula whose truth value is already known, following the subformula responsible
// for that value, and records the path and any numeric comparison found at the end.
class Explainer {
 public:
  explicit Explainer(const Model& m) : m_(m) {}

  std::vector<std::string> trail;
  std::size_t state = 0;
  std::string summary;
  std::optional<Rational> numeric;
  std::vector<NamedValue> values;

  void explain(std::size_t s, const Expr& e, const Env& env, bool truth, int depth = 0) {
    state = s;
    if (depth > 64) return;
    if (auto* b = e.as<Box>()) {
      if (truth) return;
      GroundAction a = eval_action(m_, s, b->action, env);
      for (const auto& succ : m_.successors(s, a))
        if (!eval_formula(m_, succ.state, b->body, env)) {
          trail.push_back("box[" + a.str() + "] -> " + m_.states()[succ.state]);
          return explain(succ.state, b->body, env, false, depth + 1);
        }
      return;
    }
    if (auto* d = e.as<Diamond>()) {
      if (!truth) return;
      GroundAction a = eval_action(m_, s, d->action, env);
      std::optional<Rational> p;
      if (d->prob) p = eval_number(m_, s, *d->prob, env);
      for (const auto& succ : m_.successors(s, a)) {
        if (p && succ.probability != *p) continue;
        if (eval_formula(m_, succ.state, d->body, env)) {
          trail.push_back("dia[" + a.str() + "] -> " + m_.states()[succ.state] + " @ " + to_string(succ.probability));
          return explain(succ.state, d->body, env, true, depth + 1);
        }
      }
      return;
    }
    Spine sp = spine(e);
    auto* head = sp.head->as<Sym>();
    if (!head || head->builtin == Builtin::None || sp.args.size() != static_cast<std::size_t>(arity(head->builtin)))
      return;
    const Builtin b = head->builtin;
    auto holds = [&](const Expr& x) { return eval_formula(m_, s, x, env); };
    switch (b) {
      case Builtin::At: {
        std::size_t target = eval(m_, s, *sp.args[0], env).as_state();
        trail.push_back("@" + m_.states()[target]);
        return explain(target, *sp.args[1], env, truth, depth + 1);
      }
      case Builtin::Not: return explain(s, *sp.args[0], env, !truth, depth + 1);
      case Builtin::And:
        if (!truth) {
          const Expr& culprit = holds(*sp.args[0]) ? *sp.args[1] : *sp.args[0];
          return explain(s, culprit, env, false, depth + 1);
        }
        return;
      case Builtin::Or:
        if (truth) {
          const Expr& reason = holds(*sp.args[0]) ? *sp.args[0] : *sp.args[1];
          return explain(s, reason, env, true, depth + 1);
        }
        return;
      case Builtin::Imp:
        if (!truth) return explain(s, *sp.args[1], env, false, depth + 1);
        return;
      case Builtin::Forall:
      case Builtin::Exists: {
        bool universal = b == Builtin::Forall;
        // A counterexample for ∀ that fails, a witness for ∃ that holds.
        if (universal == truth) return;
        auto* lam = sp.args[0]->as<Lam>();
        if (!lam) return;
        const Expr* body = &lam->body;
        std::vector<Value> domain;
        if (auto shape = bounded_shape(b, *lam)) {
          body = shape->body;
          domain = eval(m_, s, *shape->list, env).as_list().items;
        } else {
          domain = enumerate_domain(m_, lam->type);
        }
        for (const auto& v : domain) {
          Env inner = env.bind(lam->var, v);
          if (eval_formula(m_, s, *body, inner) == truth) {
            trail.push_back(lam->var + " := " + to_string(v, m_));
            return explain(s, *body, inner, truth, depth + 1);
          }
        }
        return;
      }
      default:
        if (is_relation(b)) relation(s, b, *sp.args[0], *sp.args[1], env, truth);
        return;
    }
  }

  void relation(std::size_t s, Builtin b, const Expr& lhs, const Expr& rhs, const Env& env, bool truth) {
    Value lv = eval(m_, s, lhs, env);
    Value rv = eval(m_, s, rhs, env);
    auto* l = std::get_if<Rational>(&lv.v);
    auto* r = std::get_if<Rational>(&rv.v);
    if (!l || !r) return;
    std::string ltext = print_formula(lhs), rtext = print_formula(rhs);
    std::string out;
    if (!lhs.as<Lit>()) {
      out += ltext + " = ";
      values.push_back({ltext, *l});
    }
    out += to_string(*l) + " " + relation_text(b, truth) + " " + to_string(*r);
    if (!rhs.as<Lit>()) {
      out += " = " + rtext;
      values.push_back({rtext, *r});
    }
    summary = out;
    if (mentions_q(lhs))
      numeric = *l;
    else if (mentions_q(rhs))
      numeric = *r;
  }

 private:
  const Model& m_;
};

CheckReport evaluation_error(const Model& model, std::size_t state, const EvalError& e) {
  CheckReport r;
  r.verdict = Verdict::Error;
  r.summary = e.what();
  r.witness = Witness{model.name(), model.states()[state], {}};
  return r;
}

std::string q_name(const std::vector<GroundAction>& actions, const Expr& phi) {
  std::vector<Expr> as;
  for (const auto& a : actions) as.push_back(atom(a.head, a.args));
  return print_formula(mk_q(as, phi));
}

std::string trace_name(const std::vector<GroundAction>& actions, const std::vector<Expr>& props) {
  std::vector<Expr> as;
  for (const auto& a : actions) as.push_back(atom(a.head, a.args));
  return print_formula(Expr::qtrace(as, props));
}

}  // namespace

CheckReport satisfies(const Model& model, std::size_t state, const Expr& formula) {
  check_formula(formula, model.signature());
  CheckReport r;
  try {
    bool truth = eval_formula(model, state, formula);
    r.verdict = truth ? Verdict::Satisfied : Verdict::Violated;
    Explainer ex(model);
    ex.explain(state, formula, Env{}, truth);
    r.numeric = ex.numeric;
    r.values = ex.values;
    std::string where = model.states()[state];
    if (!ex.summary.empty())
      r.summary = ex.summary;
    else
      r.summary = std::string(truth ? "holds" : "fails") + " at " + where;
    if (!truth || !ex.trail.empty()) r.witness = Witness{model.name(), model.states()[ex.state], ex.trail};
  } catch (const EvalError& e) {
    return evaluation_error(model, state, e);
  }
  return r;
}

CheckReport globally_satisfies(const Model& model, const Expr& formula) {
  check_formula(formula, model.signature());
  for (std::size_t s = 0; s < model.states().size(); ++s) {
    CheckReport r = satisfies(model, s, formula);
    if (r.verdict == Verdict::Satisfied) continue;
    r.summary = std::string(r.verdict == Verdict::Error ? "error" : "fails") + " at state " + model.states()[s] +
                ": " + r.summary;
    if (r.witness && (r.witness->trail.empty() || r.witness->trail.front() != "state " + model.states()[s]))
      r.witness->trail.insert(r.witness->trail.begin(), "state " + model.states()[s]);
    return r;
  }
  CheckReport r;
  r.verdict = Verdict::Satisfied;
  r.summary = "holds at all " + std::to_string(model.states().size()) + " states";
  return r;
}

CheckReport entails(const std::vector<Model>& models, const Theory& theory, const SurfaceExpr& conclusion) {
  CheckReport r;
  std::size_t satisfying = 0;
  const std::string scope = "relative to " + std::to_string(models.size()) + " model(s): ";
  // Elaborate everything against every model first, so a signature mismatch is
  // reported no matter where the offending model sits in the family.
  std::vector<std::vector<Expr>> axioms(models.size());
  std::vector<Expr> goals;
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (const auto& ax : theory.axioms) axioms[i].push_back(formula_for(models[i], ax.expr));
    goals.push_back(formula_for(models[i], conclusion));
  }
  for (std::size_t i = 0; i < models.size(); ++i) {
    const Model& m = models[i];
    bool all = true;
    for (std::size_t k = 0; k < axioms[i].size(); ++k) {
      CheckReport a = globally_satisfies(m, axioms[i][k]);
      if (a.verdict == Verdict::Error) {
        a.summary = scope + "axiom " + theory.axioms[k].name + " in model " + m.name() + ": " + a.summary;
        return a;
      }
      if (a.verdict == Verdict::Violated) {
        all = false;
        break;
      }
    }
    if (!all) continue;
    ++satisfying;
    CheckReport c = globally_satisfies(m, goals[i]);
    if (c.verdict != Verdict::Satisfied) {
      c.summary = scope + "model " + m.name() + " satisfies the theory but the conclusion " + c.summary;
      return c;
    }
  }
  r.verdict = Verdict::Satisfied;
  if (satisfying == 0) {
    r.warnings.push_back("VacuousEntailment: no model in the family satisfies the theory");
    r.summary = scope + "vacuously satisfied, no model satisfies the theory";
  } else {
    r.summary = scope + std::to_string(satisfying) + " satisfy the theory, and the conclusion holds in each";
  }
  return r;
}

CheckReport check_independent(const Model& model, const GroundAction& a, const GroundAction& b,
                              std::optional<std::vector<Expr>> props) {
  std::vector<Expr> family;
  if (props) {
    family = *props;
  } else {
    for (const auto& atom_ : model.ground_atoms()) family.push_back(atom(atom_.head, atom_.args));
  }
  for (const auto& phi : family) check_formula(phi, model.signature());
  CheckReport r;
  std::size_t s = 0;
  try {
    for (s = 0; s < model.states().size(); ++s) {
      if (!model.enabled(s, a)) continue;
      for (const auto& phi : family) {
        Rational p = eval_q(model, s, {a}, phi);
        for (const auto& succ : model.successors(s, b)) {
          std::string name = q_name({a}, phi);
          Witness w{model.name(), model.states()[succ.state],
                    {"state " + model.states()[s], b.str() + " -> " + model.states()[succ.state]}};
          if (!model.enabled(succ.state, a)) {
            r.verdict = Verdict::Violated;
            r.summary = a.str() + " is enabled at " + model.states()[s] + " but not after " + b.str() + " at " +
                        model.states()[succ.state];
            r.witness = w;
            return r;
          }
          Rational after = eval_q(model, succ.state, {a}, phi);
          if (after != p) {
            r.verdict = Verdict::Violated;
            r.summary = name + " = " + to_string(p) + " at " + model.states()[s] + " but " + to_string(after) +
                        " after " + b.str() + " at " + model.states()[succ.state];
            r.witness = w;
            r.numeric = after;
            r.values = {{name + " at " + model.states()[s], p}, {name + " at " + model.states()[succ.state], after}};
            return r;
          }
        }
      }
    }
  } catch (const EvalError& e) {
    return evaluation_error(model, std::min(s, model.states().size() - 1), e);
  }
  r.verdict = Verdict::Satisfied;
  r.summary = "every " + b.str() + " transition preserves Q[" + a.str() + "] of " + std::to_string(family.size()) +
              " proposition(s)";
  return r;
}

CheckReport check_shortcut(const Model& model, const std::vector<GroundAction>& actions,
                           const std::vector<Expr>& props, std::optional<std::size_t> state) {
  for (const auto& phi : props) check_formula(phi, model.signature());
  if (!state) state = model.initial();
  if (!state) throw ModelError(ModelError::Code::NoInitialState, "model " + model.name() + " declares no initial state");
  CheckReport r;
  const bool same_action = actions.size() == 1 && props.size() > 1;
  if (!same_action && actions.size() != props.size())
    throw EvalError(EvalError::Code::LengthMismatch, std::to_string(actions.size()) + " actions but " +
                                                         std::to_string(props.size()) + " propositions");
  try {
    std::string lhs_name;
    Rational lhs;
    if (same_action) {
      Expr conj = props[0];
      for (std::size_t i = 1; i < props.size(); ++i) conj = mk_and(conj, props[i]);
      lhs_name = q_name(actions, conj);
      lhs = eval_q(model, *state, actions, conj);
      r.warnings.push_back("all events follow the single action " + actions[0].str() +
                           "; a product equality here is coincidental, not a consequence of independence");
    } else {
      lhs_name = trace_name(actions, props);
      lhs = eval_q_trace(model, *state, actions, props);
      for (std::size_t i = 0; i < actions.size(); ++i)
        for (std::size_t j = i + 1; j < actions.size(); ++j) {
          CheckReport ind = check_independent(model, actions[j], actions[i], props);
          if (ind.verdict != Verdict::Satisfied)
            r.warnings.push_back("precondition Independent(" + actions[j].str() + ", " + actions[i].str() +
                                 ") fails: " + ind.summary);
        }
    }
    Rational product = 1;
    std::string factors, factor_values;
    r.values.push_back({lhs_name, lhs});
    for (std::size_t i = 0; i < props.size(); ++i) {
      const GroundAction& a = same_action ? actions[0] : actions[i];
      Rational f = eval_q(model, *state, {a}, props[i]);
      product *= f;
      r.values.push_back({q_name({a}, props[i]), f});
      factors += (i ? " * " : "") + q_name({a}, props[i]);
      factor_values += (i ? " * " : "") + to_string(f);
    }
    r.values.push_back({factors, product});
    r.numeric = lhs;
    r.verdict = lhs == product ? Verdict::Satisfied : Verdict::Violated;
    r.summary = lhs_name + " = " + to_string(lhs) + (lhs == product ? " = " : " != ") + to_string(product) + " = " +
                factor_values;
    r.witness = Witness{model.name(), model.states()[*state], {}};
    if (r.verdict == Verdict::Satisfied) r.witness.reset();
  } catch (const EvalError& e) {
    return evaluation_error(model, *state, e);
  }
  return r;
}

}  // namespace ptl
