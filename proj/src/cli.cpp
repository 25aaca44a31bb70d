#include "ptl/cli.hpp"

#include <filesystem>
#include <CLI11.hpp>
#include <json.hpp>

#include "ptl/adequacy.hpp"
#include "ptl/checker.hpp"

namespace ptl {

namespace {

struct FormulaArg {
  std::string name;
  SurfaceExpr expr;
};

// `file.ptl`, `file.ptl:name`, or an inline formula.
std::vector<FormulaArg> resolve_formulas(const std::string& arg) {
  std::string path = arg, only;
  if (auto pos = arg.rfind(".ptl:"); pos != std::string::npos) {
    path = arg.substr(0, pos + 4);
    only = arg.substr(pos + 5);
  }
  bool is_file = path.size() > 4 && path.compare(path.size() - 4, 4, ".ptl") == 0;
  if (!is_file || !std::filesystem::exists(path)) {
    if (is_file) throw Error("cannot open '" + path + "'");
    return {FormulaArg{"", parse_formula(arg)}};
  }
  std::vector<FormulaArg> out;
  for (auto& f : parse_formula_file(read_file(path), path))
    if (only.empty() || f.name == only) out.push_back(FormulaArg{f.name, std::move(f.expr)});
  if (out.empty()) throw Error(only.empty() ? "no definitions in '" + path + "'" : "no definition '" + only + "' in '" + path + "'");
  return out;
}

std::size_t pick_state(const Model& m, const std::optional<std::string>& state) {
  if (state) return m.state(*state);
  if (auto s = m.initial()) return *s;
  throw ModelError(ModelError::Code::NoInitialState,
                   "model " + m.name() + " declares no initial state; pass --state");
}

int status_of(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return kExitSatisfied;
    case Verdict::Violated: return kExitViolated;
    case Verdict::Error: return kExitEval;
  }
  return kExitEval;
}

int worst(int a, int b) {
  auto rank = [](int s) { return s == kExitSatisfied ? 0 : s == kExitViolated ? 1 : s == kExitEval ? 2 : 3; };
  return rank(a) >= rank(b) ? a : b;
}

class Runner {
 public:
  Runner(const RunConfig& c, std::ostream& out, std::ostream& err) : c_(c), out_(out), err_(err) {}

  int run() {
    switch (c_.command) {
      case Command::Validate: return validate();
      case Command::Eval: return evaluate();
      case Command::Check: return check();
      case Command::Entail: return entail();
      case Command::Independent: return independent();
      case Command::Shortcut: return shortcut();
      case Command::Translate: return translate();
      case Command::Adequacy: return adequacy();
      case Command::Corpus: return run_corpus(c_.corpus_dir, out_, err_);
    }
    return kExitUsage;
  }

 private:
  const RunConfig& c_;
  std::ostream& out_;
  std::ostream& err_;
  bool first_json_ = true;

  Model only_model() const {
    if (c_.models.size() != 1) throw Error("expected exactly one model file");
    return load_model(c_.models[0]);
  }

  void emit(const std::string& label, const CheckReport& r) {
    if (c_.json) {
      std::string j = report_to_json(r);
      if (!label.empty()) {
        nlohmann::json wrapped = {{"name", label}, {"report", nlohmann::json::parse(j)}};
        j = wrapped.dump(2);
      }
      out_ << j << "\n";
      return;
    }
    if (!label.empty()) out_ << "[" << label << "] ";
    out_ << format_report(r, c_.decimal);
  }

  int validate() {
    if (c_.models.empty()) throw Error("expected at least one model file");
    for (const auto& path : c_.models) {
      Model m = load_model(path);
      out_ << "ok: " << m.name() << " (" << m.states().size() << " states, " << m.transition_count()
           << " transitions, " << m.ground_actions().size() << " ground actions)\n";
    }
    return kExitSatisfied;
  }

  std::string numeric_text(const Rational& r) const {
    std::string s = to_string(r);
    if (c_.decimal && r.convert_to<Integer>() != r) s += "  -- approx " + to_decimal_string(r);
    return s;
  }

  int evaluate() {
    Model m = only_model();
    std::size_t w = pick_state(m, c_.state);
    if (c_.formulas.empty()) throw Error("expected a formula");
    int status = kExitSatisfied;
    for (const auto& arg : c_.formulas)
      for (const auto& f : resolve_formulas(arg)) {
        Expr e = desugar(f.expr, m.signature());
        infer_type(e, m.signature());
        std::string prefix = f.name.empty() ? "" : f.name + " = ";
        try {
          Value v = eval(m, w, e);
          if (auto* r = std::get_if<Rational>(&v.v))
            out_ << prefix << numeric_text(*r) << "\n";
          else
            out_ << prefix << to_string(v, m) << "\n";
        } catch (const EvalError& ex) {
          err_ << (f.name.empty() ? "" : f.name + ": ") << "error: " << ex.what() << "\n";
          status = worst(status, kExitEval);
        }
      }
    return status;
  }

  int check() {
    Model m = only_model();
    if (c_.formulas.empty()) throw Error("expected a formula");
    std::optional<std::size_t> w;
    if (!c_.global) w = pick_state(m, c_.state);
    int status = kExitSatisfied;
    for (const auto& arg : c_.formulas) {
      auto defs = resolve_formulas(arg);
      for (const auto& f : defs) {
        Expr e = desugar(f.expr, m.signature());
        Type t = infer_type(e, m.signature());
        if (defs.size() > 1 && t != Type::prop()) {
          // Whole files mix formulas with numeric and list definitions.
          err_ << "[" << f.name << "] skipped: not a formula (" << to_string(t) << ")\n";
          continue;
        }
        check_formula(e, m.signature());
        CheckReport r = w ? satisfies(m, *w, e) : globally_satisfies(m, e);
        emit(f.name, r);
        status = worst(status, status_of(r.verdict));
      }
    }
    return status;
  }

  int entail() {
    if (c_.models.empty()) throw Error("expected at least one model file");
    std::vector<Model> models;
    for (const auto& p : c_.models) models.push_back(load_model(p));
    Theory t = c_.theory.empty() ? Theory{} : load_theory(c_.theory);
    auto conclusions = resolve_formulas(c_.conclusion);
    int status = kExitSatisfied;
    for (const auto& f : conclusions) {
      CheckReport r = entails(models, t, f.expr);
      emit(f.name, r);
      status = worst(status, status_of(r.verdict));
    }
    return status;
  }

  std::optional<std::vector<Expr>> props_for(const Model& m) const {
    if (c_.props.empty() && !c_.props_file) return std::nullopt;
    std::vector<Expr> out;
    for (const auto& p : c_.props) out.push_back(read_formula(p, m.signature()));
    if (c_.props_file)
      for (const auto& f : resolve_formulas(*c_.props_file)) out.push_back(formula_for(m, f.expr));
    return out;
  }

  GroundAction action_of(const Model& m, const std::string& text) const {
    Expr e = read_expr(text, m.signature());
    if (!infer_type(e, m.signature()).is_action()) throw Error("'" + text + "' is not an action");
    return eval_action(m, 0, e);
  }

  int independent() {
    Model m = only_model();
    if (c_.actions.size() != 2) throw Error("independent needs two actions");
    CheckReport r = check_independent(m, action_of(m, c_.actions[0]), action_of(m, c_.actions[1]), props_for(m));
    emit("", r);
    return status_of(r.verdict);
  }

  int shortcut() {
    Model m = only_model();
    std::vector<GroundAction> actions;
    for (const auto& a : c_.actions) actions.push_back(action_of(m, a));
    auto props = props_for(m);
    if (!props || actions.empty()) throw Error("shortcut needs --action and --prop options");
    std::optional<std::size_t> w;
    if (c_.state) w = m.state(*c_.state);
    CheckReport r = check_shortcut(m, actions, *props, w);
    emit("", r);
    return status_of(r.verdict);
  }

  int translate() {
    ProbabilitySpace space = load_space(c_.space);
    Model m = translate_space(space, c_.action);
    out_ << print_model(m.spec());
    for (const auto& text : c_.events) {
      SetExpr e = parse_set_expr(text);
      out_ << "-- g(" << to_string(e) << ") = " << print_formula(translate_event(space, e)) << "\n";
    }
    return kExitSatisfied;
  }

  int adequacy() {
    ProbabilitySpace space = load_space(c_.space);
    if (c_.events.empty()) {
      CheckReport r = check_adequacy(space, c_.depth, !c_.all_exprs, c_.action);
      emit("", r);
      return status_of(r.verdict);
    }
    Model m = translate_space(space, c_.action);
    int status = kExitSatisfied;
    for (const auto& text : c_.events) {
      SetExpr e = parse_set_expr(text);
      Expr g = translate_event(space, e);
      Rational lhs = measure(space, e);
      Rational rhs = eval_q(m, *m.initial(), std::vector<GroundAction>{GroundAction{c_.action, {}}}, g);
      CheckReport r;
      r.verdict = lhs == rhs ? Verdict::Satisfied : Verdict::Violated;
      std::string q = print_formula(mk_q({Expr::sym(c_.action)}, g));
      r.summary = "measure(" + to_string(e) + ") = " + to_string(lhs) + (lhs == rhs ? " = " : " != ") +
                  to_string(rhs) + " = " + q;
      r.values = {{"measure(" + to_string(e) + ")", lhs}, {q, rhs}};
      r.numeric = rhs;
      emit("", r);
      status = worst(status, status_of(r.verdict));
    }
    return status;
  }
};

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return Runner(config, out, err).run();
  } catch (const EvalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitEval;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ptl: parse, typecheck, evaluate and check probabilistic temporal logic formulas"};
  app.require_subcommand(1);
  RunConfig c;
  std::string state, model_path;

  auto common = [&](CLI::App* sub, bool with_state) {
    sub->add_flag("--json", c.json, "structured output");
    sub->add_flag("--decimal", c.decimal, "append approximate decimals as comments");
    if (with_state) sub->add_option("--state", state, "evaluation state (default: the model's initial state)");
  };

  auto* validate = app.add_subcommand("validate", "validate model files");
  validate->add_option("models", c.models, "model files")->required();

  auto* eval_cmd = app.add_subcommand("eval", "evaluate expressions at a state");
  eval_cmd->add_option("model", model_path, "model file")->required();
  eval_cmd->add_option("formulas", c.formulas, "expressions, .ptl files or file.ptl:name")->required();
  common(eval_cmd, true);

  auto* check = app.add_subcommand("check", "check formulas at a state, or at every state with --global");
  check->add_option("model", model_path, "model file")->required();
  check->add_option("formulas", c.formulas, "formulas, .ptl files or file.ptl:name")->required();
  check->add_flag("--global", c.global, "check every state");
  common(check, true);

  auto* entail = app.add_subcommand("entail", "entailment relative to a family of models");
  entail->add_option("models", c.models, "model files")->required();
  entail->add_option("--theory", c.theory, "theory (.ptl)");
  entail->add_option("--conclusion", c.conclusion, "conclusion formula, .ptl file or file.ptl:name")->required();
  common(entail, false);

  auto* independent = app.add_subcommand("independent", "check Independent(a, b) over a proposition family");
  independent->add_option("model", model_path, "model file")->required();
  independent->add_option("actions", c.actions, "actions a and b")->required()->expected(2);
  independent->add_option("--prop", c.props, "a proposition of the family (repeatable)");
  independent->add_option("--props", c.props_file, "propositions from a .ptl file");
  common(independent, false);

  auto* shortcut = app.add_subcommand("shortcut", "compare a trace probability with the product of its steps");
  shortcut->add_option("model", model_path, "model file")->required();
  shortcut->add_option("--action", c.actions, "trace action (repeatable, in order)")->required();
  shortcut->add_option("--prop", c.props, "trace proposition (repeatable, in order)");
  shortcut->add_option("--props", c.props_file, "trace propositions from a .ptl file");
  common(shortcut, true);

  auto* translate = app.add_subcommand("translate", "print the model of a probability space");
  translate->add_option("space", c.space, "probability space (.pspace)")->required();
  translate->add_option("--action", c.action, "name of the sampling action");
  translate->add_option("--event", c.events, "also translate this set expression (repeatable)");

  auto* adequacy = app.add_subcommand("adequacy", "check measure(E) = Q_a(g(E)) for set expressions");
  adequacy->add_option("space", c.space, "probability space (.pspace)")->required();
  adequacy->add_option("--depth", c.depth, "depth bound for enumerated set expressions")->check(CLI::PositiveNumber);
  adequacy->add_flag("--all", c.all_exprs, "keep expressions with equal denotations");
  adequacy->add_option("--action", c.action, "name of the sampling action");
  adequacy->add_option("--event", c.events, "check only this set expression (repeatable)");
  common(adequacy, false);

  auto* corpus = app.add_subcommand("corpus", "run the fixture manifests of a corpus directory");
  corpus->add_option("dir", c.corpus_dir, "corpus directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSatisfied;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (!state.empty()) c.state = state;
  if (!model_path.empty()) c.models.push_back(model_path);
  const std::pair<CLI::App*, Command> table[] = {
      {validate, Command::Validate},       {eval_cmd, Command::Eval},   {check, Command::Check},
      {entail, Command::Entail},           {independent, Command::Independent}, {shortcut, Command::Shortcut},
      {translate, Command::Translate},     {adequacy, Command::Adequacy}, {corpus, Command::Corpus},
  };
  for (const auto& [sub, cmd] : table)
    if (sub->parsed()) c.command = cmd;
  return run(c, out, err);
}

}  // namespace ptl
