#include "ptl/eval.hpp"

#include <algorithm>

namespace ptl {

namespace {

const char* kind_name(const Value& v) {
  switch (v.v.index()) {
    case 0: return "a boolean";
    case 1: return "a number";
    case 2: return "an object";
    case 3: return "a state";
    case 4: return "a list";
    case 5: return "a function";
    default: return "an action";
  }
}

template <class T>
const T& expect(const Value& v, const char* what) {
  if (auto* p = std::get_if<T>(&v.v)) return *p;
  throw EvalError(EvalError::Code::NotApplicable, std::string("expected ") + what + ", found " + kind_name(v));
}

}  // namespace

bool Value::as_bool() const { return expect<bool>(*this, "a boolean"); }
const Rational& Value::as_rational() const { return expect<Rational>(*this, "a number"); }
std::size_t Value::as_state() const { return expect<StateRef>(*this, "a state").index; }
const ListValue& Value::as_list() const { return expect<ListValue>(*this, "a list"); }
const FuncValue& Value::as_func() const { return expect<FuncValue>(*this, "a function"); }
const GroundAction& Value::as_action() const { return expect<GroundAction>(*this, "an action"); }

bool operator==(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, FuncValue>) {
          throw EvalError(EvalError::Code::Unsupported, "functions cannot be compared for equality");
        } else if constexpr (std::is_same_v<T, ListValue>) {
          return x.items.size() == y.items.size() && std::equal(x.items.begin(), x.items.end(), y.items.begin());
        } else {
          return x == y;
        }
      },
      a.v);
}

std::string to_string(const Value& v, const Model& model) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Rational>) {
          return to_string(x);
        } else if constexpr (std::is_same_v<T, ObjectRef>) {
          return x.name;
        } else if constexpr (std::is_same_v<T, StateRef>) {
          return model.states().at(x.index);
        } else if constexpr (std::is_same_v<T, ListValue>) {
          std::string out;
          for (const auto& item : x.items) out += to_string(item, model) + " :: ";
          return out + "nil";
        } else if constexpr (std::is_same_v<T, FuncValue>) {
          return "<function of " + to_string(x.param) + ">";
        } else {
          return x.str();
        }
      },
      v.v);
}

Env Env::bind(std::string name, Value value) const {
  Env e;
  e.head_ = std::make_shared<const Node>(Node{std::move(name), std::move(value), {}, head_});
  return e;
}

Env Env::bind_intension(std::string name, std::function<Value(std::size_t)> at) const {
  Env e;
  e.head_ = std::make_shared<const Node>(Node{std::move(name), Value{false}, std::move(at), head_});
  return e;
}

std::optional<Value> Env::lookup(const std::string& name, std::size_t state) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->name == name) return n->at ? n->at(state) : n->value;
  return std::nullopt;
}

std::vector<Value> enumerate_domain(const Model& model, const Type& t) {
  std::vector<Value> out;
  if (t.is_base(BaseKind::Object)) {
    for (const auto& o : model.objects()) out.push_back(Value{ObjectRef{o}});
  } else if (t.is_base(BaseKind::State)) {
    for (std::size_t i = 0; i < model.states().size(); ++i) out.push_back(Value{StateRef{i}});
  } else if (t.is_base(BaseKind::Bool)) {
    out.push_back(Value{false});
    out.push_back(Value{true});
  } else {
    throw EvalError(EvalError::Code::UnenumerableQuantifier,
                    "cannot quantify over type " + to_string(t) + "; only obj, state and bool domains are finite");
  }
  return out;
}

namespace {

using Code = EvalError::Code;

// Types whose values depend on the state they are read at: prop and functions into prop.
bool intensional(const Type& t) {
  if (t == Type::prop()) return true;
  return t.kind() == Type::Kind::Arrow && intensional(t.to());
}

// An intensional argument travels as a function from states to its value there.
bool is_intension(const Value& v) {
  auto* f = std::get_if<FuncValue>(&v.v);
  return f && f->param.is_base(BaseKind::State);
}

class Evaluator {
 public:
  explicit Evaluator(const Model& m) : m_(m) {}

  Value eval(std::size_t w, const Expr& e, const Env& env) const {
    if (auto* l = e.as<Lit>()) return Value{l->value};
    if (auto* s = e.as<Sym>()) return symbol(w, *s, env);
    if (auto* lam = e.as<Lam>()) return closure(w, *lam, env);
    if (auto* d = e.as<Diamond>()) return Value{diamond(w, *d, env)};
    if (auto* b = e.as<Box>()) {
      GroundAction a = action(w, b->action, env);
      for (const auto& s : m_.successors(w, a))
        if (!formula(s.state, b->body, env)) return Value{false};
      return Value{true};
    }
    if (auto* q = e.as<QTrace>()) {
      if (q->actions.size() != q->props.size())
        throw EvalError(Code::LengthMismatch, "trace has " + std::to_string(q->actions.size()) + " actions but " +
                                                  std::to_string(q->props.size()) + " propositions");
      return Value{q_trace(w, q->actions, q->props, env)};
    }
    return application(w, e, env);
  }

  bool formula(std::size_t w, const Expr& e, const Env& env) const { return eval(w, e, env).as_bool(); }
  Rational number(std::size_t w, const Expr& e, const Env& env) const { return eval(w, e, env).as_rational(); }
  GroundAction action(std::size_t w, const Expr& e, const Env& env) const { return eval(w, e, env).as_action(); }

  template <class ActionAt>
  Rational q(std::size_t w, std::size_t i, std::size_t n, const ActionAt& action_at, const Expr& phi,
             const Env& env) const {
    if (i == n) return formula(w, phi, env) ? Rational(1) : Rational(0);
    GroundAction a = action_at(i, w);
    const auto& succ = enabled_successors(w, a);
    Rational sum = 0;
    for (const auto& s : succ) sum += s.probability * q(s.state, i + 1, n, action_at, phi, env);
    return sum;
  }

  template <class ActionAt>
  Rational trace(std::size_t w, std::size_t i, const ActionAt& action_at, const std::vector<Expr>& props,
                 const Env& env) const {
    if (i == props.size()) return 1;
    GroundAction a = action_at(i, w);
    const auto& succ = enabled_successors(w, a);
    Rational sum = 0;
    for (const auto& s : succ)
      if (formula(s.state, props[i], env)) sum += s.probability * trace(s.state, i + 1, action_at, props, env);
    return sum;
  }

  Rational q_exprs(std::size_t w, const std::vector<Expr>& actions, const Expr& phi, const Env& env) const {
    auto at = [&](std::size_t i, std::size_t s) { return action(s, actions[i], env); };
    return q(w, 0, actions.size(), at, phi, env);
  }

  Rational q_trace(std::size_t w, const std::vector<Expr>& actions, const std::vector<Expr>& props,
                   const Env& env) const {
    auto at = [&](std::size_t i, std::size_t s) { return action(s, actions[i], env); };
    return trace(w, 0, at, props, env);
  }

 private:
  const Model& m_;

  const std::vector<Successor>& enabled_successors(std::size_t w, const GroundAction& a) const {
    const auto& succ = m_.successors(w, a);
    if (succ.empty())
      throw EvalError(Code::DisabledAction,
                      "action " + a.str() + " is not enabled at state " + m_.states()[w]);
    return succ;
  }

  bool diamond(std::size_t w, const Diamond& d, const Env& env) const {
    GroundAction a = action(w, d.action, env);
    std::optional<Rational> p;
    if (d.prob) p = number(w, *d.prob, env);
    for (const auto& s : m_.successors(w, a)) {
      if (p && s.probability != *p) continue;
      if (formula(s.state, d.body, env)) return true;
    }
    return false;
  }

  Value closure(std::size_t w, const Lam& lam, const Env& env) const {
    const Model* m = &m_;
    bool lazy = intensional(lam.type);
    return Value{FuncValue{lam.type, [m, w, lazy, var = lam.var, body = lam.body, env](const Value& v) {
                             if (lazy && is_intension(v)) {
                               auto read = [fn = v.as_func().fn](std::size_t s) { return fn(Value{StateRef{s}}); };
                               return Evaluator(*m).eval(w, body, env.bind_intension(var, read));
                             }
                             return Evaluator(*m).eval(w, body, env.bind(var, v));
                           }}};
  }

  // Curried function collecting `params.size()` arguments before calling `done`.
  static Value curried(std::vector<Type> params, std::function<Value(const std::vector<Value>&)> done,
                       std::vector<Value> collected = {}) {
    if (collected.size() == params.size()) return done(collected);
    Type param = params[collected.size()];
    return Value{FuncValue{param, [params, done, collected](const Value& v) {
                             auto next = collected;
                             next.push_back(v);
                             return curried(params, done, std::move(next));
                           }}};
  }

  static std::string name_of(const Value& v, const Model& m) {
    if (auto* o = std::get_if<ObjectRef>(&v.v)) return o->name;
    if (auto* s = std::get_if<StateRef>(&v.v)) return m.states().at(s->index);
    throw EvalError(Code::NotApplicable, std::string("expected an object or a state, found ") + kind_name(v));
  }

  Value symbol(std::size_t w, const Sym& s, const Env& env) const {
    switch (s.builtin) {
      case Builtin::None: break;
      case Builtin::True: return Value{true};
      case Builtin::False: return Value{false};
      case Builtin::Nil: return Value{ListValue{}};
      default: return section(w, s.builtin);
    }
    if (auto v = env.lookup(s.name, w)) return *v;
    if (const Definition* d = m_.definition(s.name)) return eval(w, d->body, Env{});
    if (auto st = m_.find_state(s.name)) return Value{StateRef{*st}};
    if (m_.is_object(s.name)) return Value{ObjectRef{s.name}};
    if (auto arity = m_.action_arity(s.name)) {
      const Model* m = &m_;
      return curried(std::vector<Type>(*arity, Type::object()), [m, name = s.name](const std::vector<Value>& args) {
        GroundAction a{name, {}};
        for (const auto& v : args) a.args.push_back(name_of(v, *m));
        return Value{a};
      });
    }
    if (const auto* params = m_.predicate_args(s.name)) {
      const Model* m = &m_;
      return curried(*params, [m, w, name = s.name](const std::vector<Value>& args) {
        GroundAtom atom{name, {}};
        for (const auto& v : args) atom.args.push_back(name_of(v, *m));
        return Value{m->holds(w, atom)};
      });
    }
    throw EvalError(Code::UnboundVariable, "unbound symbol '" + s.name + "'");
  }

  // A builtin used as a value, e.g. the section (/\) or a partial application.
  Value section(std::size_t w, Builtin b) const {
    if (b == Builtin::At || b == Builtin::Q)
      throw EvalError(Code::Unsupported, std::string("'") + builtin_name(b) + "' must be applied to all its arguments");
    Type param = Type::var(0);
    switch (b) {
      case Builtin::Not:
      case Builtin::And:
      case Builtin::Or:
      case Builtin::Imp:
      case Builtin::Iff: param = Type::boolean(); break;
      case Builtin::InState: param = Type::state(); break;
      default: break;
    }
    const Evaluator self = *this;
    return curried(std::vector<Type>(static_cast<std::size_t>(arity(b)), param),
                   [self, w, b](const std::vector<Value>& args) { return self.pure(w, b, args); });
  }

  bool quantify(std::size_t w, bool universal, const Expr& arg, const Env& env) const {
    if (auto* lam = arg.as<Lam>()) {
      auto check = [&](const Expr& body, const std::vector<Value>& domain) {
        for (const auto& v : domain)
          if (formula(w, body, env.bind(lam->var, v)) != universal) return !universal;
        return universal;
      };
      if (auto shape = bounded_shape(universal ? Builtin::Forall : Builtin::Exists, *lam))
        return check(*shape->body, eval(w, *shape->list, env).as_list().items);
      return check(lam->body, enumerate_domain(m_, lam->type));
    }
    Value f = eval(w, arg, env);
    const FuncValue& fn = f.as_func();
    for (const auto& v : enumerate_domain(m_, fn.param))
      if (fn.fn(v).as_bool() != universal) return !universal;
    return universal;
  }

  Value application(std::size_t w, const Expr& e, const Env& env) const {
    Spine sp = spine(e);
    if (auto* head = sp.head->as<Sym>(); head && head->builtin != Builtin::None) {
      Builtin b = head->builtin;
      if (sp.args.size() == static_cast<std::size_t>(arity(b))) {
        const Expr* a = sp.args[0];
        switch (b) {
          case Builtin::And: return Value{formula(w, *a, env) && formula(w, *sp.args[1], env)};
          case Builtin::Or: return Value{formula(w, *a, env) || formula(w, *sp.args[1], env)};
          case Builtin::Imp: return Value{!formula(w, *a, env) || formula(w, *sp.args[1], env)};
          case Builtin::Forall: return Value{quantify(w, true, *a, env)};
          case Builtin::Exists: return Value{quantify(w, false, *a, env)};
          case Builtin::At: return Value{formula(eval(w, *a, env).as_state(), *sp.args[1], env)};
          case Builtin::Q: {
            if (auto items = list_items(*a)) return Value{q_exprs(w, *items, *sp.args[1], env)};
            std::vector<GroundAction> actions;
            for (const auto& v : eval(w, *a, env).as_list().items) actions.push_back(v.as_action());
            auto at = [&](std::size_t i, std::size_t) { return actions[i]; };
            return Value{q(w, 0, actions.size(), at, *sp.args[1], env)};
          }
          default: {
            std::vector<Value> args;
            for (const Expr* x : sp.args) args.push_back(eval(w, *x, env));
            return pure(w, b, args);
          }
        }
      }
    }
    const App& app = *e.as<App>();
    Value fn = eval(w, app.fn, env);
    if (auto* f = std::get_if<FuncValue>(&fn.v); f && intensional(f->param)) {
      const Evaluator self = *this;
      return f->fn(Value{FuncValue{Type::state(), [self, arg = app.arg, env](const Value& s) {
                                     return self.eval(s.as_state(), arg, env);
                                   }}});
    }
    Value arg = eval(w, app.arg, env);
    if (auto* f = std::get_if<FuncValue>(&fn.v)) return f->fn(arg);
    // A proposition applied to a state is the proposition evaluated there.
    if (std::holds_alternative<bool>(fn.v) && std::holds_alternative<StateRef>(arg.v))
      return Value{formula(arg.as_state(), app.fn, env)};
    throw EvalError(Code::NotApplicable, std::string("cannot apply ") + kind_name(fn) + " to an argument");
  }

  // Builtins whose arguments are ordinary values.
  Value pure(std::size_t w, Builtin b, const std::vector<Value>& args) const {
    auto num = [&](std::size_t i) -> const Rational& { return args[i].as_rational(); };
    switch (b) {
      case Builtin::Not: return Value{!args[0].as_bool()};
      case Builtin::And: return Value{args[0].as_bool() && args[1].as_bool()};
      case Builtin::Or: return Value{args[0].as_bool() || args[1].as_bool()};
      case Builtin::Imp: return Value{!args[0].as_bool() || args[1].as_bool()};
      case Builtin::Iff: return Value{args[0].as_bool() == args[1].as_bool()};
      case Builtin::Eq: return Value{args[0] == args[1]};
      case Builtin::Lt: return Value{num(0) < num(1)};
      case Builtin::Gt: return Value{num(0) > num(1)};
      case Builtin::Le: return Value{num(0) <= num(1)};
      case Builtin::Ge: return Value{num(0) >= num(1)};
      case Builtin::Add: return Value{Rational(num(0) + num(1))};
      case Builtin::Mul: return Value{Rational(num(0) * num(1))};
      case Builtin::Div:
        if (num(1) == 0) throw EvalError(Code::DivisionByZero, "division of " + to_string(num(0)) + " by zero");
        return Value{Rational(num(0) / num(1))};
      case Builtin::InState: return Value{args[0].as_state() == w};
      case Builtin::Cons: {
        ListValue l;
        l.items.push_back(args[0]);
        const auto& rest = args[1].as_list().items;
        l.items.insert(l.items.end(), rest.begin(), rest.end());
        return Value{std::move(l)};
      }
      case Builtin::Member: {
        const auto& items = args[1].as_list().items;
        return Value{std::find(items.begin(), items.end(), args[0]) != items.end()};
      }
      case Builtin::Length: return Value{Rational(args[0].as_list().items.size())};
      case Builtin::Remove: {
        ListValue l;
        for (const auto& item : args[0].as_list().items)
          if (!(item == args[1])) l.items.push_back(item);
        return Value{std::move(l)};
      }
      case Builtin::Forall:
      case Builtin::Exists: {
        const FuncValue& fn = args[0].as_func();
        bool universal = b == Builtin::Forall;
        for (const auto& v : enumerate_domain(m_, fn.param))
          if (fn.fn(v).as_bool() != universal) return Value{!universal};
        return Value{universal};
      }
      default:
        throw EvalError(Code::Unsupported, std::string("'") + builtin_name(b) + "' cannot be used as a value");
    }
  }
};

}  // namespace

Value eval(const Model& model, std::size_t state, const Expr& e, const Env& env) {
  return Evaluator(model).eval(state, e, env);
}

bool eval_formula(const Model& model, std::size_t state, const Expr& e, const Env& env) {
  return Evaluator(model).formula(state, e, env);
}

Rational eval_number(const Model& model, std::size_t state, const Expr& e, const Env& env) {
  return Evaluator(model).number(state, e, env);
}

GroundAction eval_action(const Model& model, std::size_t state, const Expr& e, const Env& env) {
  return Evaluator(model).action(state, e, env);
}

Rational eval_q(const Model& model, std::size_t state, const std::vector<Expr>& actions, const Expr& phi,
                const Env& env) {
  return Evaluator(model).q_exprs(state, actions, phi, env);
}

Rational eval_q(const Model& model, std::size_t state, const std::vector<GroundAction>& actions, const Expr& phi,
                const Env& env) {
  auto at = [&](std::size_t i, std::size_t) { return actions[i]; };
  return Evaluator(model).q(state, 0, actions.size(), at, phi, env);
}

Rational eval_q_trace(const Model& model, std::size_t state, const std::vector<Expr>& actions,
                      const std::vector<Expr>& props, const Env& env) {
  if (actions.size() != props.size())
    throw EvalError(EvalError::Code::LengthMismatch, "trace has " + std::to_string(actions.size()) +
                                                         " actions but " + std::to_string(props.size()) +
                                                         " propositions");
  return Evaluator(model).q_trace(state, actions, props, env);
}

Rational eval_q_trace(const Model& model, std::size_t state, const std::vector<GroundAction>& actions,
                      const std::vector<Expr>& props, const Env& env) {
  if (actions.size() != props.size())
    throw EvalError(EvalError::Code::LengthMismatch, "trace has " + std::to_string(actions.size()) +
                                                         " actions but " + std::to_string(props.size()) +
                                                         " propositions");
  auto at = [&](std::size_t i, std::size_t) { return actions[i]; };
  return Evaluator(model).trace(state, 0, at, props, env);
}

}  // namespace ptl
