#include "ptl/typecheck.hpp"

#include <vector>

namespace ptl {
namespace {

using Code = TypeError::Code;

class Inferer {
 public:
  explicit Inferer(const TypeEnv& env) : env_(env) {}

  Type run(const Expr& e) {
    Type t = resolve(infer(e));
    for (const auto& [type, span] : equality_uses_) check_equality_type(resolve(type), span);
    for (const auto& q : quantifiers_) check_quantifier(q);
    if (t.has_vars()) throw TypeError(Code::Ambiguous, e.span(), "cannot determine the type of the expression");
    return t;
  }

 private:
  struct QuantifierUse {
    Type binder;
    bool bounded;
    SourceSpan span;
  };

  const TypeEnv& env_;
  std::vector<std::pair<std::string, Type>> scope_;
  std::map<int, Type> subst_;
  int next_var_ = 0;
  std::vector<std::pair<Type, SourceSpan>> equality_uses_;
  std::vector<QuantifierUse> quantifiers_;

  Type fresh() { return Type::var(next_var_++); }

  Type resolve(const Type& t) const {
    switch (t.kind()) {
      case Type::Kind::Var: {
        auto it = subst_.find(t.var_id());
        return it == subst_.end() ? t : resolve(it->second);
      }
      case Type::Kind::Base: return t;
      case Type::Kind::List: return Type::list(resolve(t.elem()));
      case Type::Kind::Arrow: return Type::arrow(resolve(t.from()), resolve(t.to()));
    }
    return t;
  }

  bool occurs(int id, const Type& t) const {
    Type r = resolve(t);
    switch (r.kind()) {
      case Type::Kind::Var: return r.var_id() == id;
      case Type::Kind::Base: return false;
      case Type::Kind::List: return occurs(id, r.elem());
      case Type::Kind::Arrow: return occurs(id, r.from()) || occurs(id, r.to());
    }
    return false;
  }

  bool unify_inner(const Type& a0, const Type& b0) {
    Type a = resolve(a0), b = resolve(b0);
    if (a.kind() == Type::Kind::Var) {
      if (b.kind() == Type::Kind::Var && b.var_id() == a.var_id()) return true;
      if (occurs(a.var_id(), b)) return false;
      subst_.insert_or_assign(a.var_id(), b);
      return true;
    }
    if (b.kind() == Type::Kind::Var) return unify_inner(b, a);
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Type::Kind::Base: return a.base_kind() == b.base_kind();
      case Type::Kind::List: return unify_inner(a.elem(), b.elem());
      case Type::Kind::Arrow: return unify_inner(a.from(), b.from()) && unify_inner(a.to(), b.to());
      case Type::Kind::Var: break;
    }
    return false;
  }

  void unify(const Type& expected, const Type& found, const SourceSpan& span, const std::string& what) {
    if (!unify_inner(expected, found))
      throw TypeError(Code::Mismatch, span,
                      what + ": expected " + to_string(resolve(expected)) + ", found " + to_string(resolve(found)));
  }

  Type scheme(Builtin b, const SourceSpan& span) {
    const Type o = Type::prop();
    const Type eta = Type::real();
    auto arr = [](Type a, Type b) { return Type::arrow(std::move(a), std::move(b)); };
    switch (b) {
      case Builtin::True:
      case Builtin::False: return o;
      case Builtin::Not: return arr(o, o);
      case Builtin::And:
      case Builtin::Or:
      case Builtin::Imp:
      case Builtin::Iff: return arr(o, arr(o, o));
      case Builtin::Forall:
      case Builtin::Exists: {
        Type t = fresh();
        return arr(arr(t, o), o);
      }
      case Builtin::Eq: {
        Type t = fresh();
        equality_uses_.emplace_back(t, span);
        return arr(t, arr(t, o));
      }
      case Builtin::Lt:
      case Builtin::Gt:
      case Builtin::Le:
      case Builtin::Ge: return arr(eta, arr(eta, o));
      case Builtin::Add:
      case Builtin::Mul:
      case Builtin::Div: return arr(eta, arr(eta, eta));
      case Builtin::At: return arr(Type::state(), arr(o, o));
      case Builtin::InState: return arr(Type::state(), o);
      case Builtin::Nil: return Type::list(fresh());
      case Builtin::Cons: {
        Type t = fresh();
        return arr(t, arr(Type::list(t), Type::list(t)));
      }
      case Builtin::Member: {
        Type t = fresh();
        return arr(t, arr(Type::list(t), o));
      }
      case Builtin::Length: return arr(Type::list(fresh()), eta);
      case Builtin::Remove: {
        Type t = fresh();
        return arr(Type::list(t), arr(t, Type::list(t)));
      }
      case Builtin::Q: return arr(Type::list(Type::action()), arr(o, eta));
      case Builtin::None: break;
    }
    return fresh();
  }

  Type lookup(const Sym& s, const SourceSpan& span) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == s.name) return it->second;
    if (auto it = env_.find(s.name); it != env_.end()) return it->second;
    throw TypeError(Code::UnboundSymbol, span, "unbound symbol '" + s.name + "'");
  }

  static std::string describe(const Expr& fn) {
    auto sp = spine(fn);
    if (auto* s = sp.head->as<Sym>()) return "argument of '" + s->name + "'";
    return "argument";
  }

  Type infer(const Expr& e) {
    const SourceSpan& span = e.span();
    if (auto* s = e.as<Sym>()) {
      if (s->builtin == Builtin::None) return lookup(*s, span);
      Type t = scheme(s->builtin, span);
      if (s->builtin == Builtin::Forall || s->builtin == Builtin::Exists)
        quantifiers_.push_back({t.from().from(), false, span});
      return t;
    }
    if (auto* a = e.as<App>()) {
      Type tf = infer(a->fn);
      if (auto* q = a->fn.as<Sym>(); q && (q->builtin == Builtin::Forall || q->builtin == Builtin::Exists)) {
        if (auto* lam = a->arg.as<Lam>(); lam && bounded_shape(q->builtin, *lam))
          quantifiers_.back().bounded = true;
      }
      Type ta = infer(a->arg);
      Type rf = resolve(tf);
      if (rf.kind() == Type::Kind::Arrow) {
        unify(rf.from(), ta, a->arg.span().known() ? a->arg.span() : span, describe(a->fn));
        return rf.to();
      }
      if (rf.kind() != Type::Kind::Var)
        throw TypeError(Code::Mismatch, span, "cannot apply an expression of type " + to_string(rf));
      Type r = fresh();
      unify(tf, Type::arrow(ta, r), span, "application");
      return r;
    }
    if (auto* l = e.as<Lam>()) {
      scope_.emplace_back(l->var, l->type);
      Type body = infer(l->body);
      scope_.pop_back();
      return Type::arrow(l->type, body);
    }
    if (auto* d = e.as<Diamond>()) {
      unify(Type::action(), infer(d->action), d->action.span(), "diamond action");
      if (d->prob) unify(Type::real(), infer(*d->prob), d->prob->span(), "diamond probability");
      unify(Type::prop(), infer(d->body), d->body.span(), "diamond body");
      return Type::prop();
    }
    if (auto* b = e.as<Box>()) {
      unify(Type::action(), infer(b->action), b->action.span(), "box action");
      unify(Type::prop(), infer(b->body), b->body.span(), "box body");
      return Type::prop();
    }
    if (e.as<Lit>()) return Type::real();
    if (auto* q = e.as<QTrace>()) {
      if (q->actions.size() != q->props.size())
        throw TypeError(Code::Mismatch, span,
                        "trace has " + std::to_string(q->actions.size()) + " actions but " +
                            std::to_string(q->props.size()) + " propositions");
      for (const auto& x : q->actions) unify(Type::action(), infer(x), x.span(), "trace action");
      for (const auto& x : q->props) unify(Type::prop(), infer(x), x.span(), "trace proposition");
      return Type::real();
    }
    return fresh();
  }

  // Booleans, objects, numbers, states, lists of those, and the two function
  // abbreviations o and α (compared pointwise / as ground actions).
  static bool equality_type(const Type& t) {
    switch (t.kind()) {
      case Type::Kind::Var:
      case Type::Kind::Base: return true;
      case Type::Kind::List: return equality_type(t.elem());
      case Type::Kind::Arrow: return t.is_prop() || t.is_action();
    }
    return false;
  }

  void check_equality_type(const Type& t, const SourceSpan& span) {
    if (!equality_type(t)) throw TypeError(Code::Mismatch, span, "equality is not defined on type " + to_string(t));
  }

  void check_quantifier(const QuantifierUse& q) {
    Type t = resolve(q.binder);
    switch (t.kind()) {
      case Type::Kind::Base:
        if (t.base_kind() == BaseKind::Real)
          throw TypeError(Code::Unenumerable, q.span,
                          "quantification over real is not supported; arithmetic must stay ground");
        return;
      case Type::Kind::List:
        if (!q.bounded)
          throw TypeError(Code::Unenumerable, q.span,
                          "quantification over list type " + to_string(t) + " is only allowed bounded by 'x in L'");
        return;
      case Type::Kind::Arrow:
        throw TypeError(Code::Unenumerable, q.span, "quantification over function type " + to_string(t));
      case Type::Kind::Var:
        throw TypeError(Code::Ambiguous, q.span, "cannot determine the quantifier's binder type");
    }
  }
};

}  // namespace

Type infer_type(const Expr& e, const TypeEnv& env) { return Inferer(env).run(e); }

void check_formula(const Expr& e, const TypeEnv& env) {
  Type t = infer_type(e, env);
  if (!t.is_prop())
    throw TypeError(TypeError::Code::NotAFormula, e.span(), "expected a formula of type prop, found " + to_string(t));
}

}  // namespace ptl
