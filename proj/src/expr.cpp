#include "ptl/expr.hpp"

#include <algorithm>
#include <map>

namespace ptl {

int arity(Builtin b) {
  switch (b) {
    case Builtin::None:
    case Builtin::True:
    case Builtin::False:
    case Builtin::Nil:
      return 0;
    case Builtin::Not:
    case Builtin::Forall:
    case Builtin::Exists:
    case Builtin::InState:
    case Builtin::Length:
      return 1;
    default:
      return 2;
  }
}

const char* builtin_name(Builtin b) {
  switch (b) {
    case Builtin::None: return "<symbol>";
    case Builtin::True: return "true";
    case Builtin::False: return "false";
    case Builtin::Not: return "~";
    case Builtin::And: return "/\\";
    case Builtin::Or: return "\\/";
    case Builtin::Imp: return "->";
    case Builtin::Iff: return "<->";
    case Builtin::Forall: return "forall";
    case Builtin::Exists: return "exists";
    case Builtin::Eq: return "=";
    case Builtin::Lt: return "<";
    case Builtin::Gt: return ">";
    case Builtin::Le: return "<=";
    case Builtin::Ge: return ">=";
    case Builtin::Add: return "+";
    case Builtin::Mul: return "*";
    case Builtin::Div: return "/";
    case Builtin::At: return "@";
    case Builtin::InState: return "in";
    case Builtin::Nil: return "nil";
    case Builtin::Cons: return "::";
    case Builtin::Member: return "elem";
    case Builtin::Length: return "|.|";
    case Builtin::Remove: return "-";
    case Builtin::Q: return "Q";
  }
  return "?";
}

Expr Expr::sym(std::string name, SourceSpan span) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{Sym{std::move(name), Builtin::None}, std::move(span)}));
}

Expr Expr::builtin(Builtin b, SourceSpan span) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{Sym{builtin_name(b), b}, std::move(span)}));
}

Expr Expr::app(Expr fn, Expr arg, SourceSpan span) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{App{std::move(fn), std::move(arg)}, std::move(span)}));
}

Expr Expr::lam(std::string var, Type type, Expr body, SourceSpan span) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{Lam{std::move(var), std::move(type), std::move(body)}, std::move(span)}));
}

Expr Expr::diamond(Expr action, std::optional<Expr> prob, Expr body, SourceSpan span) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{Diamond{std::move(action), std::move(prob), std::move(body)}, std::move(span)}));
}

Expr Expr::box(Expr action, Expr body, SourceSpan span) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{Box{std::move(action), std::move(body)}, std::move(span)}));
}

Expr Expr::lit(Rational value, SourceSpan span) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{Lit{std::move(value)}, std::move(span)}));
}

Expr Expr::qtrace(std::vector<Expr> actions, std::vector<Expr> props, SourceSpan span) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{QTrace{std::move(actions), std::move(props)}, std::move(span)}));
}

Expr apply(Expr fn, const std::vector<Expr>& args) {
  for (const auto& a : args) fn = Expr::app(std::move(fn), a);
  return fn;
}

Expr mk_true() { return Expr::builtin(Builtin::True); }
Expr mk_false() { return Expr::builtin(Builtin::False); }
Expr mk_not(Expr a) { return Expr::app(Expr::builtin(Builtin::Not), std::move(a)); }
Expr mk_binary(Builtin op, Expr a, Expr b) { return apply(Expr::builtin(op), {std::move(a), std::move(b)}); }
Expr mk_and(Expr a, Expr b) { return mk_binary(Builtin::And, std::move(a), std::move(b)); }
Expr mk_or(Expr a, Expr b) { return mk_binary(Builtin::Or, std::move(a), std::move(b)); }
Expr mk_imp(Expr a, Expr b) { return mk_binary(Builtin::Imp, std::move(a), std::move(b)); }
Expr mk_iff(Expr a, Expr b) { return mk_binary(Builtin::Iff, std::move(a), std::move(b)); }
Expr mk_eq(Expr a, Expr b) { return mk_binary(Builtin::Eq, std::move(a), std::move(b)); }

Expr mk_forall(std::string var, Type type, Expr body) {
  return Expr::app(Expr::builtin(Builtin::Forall), Expr::lam(std::move(var), std::move(type), std::move(body)));
}

Expr mk_exists(std::string var, Type type, Expr body) {
  return Expr::app(Expr::builtin(Builtin::Exists), Expr::lam(std::move(var), std::move(type), std::move(body)));
}

Expr mk_at(Expr state, Expr body) { return mk_binary(Builtin::At, std::move(state), std::move(body)); }

Expr mk_list(const std::vector<Expr>& items) {
  Expr out = Expr::builtin(Builtin::Nil);
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = mk_binary(Builtin::Cons, *it, out);
  return out;
}

Expr mk_q(const std::vector<Expr>& actions, Expr phi) {
  return apply(Expr::builtin(Builtin::Q), {mk_list(actions), std::move(phi)});
}

Expr atom(const std::string& head, const std::vector<std::string>& args) {
  Expr e = Expr::sym(head);
  for (const auto& a : args) e = Expr::app(e, Expr::sym(a));
  return e;
}

Spine spine(const Expr& e) {
  Spine s{&e, {}};
  while (auto* a = s.head->as<App>()) {
    s.args.push_back(&a->arg);
    s.head = &a->fn;
  }
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

std::optional<Builtin> builtin_call(const Expr& e, std::size_t n) {
  const Expr* cur = &e;
  for (std::size_t i = 0; i < n; ++i) {
    auto* a = cur->as<App>();
    if (!a) return std::nullopt;
    cur = &a->fn;
  }
  auto* s = cur->as<Sym>();
  if (!s || s->builtin == Builtin::None || static_cast<std::size_t>(arity(s->builtin)) != n) return std::nullopt;
  return s->builtin;
}

std::optional<std::vector<Expr>> list_items(const Expr& e) {
  std::vector<Expr> items;
  const Expr* cur = &e;
  while (true) {
    if (builtin_call(*cur, 0) == Builtin::Nil) return items;
    if (builtin_call(*cur, 2) != Builtin::Cons) return std::nullopt;
    auto sp = spine(*cur);
    items.push_back(*sp.args[0]);
    cur = sp.args[1];
  }
}

namespace {

// Bound variables are compared by binder depth; free names by spelling.
struct AlphaEq {
  std::vector<std::string> left, right;

  int depth_of(const std::vector<std::string>& scope, const std::string& name) const {
    for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i)
      if (scope[i] == name) return i;
    return -1;
  }

  bool eq(const Expr& a, const Expr& b) {
    if (a.node().v.index() != b.node().v.index()) return false;
    if (auto* x = a.as<Sym>()) {
      auto* y = b.as<Sym>();
      if (x->builtin != y->builtin) return false;
      if (x->builtin != Builtin::None) return true;
      int dx = depth_of(left, x->name), dy = depth_of(right, y->name);
      if (dx != dy) return false;
      return dx >= 0 || x->name == y->name;
    }
    if (auto* x = a.as<App>()) {
      auto* y = b.as<App>();
      return eq(x->fn, y->fn) && eq(x->arg, y->arg);
    }
    if (auto* x = a.as<Lam>()) {
      auto* y = b.as<Lam>();
      if (!(x->type == y->type)) return false;
      left.push_back(x->var);
      right.push_back(y->var);
      bool r = eq(x->body, y->body);
      left.pop_back();
      right.pop_back();
      return r;
    }
    if (auto* x = a.as<Diamond>()) {
      auto* y = b.as<Diamond>();
      if (x->prob.has_value() != y->prob.has_value()) return false;
      if (x->prob && !eq(*x->prob, *y->prob)) return false;
      return eq(x->action, y->action) && eq(x->body, y->body);
    }
    if (auto* x = a.as<Box>()) {
      auto* y = b.as<Box>();
      return eq(x->action, y->action) && eq(x->body, y->body);
    }
    if (auto* x = a.as<Lit>()) return x->value == b.as<Lit>()->value;
    if (auto* x = a.as<QTrace>()) {
      auto* y = b.as<QTrace>();
      if (x->actions.size() != y->actions.size() || x->props.size() != y->props.size()) return false;
      for (std::size_t i = 0; i < x->actions.size(); ++i)
        if (!eq(x->actions[i], y->actions[i])) return false;
      for (std::size_t i = 0; i < x->props.size(); ++i)
        if (!eq(x->props[i], y->props[i])) return false;
      return true;
    }
    return false;
  }
};

void collect_free(const Expr& e, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (auto* s = e.as<Sym>()) {
    if (s->builtin == Builtin::None && std::find(bound.begin(), bound.end(), s->name) == bound.end())
      out.insert(s->name);
  } else if (auto* a = e.as<App>()) {
    collect_free(a->fn, bound, out);
    collect_free(a->arg, bound, out);
  } else if (auto* l = e.as<Lam>()) {
    bound.push_back(l->var);
    collect_free(l->body, bound, out);
    bound.pop_back();
  } else if (auto* d = e.as<Diamond>()) {
    collect_free(d->action, bound, out);
    if (d->prob) collect_free(*d->prob, bound, out);
    collect_free(d->body, bound, out);
  } else if (auto* b = e.as<Box>()) {
    collect_free(b->action, bound, out);
    collect_free(b->body, bound, out);
  } else if (auto* q = e.as<QTrace>()) {
    for (const auto& x : q->actions) collect_free(x, bound, out);
    for (const auto& x : q->props) collect_free(x, bound, out);
  }
}

}  // namespace

bool alpha_equal(const Expr& a, const Expr& b) { return AlphaEq{}.eq(a, b); }

std::set<std::string> free_names(const Expr& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(e, bound, out);
  return out;
}

}  // namespace ptl

namespace ptl {

std::optional<BoundedShape> bounded_shape(Builtin quantifier, const Lam& lam) {
  Builtin conn = quantifier == Builtin::Forall ? Builtin::Imp : Builtin::And;
  if (builtin_call(lam.body, 2) != conn) return std::nullopt;
  auto outer = spine(lam.body);
  const Expr& guard = *outer.args[0];
  if (builtin_call(guard, 2) != Builtin::Member) return std::nullopt;
  auto inner = spine(guard);
  auto* x = inner.args[0]->as<Sym>();
  if (!x || x->builtin != Builtin::None || x->name != lam.var) return std::nullopt;
  if (free_names(*inner.args[1]).count(lam.var)) return std::nullopt;
  return BoundedShape{inner.args[1], outer.args[1]};
}

}  // namespace ptl
