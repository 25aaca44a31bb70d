#include "ptl/syntax.hpp"

namespace ptl {
namespace {

using Kind = SurfaceExpr::Kind;

class Desugarer {
 public:
  explicit Desugarer(const TypeEnv& env) : env_(env) {}

  Expr run(const SurfaceExpr& s) {
    const SourceSpan& span = s.span;
    switch (s.kind) {
      case Kind::Ident: return Expr::sym(s.name, span);
      case Kind::Number: return Expr::lit(s.number, span);
      case Kind::Builtin: return Expr::builtin(s.op, span);
      case Kind::Call: {
        Expr e = run(s.kids[0]);
        for (std::size_t i = 1; i < s.kids.size(); ++i) e = Expr::app(e, run(s.kids[i]), span);
        return e;
      }
      case Kind::Lambda: return Expr::lam(s.name, *s.type, bound(s.name, *s.type, s.kids[0]), span);
      case Kind::Quant:
        return Expr::app(Expr::builtin(s.op, span), Expr::lam(s.name, *s.type, bound(s.name, *s.type, s.kids[0]), span),
                         span);
      case Kind::QuantGuard: {
        Type guard_type = type_in_scope(Expr::sym(s.guard, span));
        if (guard_type.kind() != Type::Kind::Arrow || !guard_type.to().is_prop())
          throw TypeError(TypeError::Code::Mismatch, span,
                          "guard '" + s.guard + "' must be a predicate, found type " + to_string(guard_type));
        Type binder = guard_type.from();
        Expr guard = Expr::app(Expr::sym(s.guard, span), Expr::sym(s.name, span), span);
        return quantify(s, binder, guard);
      }
      case Kind::QuantIn: {
        Expr list = run(s.kids[0]);
        Type list_type = type_in_scope(list);
        if (list_type.kind() != Type::Kind::List)
          throw TypeError(TypeError::Code::Mismatch, s.kids[0].span,
                          "bounded quantifier needs a list, found type " + to_string(list_type));
        Expr guard = mk_binary(Builtin::Member, Expr::sym(s.name, span), list);
        return quantify(s, list_type.elem(), guard);
      }
      case Kind::Unary: return Expr::app(Expr::builtin(s.op, span), run(s.kids[0]), span);
      case Kind::Binary:
        return Expr::app(Expr::app(Expr::builtin(s.op, span), run(s.kids[0]), span), run(s.kids[1]), span);
      case Kind::NotEqual:
        return Expr::app(Expr::builtin(Builtin::Not, span),
                         Expr::app(Expr::app(Expr::builtin(Builtin::Eq, span), run(s.kids[0]), span), run(s.kids[1]), span),
                         span);
      case Kind::Diamond: return Expr::diamond(run(s.kids[0]), std::nullopt, run(s.kids[1]), span);
      case Kind::DiamondAnn: return Expr::diamond(run(s.kids[0]), run(s.kids[1]), run(s.kids[2]), span);
      case Kind::Box: return Expr::box(run(s.kids[0]), run(s.kids[1]), span);
      case Kind::At:
        return Expr::app(Expr::app(Expr::builtin(Builtin::At, span), run(s.kids[0]), span), run(s.kids[1]), span);
      case Kind::InState: return Expr::app(Expr::builtin(Builtin::InState, span), run(s.kids[0]), span);
      case Kind::Length: return Expr::app(Expr::builtin(Builtin::Length, span), run(s.kids[0]), span);
      case Kind::Q: {
        std::vector<Expr> actions;
        for (std::size_t i = 0; i < s.actions; ++i) actions.push_back(run(s.kids[i]));
        Expr list = Expr::builtin(Builtin::Nil, span);
        for (auto it = actions.rbegin(); it != actions.rend(); ++it)
          list = Expr::app(Expr::app(Expr::builtin(Builtin::Cons, span), *it, span), list, span);
        return Expr::app(Expr::app(Expr::builtin(Builtin::Q, span), list, span), run(s.kids[s.actions]), span);
      }
      case Kind::QTrace: {
        std::vector<Expr> actions, props;
        for (std::size_t i = 0; i < s.kids.size(); ++i) (i < s.actions ? actions : props).push_back(run(s.kids[i]));
        return Expr::qtrace(std::move(actions), std::move(props), span);
      }
    }
    throw TypeError(TypeError::Code::Mismatch, span, "unknown syntax node");
  }

 private:
  const TypeEnv& env_;
  std::vector<std::pair<std::string, Type>> scope_;

  Expr bound(const std::string& var, const Type& type, const SurfaceExpr& body) {
    scope_.emplace_back(var, type);
    Expr e = run(body);
    scope_.pop_back();
    return e;
  }

  Expr quantify(const SurfaceExpr& s, const Type& binder, const Expr& guard) {
    const SourceSpan& span = s.span;
    Expr body = bound(s.name, binder, s.kids.back());
    Builtin conn = s.op == Builtin::Forall ? Builtin::Imp : Builtin::And;
    Expr matrix = Expr::app(Expr::app(Expr::builtin(conn, span), guard, span), body, span);
    return Expr::app(Expr::builtin(s.op, span), Expr::lam(s.name, binder, matrix, span), span);
  }

  Type type_in_scope(const Expr& e) const {
    TypeEnv local = env_;
    for (const auto& [name, type] : scope_) local.insert_or_assign(name, type);
    return infer_type(e, local);
  }
};

}  // namespace

Expr desugar(const SurfaceExpr& s, const TypeEnv& env) { return Desugarer(env).run(s); }

Expr read_expr(std::string_view text, const TypeEnv& env, const TextOrigin& origin) {
  Expr e = desugar(parse_formula(text, origin), env);
  infer_type(e, env);
  return e;
}

Expr read_formula(std::string_view text, const TypeEnv& env, const TextOrigin& origin) {
  Expr e = desugar(parse_formula(text, origin), env);
  check_formula(e, env);
  return e;
}

}  // namespace ptl
