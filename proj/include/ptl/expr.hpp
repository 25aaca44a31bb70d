#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ptl/error.hpp"
#include "ptl/rational.hpp"
#include "ptl/type.hpp"

namespace ptl {

/// Interpreted symbols. `None` marks an uninterpreted symbol or a bound variable.
enum class Builtin {
  None,
  True, False, Not, And, Or, Imp, Iff,  // propositional
  Forall, Exists,                       // quantifiers, instance type carried by the argument
  Eq, Lt, Gt, Le, Ge,                   // relations
  Add, Mul, Div,                        // arithmetic functions
  At, InState,                          // hybrid
  Nil, Cons, Member, Length, Remove,    // lists
  Q,                                    // probability operator
};

int arity(Builtin b);
const char* builtin_name(Builtin b);

class Expr;
struct ExprNode;

/// Immutable, shared term. Copies are cheap.
class Expr {
 public:
  static Expr sym(std::string name, SourceSpan span = {});
  static Expr builtin(Builtin b, SourceSpan span = {});
  static Expr app(Expr fn, Expr arg, SourceSpan span = {});
  static Expr lam(std::string var, Type type, Expr body, SourceSpan span = {});
  static Expr diamond(Expr action, std::optional<Expr> prob, Expr body, SourceSpan span = {});
  static Expr box(Expr action, Expr body, SourceSpan span = {});
  static Expr lit(Rational value, SourceSpan span = {});
  static Expr qtrace(std::vector<Expr> actions, std::vector<Expr> props, SourceSpan span = {});

  const ExprNode& node() const { return *node_; }
  template <class T>
  const T* as() const;
  const SourceSpan& span() const;

  /// Identity of the underlying node, for caches.
  const void* id() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct Sym {
  std::string name;
  Builtin builtin = Builtin::None;
};

struct App {
  Expr fn;
  Expr arg;
};

struct Lam {
  std::string var;
  Type type;
  Expr body;
};

/// ◇ᵖₐφ when `prob` is set, otherwise the unannotated ◇ₐφ ("some a-successor satisfies φ").
struct Diamond {
  Expr action;
  std::optional<Expr> prob;
  Expr body;
};

struct Box {
  Expr action;
  Expr body;
};

/// Rational literal, lowest terms by construction.
struct Lit {
  Rational value;
};

/// Q over a proposition list: probability that props[i] holds right after actions[i], for all i.
struct QTrace {
  std::vector<Expr> actions;
  std::vector<Expr> props;
};

struct ExprNode {
  std::variant<Sym, App, Lam, Diamond, Box, Lit, QTrace> v;
  SourceSpan span;
};

template <class T>
const T* Expr::as() const {
  return std::get_if<T>(&node_->v);
}

inline const SourceSpan& Expr::span() const { return node_->span; }

// Builders for the usual shapes.
Expr apply(Expr fn, const std::vector<Expr>& args);
Expr mk_true();
Expr mk_false();
Expr mk_not(Expr a);
Expr mk_and(Expr a, Expr b);
Expr mk_or(Expr a, Expr b);
Expr mk_imp(Expr a, Expr b);
Expr mk_iff(Expr a, Expr b);
Expr mk_eq(Expr a, Expr b);
Expr mk_binary(Builtin op, Expr a, Expr b);
Expr mk_forall(std::string var, Type type, Expr body);
Expr mk_exists(std::string var, Type type, Expr body);
Expr mk_at(Expr state, Expr body);
Expr mk_list(const std::vector<Expr>& items);
/// Q_{a1::...::an::nil}(φ)
Expr mk_q(const std::vector<Expr>& actions, Expr phi);
/// Applies a named symbol to named symbols, e.g. atom("heads", {"c"}).
Expr atom(const std::string& head, const std::vector<std::string>& args = {});

/// Head and arguments of a left-nested application chain.
struct Spine {
  const Expr* head;
  std::vector<const Expr*> args;
};
Spine spine(const Expr& e);

/// Builtin head of `e` applied to exactly `n` arguments, if that is its shape.
std::optional<Builtin> builtin_call(const Expr& e, std::size_t n);

/// If `e` is a literal `a1 :: ... :: an :: nil`, its items.
std::optional<std::vector<Expr>> list_items(const Expr& e);

/// Structural equality up to renaming of bound variables. Spans are ignored.
bool alpha_equal(const Expr& a, const Expr& b);

/// Names of uninterpreted symbols not bound inside `e`.
std::set<std::string> free_names(const Expr& e);

}  // namespace ptl

namespace ptl {

/// ∀x.(x ∈ ℓ) → H  or  ∃x.(x ∈ ℓ) ∧ H  with x not free in ℓ.
struct BoundedShape {
  const Expr* list;
  const Expr* body;
};
std::optional<BoundedShape> bounded_shape(Builtin quantifier, const Lam& lam);

}  // namespace ptl
