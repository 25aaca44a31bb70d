#pragma once

#include <memory>
#include <string>

namespace ptl {

enum class BaseKind { Bool, Object, Real, State };

/// Simple types over {β, ι, η, μ} with → and List.
///
/// The abbreviations o ≡ μ → β and α ≡ μ → List(μ) are not separate nodes:
/// `Type::prop()` and `Type::action()` build the expanded arrows and equality
/// is structural. Var nodes only appear inside the typechecker while it is
/// resolving polymorphic builtins; no public result ever contains one.
class Type {
 public:
  enum class Kind { Base, Arrow, List, Var };

  static Type base(BaseKind k);
  static Type boolean() { return base(BaseKind::Bool); }
  static Type object() { return base(BaseKind::Object); }
  static Type real() { return base(BaseKind::Real); }
  static Type state() { return base(BaseKind::State); }
  static Type prop();
  static Type action();
  static Type arrow(Type from, Type to);
  static Type list(Type elem);
  static Type var(int id);

  Kind kind() const;
  BaseKind base_kind() const;
  const Type& from() const;
  const Type& to() const;
  const Type& elem() const;
  int var_id() const;

  bool is_base(BaseKind k) const { return kind() == Kind::Base && base_kind() == k; }
  bool is_prop() const;
  bool is_action() const;
  bool has_vars() const;

  friend bool operator==(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// ASCII surface form: bool, obj, real, state, prop, action, [T], A -> B.
std::string to_string(const Type& t);

}  // namespace ptl
