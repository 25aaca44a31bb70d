#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptl/expr.hpp"
#include "ptl/model.hpp"

namespace ptl {

struct Value;

struct ObjectRef {
  std::string name;
  bool operator==(const ObjectRef&) const = default;
};

struct StateRef {
  std::size_t index;
  bool operator==(const StateRef&) const = default;
};

struct ListValue {
  std::vector<Value> items;
};

/// A finite function. `param` is the argument type, used when a quantifier enumerates it.
struct FuncValue {
  Type param;
  std::function<Value(const Value&)> fn;
};

/// Result of evaluating an expression at a state. Type o evaluates to bool at that state.
struct Value {
  std::variant<bool, Rational, ObjectRef, StateRef, ListValue, FuncValue, GroundAction> v;

  bool as_bool() const;
  const Rational& as_rational() const;
  std::size_t as_state() const;
  const ListValue& as_list() const;
  const FuncValue& as_func() const;
  const GroundAction& as_action() const;
};

/// Structural equality; functions are not comparable and throw.
bool operator==(const Value& a, const Value& b);
std::string to_string(const Value& v, const Model& model);

/// Persistent variable environment, innermost binding first.
class Env {
 public:
  Env() = default;
  Env bind(std::string name, Value value) const;
  /// Binds a value of a type ending in prop, read at whichever state the variable is used.
  Env bind_intension(std::string name, std::function<Value(std::size_t)> at) const;
  /// The value of `name` as read at `state`, or nothing when unbound.
  std::optional<Value> lookup(const std::string& name, std::size_t state) const;

 private:
  struct Node {
    std::string name;
    Value value;
    std::function<Value(std::size_t)> at;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

Value eval(const Model& model, std::size_t state, const Expr& e, const Env& env = {});
bool eval_formula(const Model& model, std::size_t state, const Expr& e, const Env& env = {});
Rational eval_number(const Model& model, std::size_t state, const Expr& e, const Env& env = {});

/// Q_{a1::...::an}(φ). Actions are evaluated at the state where they are taken.
Rational eval_q(const Model& model, std::size_t state, const std::vector<Expr>& actions, const Expr& phi,
                const Env& env = {});
Rational eval_q(const Model& model, std::size_t state, const std::vector<GroundAction>& actions, const Expr& phi,
                const Env& env = {});

/// Probability that props[i] holds right after actions[i], for every i.
Rational eval_q_trace(const Model& model, std::size_t state, const std::vector<Expr>& actions,
                      const std::vector<Expr>& props, const Env& env = {});
Rational eval_q_trace(const Model& model, std::size_t state, const std::vector<GroundAction>& actions,
                      const std::vector<Expr>& props, const Env& env = {});

/// Evaluates a ground action expression such as `toss(c)`.
GroundAction eval_action(const Model& model, std::size_t state, const Expr& e, const Env& env = {});

/// Elements a quantifier of binder type `t` ranges over.
std::vector<Value> enumerate_domain(const Model& model, const Type& t);

}  // namespace ptl
