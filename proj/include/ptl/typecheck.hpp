#pragma once

#include <map>
#include <string>

#include "ptl/expr.hpp"
#include "ptl/type.hpp"

namespace ptl {

/// Types of the uninterpreted symbols in scope (objects, states, predicates, actions, definitions).
using TypeEnv = std::map<std::string, Type>;

/// Infers the unique type of `e`. Builtins are instantiated per use; quantifiers over η or
/// function types, and over list types outside the bounded `x ∈ ℓ` form, are rejected.
Type infer_type(const Expr& e, const TypeEnv& env);

/// infer_type, then requires the result to be o.
void check_formula(const Expr& e, const TypeEnv& env);

}  // namespace ptl
