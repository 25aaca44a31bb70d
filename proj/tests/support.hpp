#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ptl/adequacy.hpp"
#include "ptl/checker.hpp"
#include "ptl/eval.hpp"
#include "ptl/model.hpp"
#include "ptl/syntax.hpp"

namespace ptl::testing {

std::string corpus_path(const std::string& rel);
Model corpus_model(const std::string& stem);

/// A shipped formula file together with the models it is written against.
struct FormulaSuite {
  std::string file;
  std::vector<std::string> models;
};
std::vector<FormulaSuite> formula_suites();
std::vector<std::string> valid_model_stems();

Expr formula_def(const Model& m, const std::string& file_stem, const std::string& name);
Expr ground_expr(const GroundTerm& t);

// Oracles that read the transition table of a ModelSpec directly instead of going through Model.

/// (target, probability) pairs of (state, action), expanding `*` sources.
std::vector<std::pair<std::string, Rational>> spec_successors(const ModelSpec& spec, const std::string& state,
                                                              const GroundAction& action);
/// Σ ρ·[φ at target] over the successors.
Rational oracle_q(const Model& m, std::size_t state, const GroundAction& a, const Expr& phi);
/// Exhaustive enumeration of the trace tree.
Rational oracle_trace(const Model& m, std::size_t state, const std::vector<GroundAction>& actions,
                      const std::vector<Expr>& props);

// Generators.

/// A random valid model: every ground action is enabled at every state.
ModelSpec random_spec(std::mt19937& rng);
/// A random formula over the ground atoms, definitions and ground actions of `m`.
Expr random_formula(const Model& m, std::mt19937& rng, int depth);
/// Random point masses summing to 1 over `n` outcomes named w1..wn; some may be 0.
ProbabilitySpace random_space(std::mt19937& rng, std::size_t n);
Rational random_probability(std::mt19937& rng);

}  // namespace ptl::testing
