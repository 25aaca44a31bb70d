#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptl/eval.hpp"
#include "ptl/model.hpp"
#include "ptl/syntax.hpp"

namespace ptl {

enum class Verdict { Satisfied, Violated, Error };
const char* to_string(Verdict v);

/// Where a check failed (or, for existential successes, where it was witnessed).
struct Witness {
  std::string model;
  std::string state;
  /// Steps taken to reach `state`, e.g. "@s0", "box[h] -> c1", "x := c1p1o3".
  std::vector<std::string> trail;

  bool operator==(const Witness&) const = default;
};

struct NamedValue {
  std::string name;
  Rational value;

  bool operator==(const NamedValue&) const = default;
};

struct CheckReport {
  Verdict verdict = Verdict::Error;
  std::optional<Witness> witness;
  /// The Q-side value when the checked formula compares a Q-term.
  std::optional<Rational> numeric;
  std::string summary;
  std::vector<std::string> warnings;
  std::vector<NamedValue> values;

  bool operator==(const CheckReport&) const = default;
};

/// Human-readable report. With `decimal`, rationals get an approximate decimal comment.
std::string format_report(const CheckReport& r, bool decimal = false);
/// Structured report: {"verdict", "witness", "numeric", "summary", "warnings", "values"}.
/// Rationals are written as "num/den" strings.
std::string report_to_json(const CheckReport& r);
CheckReport report_from_json(std::string_view text);

/// Closed formulas checked together, e.g. the axioms of a problem.
struct Theory {
  std::string name;
  std::vector<NamedFormula> axioms;
};

/// Reads a `.ptl` file as a theory named after the file stem.
Theory load_theory(const std::string& path);

/// Desugars and typechecks a surface formula against the model's signature.
Expr formula_for(const Model& model, const SurfaceExpr& s);

/// M, w ⊨ φ. Evaluation errors become verdict Error; type errors are thrown.
CheckReport satisfies(const Model& model, std::size_t state, const Expr& formula);
/// M ⊨ φ: φ at every state; the first violating state (declaration order) is the witness.
CheckReport globally_satisfies(const Model& model, const Expr& formula);

/// Entailment relative to a finite model family: every model that globally satisfies the
/// theory must globally satisfy the conclusion.
CheckReport entails(const std::vector<Model>& models, const Theory& theory, const SurfaceExpr& conclusion);

/// Independent(a, b) over a finite proposition family: every b-transition preserves Q_a(φ).
/// Without `props`, the family is every ground atom that is true somewhere.
CheckReport check_independent(const Model& model, const GroundAction& a, const GroundAction& b,
                              std::optional<std::vector<Expr>> props = std::nullopt);

/// Q_{a1..an}(φ1..φn) = Π Q_{ai}(φi) at `state` (default: the initial state).
/// With a single action and several propositions, compares Q_a(φ1 ∧ ... ∧ φn) with Π Q_a(φi)
/// instead and warns that equality between events of one action is coincidental.
CheckReport check_shortcut(const Model& model, const std::vector<GroundAction>& actions,
                           const std::vector<Expr>& props, std::optional<std::size_t> state = std::nullopt);

}  // namespace ptl
