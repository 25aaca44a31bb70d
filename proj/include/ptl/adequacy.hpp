#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ptl/checker.hpp"
#include "ptl/model.hpp"

namespace ptl {

/// A finite probability space given by point masses on its outcomes.
struct ProbabilitySpace {
  std::vector<std::string> outcomes;
  std::vector<Rational> mass;  // parallel to outcomes

  std::size_t index(const std::string& outcome) const;  // throws UnknownOutcome
};

/// Checks distinct outcomes, non-negative masses and a total of exactly 1.
ProbabilitySpace make_space(std::vector<std::string> outcomes, std::vector<Rational> mass);

/// `.pspace` text: an `outcomes: a b c` line and a `mass: a=1/3 b=1/3 c=1/3` line.
ProbabilitySpace parse_space(std::string_view text, const std::string& file = "");
ProbabilitySpace load_space(const std::string& path);
std::string print_space(const ProbabilitySpace& space);

/// Event expressions built from singletons with complement, union and intersection.
class SetExpr {
 public:
  enum class Kind { Singleton, Complement, Union, Intersection };

  static SetExpr singleton(std::string outcome);
  static SetExpr complement(SetExpr e);
  static SetExpr union_of(SetExpr a, SetExpr b);
  static SetExpr intersection(SetExpr a, SetExpr b);

  Kind kind() const { return node_->kind; }
  const std::string& outcome() const { return node_->outcome; }
  const SetExpr& left() const { return node_->kids.at(0); }
  const SetExpr& right() const { return node_->kids.at(1); }
  int depth() const;

  friend bool operator==(const SetExpr& a, const SetExpr& b);

 private:
  struct Node {
    Kind kind;
    std::string outcome;
    std::vector<SetExpr> kids;
  };
  explicit SetExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// `{a}`, `~E`, `E & E`, `E | E`, parentheses. `~` binds tightest, then `&`, then `|`.
SetExpr parse_set_expr(std::string_view text);
std::string to_string(const SetExpr& e);

/// The denoted subset of Ω, as outcome names in space order.
std::vector<std::string> denote(const ProbabilitySpace& space, const SetExpr& e);
/// Bit k set iff outcome k is in the event. Spaces are limited to 64 outcomes.
std::uint64_t denote_mask(const ProbabilitySpace& space, const SetExpr& e);
Rational measure(const ProbabilitySpace& space, const SetExpr& e);

/// The model of the adequacy construction: a fresh initial state, one state per outcome with
/// non-zero mass reached by `action` with that mass, and atom F<k> true exactly at outcome k.
Model translate_space(const ProbabilitySpace& space, const std::string& action = "a");
/// g(E): {w_k} ↦ F<k>, ∪ ↦ ∨, ∩ ↦ ∧, complement ↦ ¬.
Expr translate_event(const ProbabilitySpace& space, const SetExpr& e);

/// All set expressions of depth at most `depth` (singletons have depth 1), by increasing
/// depth. With `dedupe`, only the first expression of each denotation is kept.
std::vector<SetExpr> enumerate_set_exprs(const ProbabilitySpace& space, int depth, bool dedupe = true);

/// measure(E) == Q_a(g(E)) at the initial state of translate_space, for every enumerated E.
CheckReport check_adequacy(const ProbabilitySpace& space, int depth, bool dedupe = true,
                           const std::string& action = "a");

}  // namespace ptl
