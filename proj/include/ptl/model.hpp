#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ptl/expr.hpp"
#include "ptl/rational.hpp"
#include "ptl/typecheck.hpp"

namespace ptl {

/// A symbol applied to object (or state) names: `toss(c)`, `p(d1)`, `o`, `heads(c)`.
struct GroundTerm {
  std::string head;
  std::vector<std::string> args;

  std::string str() const;
  friend auto operator<=>(const GroundTerm&, const GroundTerm&) = default;
  friend bool operator==(const GroundTerm&, const GroundTerm&) = default;
};

using GroundAction = GroundTerm;
using GroundAtom = GroundTerm;

/// Parses `name` or `name(a, b)`.
GroundTerm parse_ground_term(std::string_view text);

// Declarative description of a model, as read from a `.ptlm` file. The `line` fields are
// diagnostics only and do not take part in equality.

struct SymbolDecl {
  std::string name;
  Type type = Type::boolean();
  std::string definition;  // empty unless `name : T := expr`
  int line = 0;
  bool operator==(const SymbolDecl& o) const {
    return name == o.name && type == o.type && definition == o.definition;
  }
};

struct ObjectDecl {
  std::string name;
  std::vector<std::string> sorts;
  int line = 0;
  bool operator==(const ObjectDecl& o) const { return name == o.name && sorts == o.sorts; }
};

struct ActionDecl {
  std::string name;
  std::size_t arity = 0;
  int line = 0;
  bool operator==(const ActionDecl& o) const { return name == o.name && arity == o.arity; }
};

struct TransitionDecl {
  std::string source;  // "*" for every state
  GroundAction action;
  std::string target;
  Rational probability;
  int line = 0;
  bool operator==(const TransitionDecl& o) const {
    return source == o.source && action == o.action && target == o.target && probability == o.probability;
  }
};

struct ValuationDecl {
  std::string state;  // "*" for every state
  std::vector<GroundAtom> atoms;
  int line = 0;
  bool operator==(const ValuationDecl& o) const { return state == o.state && atoms == o.atoms; }
};

struct ModelSpec {
  std::string name;
  std::string file;
  std::vector<SymbolDecl> symbols;
  std::vector<ObjectDecl> objects;
  std::vector<std::string> states;
  std::optional<std::string> initial;
  std::vector<ActionDecl> actions;
  std::vector<TransitionDecl> transitions;
  std::vector<ValuationDecl> valuation;

  bool operator==(const ModelSpec& o) const {
    return symbols == o.symbols && objects == o.objects && states == o.states && initial == o.initial &&
           actions == o.actions && transitions == o.transitions && valuation == o.valuation;
  }
};

ModelSpec parse_model(std::string_view text, const std::string& file = "");
/// Canonical `.ptlm` text; parse_model(print_model(s)) == s.
std::string print_model(const ModelSpec& spec);

struct Successor {
  std::size_t state;
  Rational probability;
};

/// A named closed abbreviation, evaluated in place at the current state.
struct Definition {
  std::string name;
  Type type;
  Expr body;
};

/// A validated finite probabilistic labeled model. Immutable.
class Model {
 public:
  const std::string& name() const { return spec_.name; }
  const ModelSpec& spec() const { return spec_; }

  const std::vector<std::string>& states() const { return states_; }
  std::optional<std::size_t> find_state(const std::string& name) const;
  std::size_t state(const std::string& name) const;  // throws UnknownState
  std::optional<std::size_t> initial() const { return initial_; }

  const std::vector<std::string>& objects() const { return objects_; }
  bool is_object(const std::string& name) const { return object_set_.count(name) > 0; }

  /// Argument count of an action symbol, or nullopt if not an action.
  std::optional<std::size_t> action_arity(const std::string& name) const;
  /// Argument types of a predicate symbol, or nullopt if not a predicate.
  const std::vector<Type>* predicate_args(const std::string& name) const;
  const Definition* definition(const std::string& name) const;
  const std::vector<Definition>& definitions() const { return definitions_; }

  /// Types of every uninterpreted symbol: states, objects, actions, predicates, definitions.
  const TypeEnv& signature() const { return signature_; }

  /// Declaration-ordered successors; empty when the action is not enabled.
  const std::vector<Successor>& successors(std::size_t state, const GroundAction& action) const;
  bool enabled(std::size_t state, const GroundAction& action) const { return !successors(state, action).empty(); }

  /// Closed-world truth of a ground atom.
  bool holds(std::size_t state, const GroundAtom& atom) const;

  /// Every ground action with at least one transition, in declaration order.
  const std::vector<GroundAction>& ground_actions() const { return ground_actions_; }
  /// Every ground atom true at some state, in order of first appearance.
  const std::vector<GroundAtom>& ground_atoms() const { return ground_atoms_; }
  std::size_t transition_count() const;

  friend Model validate_model(const ModelSpec& spec);

 private:
  ModelSpec spec_;
  std::vector<std::string> states_;
  std::map<std::string, std::size_t> state_index_;
  std::optional<std::size_t> initial_;
  std::vector<std::string> objects_;
  std::set<std::string> object_set_;
  std::map<std::string, std::size_t> actions_;
  std::map<std::string, std::vector<Type>> predicates_;
  std::vector<Definition> definitions_;
  std::map<std::string, std::size_t> definition_index_;
  TypeEnv signature_;
  std::map<std::pair<std::size_t, GroundAction>, std::vector<Successor>> transitions_;
  std::vector<std::set<GroundAtom>> truth_;
  std::vector<GroundAction> ground_actions_;
  std::vector<GroundAtom> ground_atoms_;
};

/// Checks every frame and model invariant. Throws ModelError (or TypeError for definitions).
Model validate_model(const ModelSpec& spec);

/// Free-function form of Model::successors.
const std::vector<Successor>& successors(const Model& model, std::size_t state, const GroundAction& action);

/// Reads, parses and validates a `.ptlm` file. The model is named after the file stem.
Model load_model(const std::string& path);
std::string read_file(const std::string& path);

}  // namespace ptl
