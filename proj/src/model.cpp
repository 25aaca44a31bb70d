#include "ptl/model.hpp"

#include <algorithm>

#include "ptl/syntax.hpp"

namespace ptl {

std::string GroundTerm::str() const {
  if (args.empty()) return head;
  std::string out = head + "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i];
  return out + ")";
}

std::optional<std::size_t> Model::find_state(const std::string& name) const {
  auto it = state_index_.find(name);
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Model::state(const std::string& name) const {
  if (auto s = find_state(name)) return *s;
  throw ModelError(ModelError::Code::UnknownState, "unknown state '" + name + "' in model " + spec_.name);
}

std::optional<std::size_t> Model::action_arity(const std::string& name) const {
  auto it = actions_.find(name);
  if (it == actions_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Type>* Model::predicate_args(const std::string& name) const {
  auto it = predicates_.find(name);
  return it == predicates_.end() ? nullptr : &it->second;
}

const Definition* Model::definition(const std::string& name) const {
  auto it = definition_index_.find(name);
  return it == definition_index_.end() ? nullptr : &definitions_[it->second];
}

const std::vector<Successor>& Model::successors(std::size_t state, const GroundAction& action) const {
  static const std::vector<Successor> none;
  auto it = transitions_.find({state, action});
  return it == transitions_.end() ? none : it->second;
}

bool Model::holds(std::size_t state, const GroundAtom& atom) const { return truth_.at(state).count(atom) > 0; }

std::size_t Model::transition_count() const {
  std::size_t n = 0;
  for (const auto& [key, succ] : transitions_) n += succ.size();
  return n;
}

const std::vector<Successor>& successors(const Model& model, std::size_t state, const GroundAction& action) {
  return model.successors(state, action);
}

namespace {

std::string where(const ModelSpec& spec, int line) {
  std::string file = spec.file.empty() ? spec.name : spec.file;
  if (line <= 0) return file.empty() ? "" : file + ": ";
  return (file.empty() ? "line " : file + ":") + std::to_string(line) + ": ";
}

// Splits `A -> B -> prop` into its argument types; nullopt if the result is not o.
std::optional<std::vector<Type>> predicate_shape(Type t) {
  std::vector<Type> args;
  while (!t.is_prop()) {
    if (t.kind() != Type::Kind::Arrow) return std::nullopt;
    args.push_back(t.from());
    t = t.to();
  }
  return args;
}

}  // namespace

Model validate_model(const ModelSpec& spec) {
  using Code = ModelError::Code;
  Model m;
  m.spec_ = spec;

  std::map<std::string, std::string> kinds;  // name -> what declared it
  auto declare = [&](const std::string& name, const char* kind, int line) {
    auto [it, fresh] = kinds.emplace(name, kind);
    if (!fresh)
      throw ModelError(it->second == kind ? Code::DuplicateDeclaration : Code::NameClash,
                       where(spec, line) + "'" + name + "' declared as " + kind + " but already declared as " + it->second);
  };

  if (spec.states.empty()) throw ModelError(Code::UnknownState, where(spec, 0) + "at least one state required");
  for (const auto& s : spec.states) {
    declare(s, "state", 0);
    m.state_index_[s] = m.states_.size();
    m.states_.push_back(s);
    m.signature_.emplace(s, Type::state());
  }
  if (spec.initial) {
    if (!m.find_state(*spec.initial))
      throw ModelError(Code::UnknownState, where(spec, 0) + "initial state '" + *spec.initial + "' is not declared");
    m.initial_ = m.find_state(*spec.initial);
  }

  for (const auto& o : spec.objects) {
    declare(o.name, "object", o.line);
    m.objects_.push_back(o.name);
    m.object_set_.insert(o.name);
    m.signature_.emplace(o.name, Type::object());
  }

  for (const auto& a : spec.actions) {
    declare(a.name, "action", a.line);
    m.actions_[a.name] = a.arity;
    Type t = Type::action();
    for (std::size_t i = 0; i < a.arity; ++i) t = Type::arrow(Type::object(), t);
    m.signature_.emplace(a.name, t);
  }

  // Sort predicates introduced by object declarations.
  std::vector<std::string> sorts;
  for (const auto& o : spec.objects)
    for (const auto& s : o.sorts)
      if (std::find(sorts.begin(), sorts.end(), s) == sorts.end()) sorts.push_back(s);

  for (const auto& d : spec.symbols) {
    if (!d.definition.empty()) continue;
    declare(d.name, "predicate", d.line);
    auto shape = predicate_shape(d.type);
    if (!shape)
      throw ModelError(Code::UnknownPredicate, where(spec, d.line) + "'" + d.name + "' has type " + to_string(d.type) +
                                                   "; only predicates (types ending in prop) may be declared "
                                                   "without a definition");
    for (const auto& arg : *shape)
      if (!arg.is_base(BaseKind::Object) && !arg.is_base(BaseKind::State))
        throw ModelError(Code::UnknownPredicate,
                         where(spec, d.line) + "predicate '" + d.name + "' may only take obj or state arguments");
    m.predicates_[d.name] = *shape;
    m.signature_.emplace(d.name, d.type);
  }
  for (const auto& s : sorts) {
    auto it = m.predicates_.find(s);
    if (it != m.predicates_.end()) {
      if (it->second.size() != 1 || !it->second[0].is_base(BaseKind::Object))
        throw ModelError(Code::NameClash, where(spec, 0) + "sort '" + s + "' is declared with a non-sort type");
      continue;
    }
    declare(s, "sort", 0);
    m.predicates_[s] = {Type::object()};
    m.signature_.emplace(s, Type::arrow(Type::object(), Type::prop()));
  }
  // Definitions see every declaration plus the definitions above them.
  for (const auto& d : spec.symbols) {
    if (d.definition.empty()) continue;
    declare(d.name, "definition", d.line);
    Expr body = read_expr(d.definition, m.signature_, TextOrigin{spec.file, d.line, 1});
    Type found = infer_type(body, m.signature_);
    if (!(found == d.type))
      throw TypeError(TypeError::Code::Mismatch, body.span(),
                      "definition '" + d.name + "': expected " + to_string(d.type) + ", found " + to_string(found));
    m.definition_index_[d.name] = m.definitions_.size();
    m.definitions_.push_back(Definition{d.name, d.type, body});
    m.signature_.emplace(d.name, d.type);
  }

  auto check_state = [&](const std::string& s, int line) -> std::size_t {
    if (auto i = m.find_state(s)) return *i;
    throw ModelError(Code::UnknownState, where(spec, line) + "unknown state '" + s + "'");
  };
  auto check_args = [&](const GroundTerm& t, const std::vector<Type>& types, int line, const char* what) {
    if (t.args.size() != types.size())
      throw ModelError(what[0] == 'a' ? Code::UnknownAction : Code::UnknownPredicate,
                       where(spec, line) + what + " '" + t.head + "' takes " + std::to_string(types.size()) +
                           " argument(s), got " + std::to_string(t.args.size()));
    for (std::size_t i = 0; i < types.size(); ++i) {
      bool ok = types[i].is_base(BaseKind::State) ? m.find_state(t.args[i]).has_value() : m.is_object(t.args[i]);
      if (!ok)
        throw ModelError(types[i].is_base(BaseKind::State) ? Code::UnknownState : Code::UnknownObject,
                         where(spec, line) + "unknown " + (types[i].is_base(BaseKind::State) ? "state" : "object") +
                             " '" + t.args[i] + "' in " + t.str());
    }
  };

  std::map<std::pair<std::size_t, GroundAction>, int> first_line;
  std::set<GroundAction> seen_actions;
  for (const auto& t : spec.transitions) {
    auto arity = m.action_arity(t.action.head);
    if (!arity) throw ModelError(Code::UnknownAction, where(spec, t.line) + "unknown action '" + t.action.head + "'");
    check_args(t.action, std::vector<Type>(*arity, Type::object()), t.line, "action");
    std::size_t target = check_state(t.target, t.line);
    if (t.probability <= 0 || t.probability > 1)
      throw ModelError(Code::ProbabilityRange,
                       where(spec, t.line) + "probability " + to_string(t.probability) + " of " + t.source + " --" +
                           t.action.str() + "--> " + t.target +
                           (t.probability == 0 ? " is zero; zero-probability transitions are not allowed"
                                               : " is outside (0, 1]"),
                       t.probability);
    std::vector<std::size_t> sources;
    if (t.source == "*") {
      for (std::size_t i = 0; i < m.states_.size(); ++i) sources.push_back(i);
    } else {
      sources.push_back(check_state(t.source, t.line));
    }
    for (std::size_t s : sources) {
      auto key = std::make_pair(s, t.action);
      auto& succ = m.transitions_[key];
      first_line.emplace(key, t.line);
      for (const auto& existing : succ)
        if (existing.state == target)
          throw ModelError(Code::DuplicateTransition, where(spec, t.line) + "duplicate transition " + m.states_[s] +
                                                          " --" + t.action.str() + "--> " + t.target);
      succ.push_back(Successor{target, t.probability});
    }
    if (seen_actions.insert(t.action).second) m.ground_actions_.push_back(t.action);
  }
  for (const auto& [key, succ] : m.transitions_) {
    Rational sum = 0;
    for (const auto& s : succ) sum += s.probability;
    if (sum != 1)
      throw ModelError(Code::ProbabilitySum,
                       where(spec, first_line[key]) + "transition probabilities at (" + m.states_[key.first] + ", " +
                           key.second.str() + "): probabilities sum to " + to_string(sum) + ", not 1",
                       sum);
  }

  m.truth_.assign(m.states_.size(), {});
  std::set<GroundAtom> seen_atoms;
  auto make_true = [&](std::size_t s, const GroundAtom& a) {
    m.truth_[s].insert(a);
    if (seen_atoms.insert(a).second) m.ground_atoms_.push_back(a);
  };
  for (const auto& o : spec.objects)
    for (const auto& sort : o.sorts)
      for (std::size_t s = 0; s < m.states_.size(); ++s) make_true(s, GroundAtom{sort, {o.name}});
  for (const auto& v : spec.valuation) {
    std::vector<std::size_t> targets;
    if (v.state == "*") {
      for (std::size_t i = 0; i < m.states_.size(); ++i) targets.push_back(i);
    } else {
      targets.push_back(check_state(v.state, v.line));
    }
    for (const auto& atom : v.atoms) {
      const auto* args = m.predicate_args(atom.head);
      if (!args) throw ModelError(Code::UnknownPredicate, where(spec, v.line) + "unknown predicate '" + atom.head + "'");
      check_args(atom, *args, v.line, "predicate");
      for (std::size_t s : targets) make_true(s, atom);
    }
  }
  return m;
}

}  // namespace ptl
