#include "ptl/type.hpp"

#include <cassert>
#include <optional>

namespace ptl {

struct Type::Node {
  Kind kind;
  BaseKind base = BaseKind::Bool;
  int var = 0;
  std::optional<Type> a;
  std::optional<Type> b;
};


Type Type::base(BaseKind k) {
  static const Type cache[] = {
      Type(std::make_shared<const Node>(Node{Kind::Base, BaseKind::Bool, 0, {}, {}})),
      Type(std::make_shared<const Node>(Node{Kind::Base, BaseKind::Object, 0, {}, {}})),
      Type(std::make_shared<const Node>(Node{Kind::Base, BaseKind::Real, 0, {}, {}})),
      Type(std::make_shared<const Node>(Node{Kind::Base, BaseKind::State, 0, {}, {}})),
  };
  return cache[static_cast<int>(k)];
}

Type Type::prop() {
  static const Type t = arrow(state(), boolean());
  return t;
}

Type Type::action() {
  static const Type t = arrow(state(), list(state()));
  return t;
}

Type Type::arrow(Type from, Type to) {
  return Type(std::make_shared<const Node>(Node{Kind::Arrow, BaseKind::Bool, 0, std::move(from), std::move(to)}));
}

Type Type::list(Type elem) {
  return Type(std::make_shared<const Node>(Node{Kind::List, BaseKind::Bool, 0, std::move(elem), {}}));
}

Type Type::var(int id) {
  return Type(std::make_shared<const Node>(Node{Kind::Var, BaseKind::Bool, id, {}, {}}));
}

Type::Kind Type::kind() const { return node_->kind; }
BaseKind Type::base_kind() const { return node_->base; }
const Type& Type::from() const {
  assert(kind() == Kind::Arrow);
  return *node_->a;
}
const Type& Type::to() const {
  assert(kind() == Kind::Arrow);
  return *node_->b;
}
const Type& Type::elem() const {
  assert(kind() == Kind::List);
  return *node_->a;
}
int Type::var_id() const { return node_->var; }

bool Type::is_prop() const { return *this == prop(); }
bool Type::is_action() const { return *this == action(); }

bool Type::has_vars() const {
  switch (kind()) {
    case Kind::Var: return true;
    case Kind::Base: return false;
    case Kind::List: return elem().has_vars();
    case Kind::Arrow: return from().has_vars() || to().has_vars();
  }
  return false;
}

bool operator==(const Type& x, const Type& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Type::Kind::Base: return x.base_kind() == y.base_kind();
    case Type::Kind::Var: return x.var_id() == y.var_id();
    case Type::Kind::List: return x.elem() == y.elem();
    case Type::Kind::Arrow: return x.from() == y.from() && x.to() == y.to();
  }
  return false;
}

std::string to_string(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Base:
      switch (t.base_kind()) {
        case BaseKind::Bool: return "bool";
        case BaseKind::Object: return "obj";
        case BaseKind::Real: return "real";
        case BaseKind::State: return "state";
      }
      break;
    case Type::Kind::Var: return "'t" + std::to_string(t.var_id());
    case Type::Kind::List: return "[" + to_string(t.elem()) + "]";
    case Type::Kind::Arrow: {
      if (t.is_prop()) return "prop";
      if (t.is_action()) return "action";
      std::string lhs = to_string(t.from());
      if (t.from().kind() == Type::Kind::Arrow && !t.from().is_prop() && !t.from().is_action())
        lhs = "(" + lhs + ")";
      return lhs + " -> " + to_string(t.to());
    }
  }
  return "?";
}

}  // namespace ptl
