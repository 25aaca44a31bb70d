#include "ptl/syntax.hpp"

namespace ptl {
namespace {

// Binding strength, loosest first.
enum Level {
  kBinder = 1,
  kIff,
  kImp,
  kOr,
  kAnd,
  kPrefix,
  kRel,
  kCons,
  kAdd,
  kMul,
  kPostfix,
  kAtom,
};

struct Printed {
  std::string text;
  int level;
};

const char* section_text(Builtin b) {
  switch (b) {
    case Builtin::Member: return "in";
    case Builtin::InState: return "@in";
    default: return builtin_name(b);
  }
}

const char* infix_text(Builtin b) {
  switch (b) {
    case Builtin::Member: return "in";
    default: return builtin_name(b);
  }
}

Printed print(const Expr& e);

std::string wrap(const Expr& e, int required) {
  Printed p = print(e);
  return p.level < required ? "(" + p.text + ")" : p.text;
}

std::string top(const Expr& e) { return print(e).text; }

std::string join(const std::vector<Expr>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += top(items[i]);
  }
  return out;
}

std::optional<Printed> print_builtin_call(const Expr& e) {
  auto sp = spine(e);
  auto* head = sp.head->as<Sym>();
  if (!head || head->builtin == Builtin::None) return std::nullopt;
  Builtin b = head->builtin;
  if (sp.args.size() != static_cast<std::size_t>(arity(b)) || sp.args.empty()) return std::nullopt;
  const Expr& a = *sp.args[0];
  auto infix = [&](int left, int right, int level) {
    return Printed{wrap(a, left) + " " + infix_text(b) + " " + wrap(*sp.args[1], right), level};
  };
  switch (b) {
    case Builtin::Not: return Printed{"~" + wrap(a, kPrefix), kPrefix};
    case Builtin::Iff: return infix(kIff, kImp, kIff);
    case Builtin::Imp: return infix(kOr, kImp, kImp);
    case Builtin::Or: return infix(kOr, kAnd, kOr);
    case Builtin::And: return infix(kAnd, kPrefix, kAnd);
    case Builtin::Forall:
    case Builtin::Exists: {
      auto* lam = a.as<Lam>();
      if (!lam) return std::nullopt;
      return Printed{std::string(builtin_name(b)) + " " + lam->var + " : " + to_string(lam->type) + " . " +
                         top(lam->body),
                     kBinder};
    }
    case Builtin::Eq:
    case Builtin::Lt:
    case Builtin::Gt:
    case Builtin::Le:
    case Builtin::Ge:
    case Builtin::Member: return infix(kCons, kCons, kRel);
    case Builtin::Cons: return infix(kAdd, kCons, kCons);
    case Builtin::Add:
    case Builtin::Remove: return infix(kAdd, kMul, kAdd);
    case Builtin::Mul:
    case Builtin::Div: return infix(kMul, kPostfix, kMul);
    case Builtin::At: {
      auto* s = a.as<Sym>();
      std::string where = s && s->builtin == Builtin::None ? s->name : "(" + top(a) + ")";
      return Printed{"@" + where + " " + wrap(*sp.args[1], kPrefix), kPrefix};
    }
    case Builtin::InState: return Printed{"in(" + top(a) + ")", kAtom};
    case Builtin::Length: return Printed{"|" + wrap(a, kCons) + "|", kAtom};
    case Builtin::Q: {
      auto items = list_items(a);
      if (!items) return std::nullopt;
      return Printed{"Q[" + join(*items, ";") + "](" + top(*sp.args[1]) + ")", kAtom};
    }
    default: return std::nullopt;
  }
}

Printed print(const Expr& e) {
  if (auto* s = e.as<Sym>()) {
    switch (s->builtin) {
      case Builtin::None: return {s->name, kAtom};
      case Builtin::True:
      case Builtin::False:
      case Builtin::Nil: return {builtin_name(s->builtin), kAtom};
      default: return {std::string("(") + section_text(s->builtin) + ")", kAtom};
    }
  }
  if (auto* l = e.as<Lit>()) return {to_string(l->value), kAtom};
  if (e.as<App>()) {
    if (auto p = print_builtin_call(e)) return *p;
    auto sp = spine(e);
    std::string out = wrap(*sp.head, kPostfix) + "(";
    for (std::size_t i = 0; i < sp.args.size(); ++i) {
      if (i) out += ", ";
      out += top(*sp.args[i]);
    }
    return {out + ")", kPostfix};
  }
  if (auto* l = e.as<Lam>()) return {"\\" + l->var + " : " + to_string(l->type) + " . " + top(l->body), kBinder};
  if (auto* d = e.as<Diamond>()) {
    std::string out = "dia[" + top(d->action) + "]";
    if (d->prob) out += "{" + top(*d->prob) + "}";
    return {out + " " + wrap(d->body, kPrefix), kPrefix};
  }
  if (auto* b = e.as<Box>()) return {"box[" + top(b->action) + "] " + wrap(b->body, kPrefix), kPrefix};
  if (auto* q = e.as<QTrace>()) {
    if (q->props.empty()) return {"Q[" + join(q->actions, ";") + "](nil)", kAtom};
    std::string props = join(q->props, ";");
    if (q->props.size() == 1) props += ";";
    return {"Q[" + join(q->actions, ";") + "](" + props + ")", kAtom};
  }
  return {"?", kAtom};
}

}  // namespace

std::string print_formula(const Expr& e) { return print(e).text; }

}  // namespace ptl
