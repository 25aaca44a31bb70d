#include <set>

#include "lexer.hpp"
#include "ptl/syntax.hpp"

namespace ptl {
namespace {

using detail::Tok;
using detail::Token;
using Kind = SurfaceExpr::Kind;

bool is_type_word(const std::string& w) {
  static const std::set<std::string> words = {"bool", "obj", "real", "state", "prop", "action", "o",
                                              "β",    "ι",   "η",    "μ",     "α"};
  return words.count(w) > 0;
}

SurfaceExpr node(Kind k, SourceSpan span) {
  SurfaceExpr e;
  e.kind = k;
  e.span = std::move(span);
  return e;
}

class Parser {
 public:
  Parser(std::string_view text, const TextOrigin& origin) : toks_(detail::tokenize(text, origin)) {}

  SurfaceExpr formula() {
    SurfaceExpr e = expr();
    expect(Tok::End, "end of formula");
    return e;
  }

  Type type_only() {
    Type t = type();
    expect(Tok::End, "end of type");
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok t) const { return peek().kind == t; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& message) const {
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.span, message + " (at " + got + ")");
  }

  Token expect(Tok t, const std::string& what) {
    if (!at(t)) fail(peek(), std::string("expected ") + detail::describe(t) + " in " + what);
    return take();
  }

  bool at_binder() const { return at(Tok::Forall) || at(Tok::Exists) || at(Tok::Lambda); }

  // Binders extend as far right as possible, so any operand slot may start one.
  template <class F>
  SurfaceExpr operand(F level) {
    return at_binder() ? binder() : (this->*level)();
  }

  SurfaceExpr expr() { return at_binder() ? binder() : iff(); }

  Type type_atom() {
    Token t = peek();
    if (at(Tok::LBracket)) {
      take();
      Type elem = type();
      expect(Tok::RBracket, "list type");
      return Type::list(elem);
    }
    if (at(Tok::LParen)) {
      take();
      Type inner = type();
      expect(Tok::RParen, "type");
      return inner;
    }
    if (at(Tok::Ident) && is_type_word(t.text)) {
      take();
      const std::string& w = t.text;
      if (w == "bool" || w == "β") return Type::boolean();
      if (w == "obj" || w == "ι") return Type::object();
      if (w == "real" || w == "η") return Type::real();
      if (w == "state" || w == "μ") return Type::state();
      if (w == "prop" || w == "o") return Type::prop();
      return Type::action();
    }
    fail(t, "expected a type");
  }

  Type type() {
    Type lhs = type_atom();
    if (at(Tok::Imp)) {
      take();
      return Type::arrow(lhs, type());
    }
    return lhs;
  }

  SurfaceExpr binder() {
    Token kw = take();
    Token var = expect(Tok::Ident, "binder");
    if (kw.kind == Tok::Lambda) {
      expect(Tok::Colon, "lambda binder");
      SurfaceExpr e = node(Kind::Lambda, kw.span);
      e.name = var.text;
      e.type = type();
      expect(Tok::Dot, "lambda");
      e.kids.push_back(expr());
      return e;
    }
    Builtin q = kw.kind == Tok::Forall ? Builtin::Forall : Builtin::Exists;
    if (at(Tok::In) || at(Tok::Member)) {
      take();
      SurfaceExpr e = node(Kind::QuantIn, kw.span);
      e.op = q;
      e.name = var.text;
      e.kids.push_back(cons());
      expect(Tok::Dot, "bounded quantifier");
      e.kids.push_back(expr());
      return e;
    }
    expect(Tok::Colon, "quantifier");
    SurfaceExpr e;
    if (at(Tok::Ident) && !is_type_word(peek().text)) {
      e = node(Kind::QuantGuard, kw.span);
      e.guard = take().text;
    } else {
      e = node(Kind::Quant, kw.span);
      e.type = type();
    }
    e.op = q;
    e.name = var.text;
    expect(Tok::Dot, "quantifier");
    e.kids.push_back(expr());
    return e;
  }

  static SurfaceExpr binary(Builtin op, SurfaceExpr l, SurfaceExpr r, SourceSpan span) {
    SurfaceExpr e = node(Kind::Binary, std::move(span));
    e.op = op;
    e.kids.push_back(std::move(l));
    e.kids.push_back(std::move(r));
    return e;
  }

  SurfaceExpr iff() {
    SurfaceExpr l = imp();
    while (at(Tok::Iff)) {
      Token t = take();
      l = binary(Builtin::Iff, std::move(l), operand(&Parser::imp), t.span);
    }
    return l;
  }

  SurfaceExpr imp() {
    SurfaceExpr l = disj();
    if (at(Tok::Imp)) {
      Token t = take();
      return binary(Builtin::Imp, std::move(l), operand(&Parser::imp), t.span);
    }
    return l;
  }

  SurfaceExpr disj() {
    SurfaceExpr l = conj();
    while (at(Tok::Or)) {
      Token t = take();
      l = binary(Builtin::Or, std::move(l), operand(&Parser::conj), t.span);
    }
    return l;
  }

  SurfaceExpr conj() {
    SurfaceExpr l = prefix();
    while (at(Tok::And)) {
      Token t = take();
      l = binary(Builtin::And, std::move(l), operand(&Parser::prefix), t.span);
    }
    return l;
  }

  SurfaceExpr prefix() {
    Token t = peek();
    switch (t.kind) {
      case Tok::Not: {
        take();
        SurfaceExpr e = node(Kind::Unary, t.span);
        e.op = Builtin::Not;
        e.kids.push_back(operand(&Parser::prefix));
        return e;
      }
      case Tok::Dia:
      case Tok::Box: {
        take();
        expect(Tok::LBracket, "modal operator");
        SurfaceExpr action = expr();
        expect(Tok::RBracket, "modal operator");
        SurfaceExpr e = node(t.kind == Tok::Box ? Kind::Box : Kind::Diamond, t.span);
        e.kids.push_back(std::move(action));
        if (t.kind == Tok::Dia && at(Tok::LBrace)) {
          take();
          e.kind = Kind::DiamondAnn;
          e.kids.push_back(expr());
          expect(Tok::RBrace, "diamond probability");
        }
        e.kids.push_back(operand(&Parser::prefix));
        return e;
      }
      case Tok::Lt: {
        // `<a> F` is accepted as another spelling of `dia[a] F`.
        take();
        SurfaceExpr e = node(Kind::Diamond, t.span);
        e.kids.push_back(cons());
        expect(Tok::Gt, "diamond");
        e.kids.push_back(operand(&Parser::prefix));
        return e;
      }
      case Tok::At: {
        take();
        SurfaceExpr e = node(Kind::At, t.span);
        e.kids.push_back(primary());
        e.kids.push_back(operand(&Parser::prefix));
        return e;
      }
      default: return relation();
    }
  }

  SurfaceExpr relation() {
    SurfaceExpr l = cons();
    Token t = peek();
    Builtin op = Builtin::None;
    switch (t.kind) {
      case Tok::Eq: op = Builtin::Eq; break;
      case Tok::Lt: op = Builtin::Lt; break;
      case Tok::Gt: op = Builtin::Gt; break;
      case Tok::Le: op = Builtin::Le; break;
      case Tok::Ge: op = Builtin::Ge; break;
      case Tok::In:
      case Tok::Member: op = Builtin::Member; break;
      case Tok::Neq: {
        take();
        SurfaceExpr e = node(Kind::NotEqual, t.span);
        e.kids.push_back(std::move(l));
        e.kids.push_back(cons());
        return e;
      }
      default: return l;
    }
    take();
    return binary(op, std::move(l), cons(), t.span);
  }

  SurfaceExpr cons() {
    SurfaceExpr l = additive();
    if (at(Tok::ColonColon)) {
      Token t = take();
      return binary(Builtin::Cons, std::move(l), cons(), t.span);
    }
    return l;
  }

  SurfaceExpr additive() {
    SurfaceExpr l = multiplicative();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Token t = take();
      l = binary(t.kind == Tok::Plus ? Builtin::Add : Builtin::Remove, std::move(l), multiplicative(), t.span);
    }
    return l;
  }

  SurfaceExpr multiplicative() {
    SurfaceExpr l = postfix();
    while (at(Tok::Star) || at(Tok::Slash)) {
      Token t = take();
      l = binary(t.kind == Tok::Star ? Builtin::Mul : Builtin::Div, std::move(l), postfix(), t.span);
    }
    return l;
  }

  SurfaceExpr postfix() {
    SurfaceExpr e = primary();
    while (at(Tok::LParen)) {
      take();
      SurfaceExpr call = node(Kind::Call, e.span);
      call.kids.push_back(std::move(e));
      call.kids.push_back(expr());
      while (at(Tok::Comma)) {
        take();
        call.kids.push_back(expr());
      }
      expect(Tok::RParen, "argument list");
      e = std::move(call);
    }
    return e;
  }

  static bool adjacent(const Token& a, const Token& b) {
    return a.span.line == b.span.line && a.span.column + a.span.length == b.span.column;
  }

  // Number literal: INT, DECIMAL, INT/INT, with optional leading minus.
  SurfaceExpr number(bool negative, const SourceSpan& span) {
    Token t = take();
    Rational value;
    if (!parse_rational(t.text, value)) fail(t, "malformed number");
    // Only a tight "n/d" is a literal; "n / d" is a division.
    if (t.kind == Tok::Int && at(Tok::Slash) && peek(1).kind == Tok::Int && adjacent(t, peek()) &&
        adjacent(peek(), peek(1))) {
      take();
      Token den = take();
      Rational d;
      parse_rational(den.text, d);
      if (d == 0) fail(den, "zero denominator");
      value /= d;
    }
    SurfaceExpr e = node(Kind::Number, span);
    e.number = negative ? Rational(-value) : value;
    return e;
  }

  std::optional<std::pair<Builtin, std::size_t>> section_at(std::size_t k) const {
    auto single = [&](Tok t) -> std::optional<Builtin> {
      switch (t) {
        case Tok::And: return Builtin::And;
        case Tok::Or: return Builtin::Or;
        case Tok::Imp: return Builtin::Imp;
        case Tok::Iff: return Builtin::Iff;
        case Tok::Not: return Builtin::Not;
        case Tok::Eq: return Builtin::Eq;
        case Tok::Lt: return Builtin::Lt;
        case Tok::Gt: return Builtin::Gt;
        case Tok::Le: return Builtin::Le;
        case Tok::Ge: return Builtin::Ge;
        case Tok::Plus: return Builtin::Add;
        case Tok::Star: return Builtin::Mul;
        case Tok::Slash: return Builtin::Div;
        case Tok::Minus: return Builtin::Remove;
        case Tok::ColonColon: return Builtin::Cons;
        case Tok::Forall: return Builtin::Forall;
        case Tok::Exists: return Builtin::Exists;
        case Tok::Q: return Builtin::Q;
        case Tok::In:
        case Tok::Member: return Builtin::Member;
        case Tok::At: return Builtin::At;
        default: return std::nullopt;
      }
    };
    if (peek(k).kind != Tok::LParen) return std::nullopt;
    if (peek(k + 1).kind == Tok::At && peek(k + 2).kind == Tok::In && peek(k + 3).kind == Tok::RParen)
      return std::make_pair(Builtin::InState, std::size_t{4});
    if (peek(k + 1).kind == Tok::Bar && peek(k + 2).kind == Tok::Dot && peek(k + 3).kind == Tok::Bar &&
        peek(k + 4).kind == Tok::RParen)
      return std::make_pair(Builtin::Length, std::size_t{5});
    if (auto b = single(peek(k + 1).kind); b && peek(k + 2).kind == Tok::RParen)
      return std::make_pair(*b, std::size_t{3});
    return std::nullopt;
  }

  SurfaceExpr primary() {
    Token t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        take();
        SurfaceExpr e = node(Kind::Ident, t.span);
        e.name = t.text;
        return e;
      }
      case Tok::Int:
      case Tok::Decimal: return number(false, t.span);
      case Tok::Minus:
        if (peek(1).kind == Tok::Int || peek(1).kind == Tok::Decimal) {
          take();
          return number(true, t.span);
        }
        break;
      case Tok::True:
      case Tok::False:
      case Tok::Nil: {
        take();
        SurfaceExpr e = node(Kind::Builtin, t.span);
        e.op = t.kind == Tok::True ? Builtin::True : t.kind == Tok::False ? Builtin::False : Builtin::Nil;
        return e;
      }
      case Tok::In: {
        take();
        expect(Tok::LParen, "in(state)");
        SurfaceExpr e = node(Kind::InState, t.span);
        e.kids.push_back(expr());
        expect(Tok::RParen, "in(state)");
        return e;
      }
      case Tok::Bar: {
        take();
        SurfaceExpr e = node(Kind::Length, t.span);
        e.kids.push_back(cons());
        expect(Tok::Bar, "length |...|");
        return e;
      }
      case Tok::Q: return probability();
      case Tok::Forall:
      case Tok::Exists:
      case Tok::Lambda: return binder();
      case Tok::Not:
      case Tok::Dia:
      case Tok::Box:
      case Tok::At: return prefix();
      case Tok::LParen: {
        if (auto sec = section_at(0)) {
          for (std::size_t k = 0; k < sec->second; ++k) take();
          SurfaceExpr e = node(Kind::Builtin, t.span);
          e.op = sec->first;
          return e;
        }
        take();
        SurfaceExpr e = expr();
        expect(Tok::RParen, "parenthesized expression");
        return e;
      }
      default: break;
    }
    fail(t, "unexpected token");
  }

  SurfaceExpr probability() {
    Token q = take();
    SurfaceExpr e = node(Kind::Q, q.span);
    expect(Tok::LBracket, "Q[...]");
    std::vector<SurfaceExpr> actions;
    if (!at(Tok::RBracket)) {
      actions.push_back(expr());
      while (at(Tok::Semi)) {
        take();
        actions.push_back(expr());
      }
    }
    expect(Tok::RBracket, "Q[...]");
    expect(Tok::LParen, "Q[...](...)");
    std::vector<SurfaceExpr> props;
    bool trace = false;
    if (at(Tok::Nil) && peek(1).kind == Tok::RParen) {
      take();
      trace = true;
    } else {
      props.push_back(expr());
      while (at(Tok::Semi)) {
        take();
        trace = true;
        if (at(Tok::RParen)) break;
        props.push_back(expr());
      }
    }
    expect(Tok::RParen, "Q[...](...)");
    e.kind = trace ? Kind::QTrace : Kind::Q;
    e.actions = actions.size();
    for (auto& a : actions) e.kids.push_back(std::move(a));
    for (auto& p : props) e.kids.push_back(std::move(p));
    return e;
  }
};

}  // namespace

SurfaceExpr parse_formula(std::string_view text, const TextOrigin& origin) { return Parser(text, origin).formula(); }

Type parse_type(std::string_view text, const TextOrigin& origin) { return Parser(text, origin).type_only(); }

std::vector<NamedFormula> parse_formula_file(std::string_view text, const std::string& file) {
  struct Group {
    std::string name;
    std::string body;
    TextOrigin origin;
    SourceSpan span;
  };
  std::vector<Group> groups;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    std::string_view line = strip_comment(raw);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      std::string_view rest = line.substr(first);
      bool is_def = rest.substr(0, 4) == "def " || rest.substr(0, 4) == "def\t";
      if (is_def) {
        std::size_t name_start = rest.find_first_not_of(" \t", 3);
        std::size_t name_end = rest.find_first_of(" \t:", name_start);
        std::size_t define = rest.find(":=", name_start);
        SourceSpan span{file, line_no, static_cast<int>(first) + 1, static_cast<int>(rest.size())};
        if (name_start == std::string_view::npos || define == std::string_view::npos || name_end > define)
          throw ParseError(span, "expected 'def <name> := <formula>'");
        Group g;
        g.name = std::string(rest.substr(name_start, name_end - name_start));
        g.body = std::string(rest.substr(define + 2));
        g.origin = TextOrigin{file, line_no, static_cast<int>(first + define + 3)};
        g.span = span;
        groups.push_back(std::move(g));
      } else {
        if (groups.empty())
          throw ParseError(SourceSpan{file, line_no, static_cast<int>(first) + 1, 1},
                           "text outside of a 'def' block");
        groups.back().body += "\n";
        groups.back().body += std::string(line);
      }
    } else if (!groups.empty()) {
      groups.back().body += "\n";
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  std::vector<NamedFormula> out;
  std::set<std::string> seen;
  for (auto& g : groups) {
    if (!seen.insert(g.name).second) throw ParseError(g.span, "duplicate definition '" + g.name + "'");
    out.push_back({g.name, parse_formula(g.body, g.origin), g.span});
  }
  return out;
}

}  // namespace ptl
