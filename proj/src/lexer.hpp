#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ptl/error.hpp"
#include "ptl/syntax.hpp"

namespace ptl::detail {

enum class Tok {
  Ident, Int, Decimal,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Comma, Semi, Dot, Colon, ColonColon, Define,
  And, Or, Imp, Iff, Not,
  Eq, Neq, Lt, Gt, Le, Ge, Member,
  Plus, Star, Slash, Minus, Bar, At,
  Lambda, Forall, Exists, Dia, Box, Q, In, Nil, True, False,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::vector<Token> tokenize(std::string_view text, const TextOrigin& origin);
const char* describe(Tok t);

}  // namespace ptl::detail
