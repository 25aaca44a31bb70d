#include "lexer.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace ptl {

std::string_view strip_comment(std::string_view line) {
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    if (line[i] == '-' && line[i + 1] == '-') {
      if (i + 2 == line.size() || std::isspace(static_cast<unsigned char>(line[i + 2]))) return line.substr(0, i);
    }
  }
  return line;
}

namespace detail {

namespace {

struct Glyph {
  std::string_view text;
  Tok tok;
};

// Longest spellings first.
constexpr std::array<Glyph, 38> kGlyphs{{
    {"<->", Tok::Iff}, {":=", Tok::Define}, {"::", Tok::ColonColon}, {"/\\", Tok::And}, {"\\/", Tok::Or},
    {"->", Tok::Imp}, {"!=", Tok::Neq}, {"<=", Tok::Le}, {">=", Tok::Ge}, {"(", Tok::LParen},
    {")", Tok::RParen}, {"[", Tok::LBracket}, {"]", Tok::RBracket}, {"{", Tok::LBrace}, {"}", Tok::RBrace},
    {",", Tok::Comma}, {";", Tok::Semi}, {".", Tok::Dot}, {":", Tok::Colon}, {"~", Tok::Not},
    {"!", Tok::Not}, {"=", Tok::Eq}, {"<", Tok::Lt}, {">", Tok::Gt}, {"+", Tok::Plus},
    {"*", Tok::Star}, {"/", Tok::Slash}, {"-", Tok::Minus}, {"|", Tok::Bar}, {"@", Tok::At},
    {"\\", Tok::Lambda}, {"∧", Tok::And}, {"∨", Tok::Or}, {"→", Tok::Imp}, {"↔", Tok::Iff},
    {"¬", Tok::Not}, {"∈", Tok::Member}, {"≠", Tok::Neq},
}};

constexpr std::array<Glyph, 9> kUnicodeWords{{
    {"∀", Tok::Forall}, {"∃", Tok::Exists}, {"λ", Tok::Lambda}, {"◇", Tok::Dia}, {"□", Tok::Box},
    {"⊤", Tok::True}, {"⊥", Tok::False}, {"≤", Tok::Le}, {"≥", Tok::Ge},
}};

// Greek spellings of the basic types lex as identifiers.
constexpr std::array<std::string_view, 5> kGreekTypes{{"β", "ι", "η", "μ", "α"}};

Tok keyword(const std::string& word) {
  static const std::pair<std::string_view, Tok> table[] = {
      {"forall", Tok::Forall}, {"exists", Tok::Exists}, {"dia", Tok::Dia}, {"box", Tok::Box},
      {"Q", Tok::Q},           {"in", Tok::In},         {"nil", Tok::Nil}, {"true", Tok::True},
      {"false", Tok::False},
  };
  for (const auto& [w, t] : table)
    if (w == word) return t;
  return Tok::Ident;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

std::vector<Token> tokenize(std::string_view text, const TextOrigin& origin) {
  std::vector<Token> out;
  int line = origin.line, col = origin.column;
  std::size_t i = 0;
  auto span_at = [&](int l, int c, int len) { return SourceSpan{origin.file, l, c, len}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-' &&
        (i + 2 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 2])))) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      Tok kind = Tok::Int;
      if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        kind = Tok::Decimal;
      }
      std::string word(text.substr(i, j - i));
      advance(j - i);
      out.push_back({kind, word, span_at(l, cl, static_cast<int>(word.size()))});
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      advance(j - i);
      out.push_back({keyword(word), word, span_at(l, cl, static_cast<int>(word.size()))});
      continue;
    }
    bool matched = false;
    for (auto g : kUnicodeWords) {
      if (text.substr(i, g.text.size()) == g.text) {
        advance(g.text.size());
        out.push_back({g.tok, std::string(g.text), span_at(l, cl, 1)});
        matched = true;
        break;
      }
    }
    if (!matched) {
      for (auto g : kGreekTypes) {
        if (text.substr(i, g.size()) == g) {
          advance(g.size());
          out.push_back({Tok::Ident, std::string(g), span_at(l, cl, 1)});
          matched = true;
          break;
        }
      }
    }
    if (!matched) {
      for (auto g : kGlyphs) {
        if (text.substr(i, g.text.size()) == g.text) {
          advance(g.text.size());
          out.push_back({g.tok, std::string(g.text), span_at(l, cl, static_cast<int>(g.text.size()))});
          matched = true;
          break;
        }
      }
    }
    if (!matched) throw ParseError(span_at(l, cl, 1), std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", span_at(line, col, 0)});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Decimal: return "decimal";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::ColonColon: return "'::'";
    case Tok::Define: return "':='";
    case Tok::End: return "end of input";
    default: return "operator";
  }
}

}  // namespace detail
}  // namespace ptl
