#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptl/error.hpp"
#include "ptl/expr.hpp"
#include "ptl/typecheck.hpp"

namespace ptl {

/// Concrete syntax tree. Mirrors Expr plus the sugar nodes that `desugar` removes.
struct SurfaceExpr {
  enum class Kind {
    Ident,       // name
    Number,      // number (decimals already exact)
    Builtin,     // op: a keyword constant (true, nil, ...) or an operator section like (/\)
    Call,        // kids[0](kids[1], ..., kids[n])
    Lambda,      // \name : type . kids[0]
    Quant,       // op ∈ {Forall, Exists}; name : type . kids[0]
    QuantGuard,  // op; name : guard . kids[0]       (∀x:G.H ≡ ∀x. G(x) → H)
    QuantIn,     // op; name in kids[0] . kids[1]    (∀x∈ℓ.H ≡ ∀x. x∈ℓ → H)
    Unary,       // op Not; kids[0]
    Binary,      // op; kids[0] op kids[1]
    NotEqual,    // kids[0] != kids[1]
    Diamond,     // dia[kids[0]] kids[1]
    DiamondAnn,  // dia[kids[0]]{kids[1]} kids[2]
    Box,         // box[kids[0]] kids[1]
    At,          // @kids[0] kids[1]
    InState,     // in(kids[0])
    Length,      // |kids[0]|
    Q,           // Q[kids[0..n-1]](kids[n]),      n = actions
    QTrace,      // Q[kids[0..n-1]](kids[n..]),    n = actions
  };

  Kind kind = Kind::Ident;
  std::string name;
  std::string guard;
  Builtin op = Builtin::None;
  Rational number;
  std::optional<Type> type;
  std::size_t actions = 0;
  std::vector<SurfaceExpr> kids;
  SourceSpan span;
};

/// Where a fragment of text starts, so spans point into the enclosing file.
struct TextOrigin {
  std::string file;
  int line = 1;
  int column = 1;
};

/// Operator precedence, loosest first: binders, <->, ->, \/, /\, prefix (~ dia box @),
/// relations (= != < > <= >= in), ::, + -, * /, application.
SurfaceExpr parse_formula(std::string_view text, const TextOrigin& origin = {});
Type parse_type(std::string_view text, const TextOrigin& origin = {});

struct NamedFormula {
  std::string name;
  SurfaceExpr expr;
  SourceSpan span;
};

/// `.ptl` files: `def <name> := <formula>`, continuing until the next `def`. `--` comments.
std::vector<NamedFormula> parse_formula_file(std::string_view text, const std::string& file = "");

/// Removes sugar. Guarded and bounded binders need `env` to find their binder type.
Expr desugar(const SurfaceExpr& s, const TypeEnv& env);

/// Canonical concrete syntax with minimal parentheses; parse∘print is the identity up to α.
std::string print_formula(const Expr& e);

/// parse_formula + desugar + infer_type.
Expr read_expr(std::string_view text, const TypeEnv& env, const TextOrigin& origin = {});
/// read_expr, additionally requiring type o.
Expr read_formula(std::string_view text, const TypeEnv& env, const TextOrigin& origin = {});

/// Strips a `--` comment (only when followed by whitespace or end of line).
std::string_view strip_comment(std::string_view line);

}  // namespace ptl
