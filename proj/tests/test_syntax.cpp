#include <doctest.h>

#include "support.hpp"

using namespace ptl;
using namespace ptl::testing;

namespace {

TypeEnv env_of(const std::string& stem) { return corpus_model(stem).signature(); }

bool same(const std::string& a, const std::string& b, const TypeEnv& env) {
  return alpha_equal(read_expr(a, env), read_expr(b, env));
}

Expr reparse(const Expr& e, const TypeEnv& env) { return read_expr(print_formula(e), env); }

}  // namespace

TEST_CASE("guarded and bounded binders desugar to implications") {
  TypeEnv coin = env_of("coin");
  CHECK(same("forall x : Coin . dia[toss(x)]{1/2} heads(x)",
             "forall x : obj . Coin(x) -> dia[toss(x)]{1/2} heads(x)", coin));
  CHECK(same("exists x : Coin . heads(x)", "exists x : obj . Coin(x) /\\ heads(x)", coin));
  TypeEnv bag = env_of("bag4");
  CHECK(same("forall x in ws :: bs :: nil . G(x)", "forall x : obj . x in ws :: bs :: nil -> G(x)", bag));
  CHECK(same("exists x in ws :: nil . G(x)", "exists x : obj . x in ws :: nil /\\ G(x)", bag));
  CHECK(same("ws != bs", "~(ws = bs)", bag));
}

TEST_CASE("modal operators build their own nodes") {
  TypeEnv env = env_of("twosucc");
  Expr d = read_expr("<a> phi", env);
  REQUIRE(d.as<Diamond>() != nullptr);
  CHECK_FALSE(d.as<Diamond>()->prob.has_value());
  CHECK(alpha_equal(d, read_expr("dia[a] phi", env)));
  CHECK(alpha_equal(read_expr("◇[a] phi", env), d));
  CHECK(read_expr("box[a] phi", env).as<Box>() != nullptr);
  CHECK(alpha_equal(read_expr("□[a] phi", env), read_expr("box[a] phi", env)));
  Expr ann = read_expr("dia[a]{1/3} phi", env);
  REQUIRE(ann.as<Diamond>() != nullptr);
  REQUIRE(ann.as<Diamond>()->prob.has_value());
  CHECK(ann.as<Diamond>()->prob->as<Lit>()->value == Rational(1, 3));
}

TEST_CASE("trace probabilities build a QTrace node") {
  TypeEnv env = env_of("twotoss");
  Expr e = read_expr("Q[t(c);t(c)](H(c);H(c))", env);
  REQUIRE(e.as<QTrace>() != nullptr);
  CHECK(e.as<QTrace>()->actions.size() == 2);
  CHECK(e.as<QTrace>()->props.size() == 2);
  Expr q = read_expr("Q[t(c);t(c)](H(c))", env);
  CHECK(q.as<QTrace>() == nullptr);
  CHECK(builtin_call(q, 2) == Builtin::Q);
}

TEST_CASE("decimals become exact rationals") {
  TypeEnv env = env_of("coin");
  CHECK(same("Q[toss(c)](heads(c)) = 0.5", "Q[toss(c)](heads(c)) = 1/2", env));
  Expr e = read_expr("0.125", env);
  REQUIRE(e.as<Lit>() != nullptr);
  CHECK(e.as<Lit>()->value == Rational(1, 8));
  CHECK(read_expr("6/8", env).as<Lit>()->value == Rational(3, 4));
}

TEST_CASE("prefix operators nest to the right") {
  TypeEnv env = env_of("montyhall");
  Expr e = read_expr("@s0 box[h] dia[p(d1)] V", env);
  CHECK(builtin_call(e, 2) == Builtin::At);
  const Expr& body = *spine(e).args[1];
  REQUIRE(body.as<Box>() != nullptr);
  CHECK(body.as<Box>()->body.as<Diamond>() != nullptr);
  CHECK(same("@s0 V -> V", "(@s0 V) -> V", env));
  CHECK(same("~V /\\ V", "(~V) /\\ V", env));
  CHECK(same("V \\/ V /\\ V", "V \\/ (V /\\ V)", env));
  CHECK(same("V -> V -> V", "V -> (V -> V)", env));
}

TEST_CASE("binders extend as far right as possible") {
  TypeEnv env = env_of("montyhall");
  CHECK(same("forall x : obj . C(x) -> G(x)", "forall x : obj . (C(x) -> G(x))", env));
  CHECK(same("V /\\ forall x : obj . C(x) \\/ G(x)", "V /\\ (forall x : obj . (C(x) \\/ G(x)))", env));
}

TEST_CASE("the printer emits canonical syntax") {
  TypeEnv env = env_of("twosucc");
  CHECK(print_formula(read_expr("<a> phi", env)) == "dia[a] phi");
  CHECK(print_formula(read_expr("dia[a]{0.5} phi", env)) == "dia[a]{1/2} phi");
  CHECK(print_formula(Expr::lit(Rational(1, 2))) == "1/2");
  CHECK(print_formula(read_expr("((phi)) /\\ (phi \\/ phi)", env)) == "phi /\\ (phi \\/ phi)");
  CHECK(print_formula(read_expr("Q[a](phi) + 1/2 * 2", env)) == "Q[a](phi) + 1/2 * 2");
  CHECK(print_formula(read_expr("(1 + 2) * 3", env)) == "(1 + 2) * 3");
  CHECK(print_formula(read_expr("1 / 2", env)) == "1 / 2");
  Expr lams = read_expr("\\x : real . \\y : real . x + y", env);
  CHECK(print_formula(lams) == "\\x : real . \\y : real . x + y");
  CHECK(alpha_equal(reparse(lams, env), lams));
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_formula("dia[a phi", TextOrigin{"f.ptl", 3, 1});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().file == "f.ptl");
    CHECK(e.span().line == 3);
    CHECK(std::string(e.what()).find("parse error") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_formula("phi /\\"), ParseError);
  CHECK_THROWS_AS(parse_formula("Q[a]"), ParseError);
  CHECK_THROWS_AS(parse_formula("1/0"), ParseError);
  CHECK_THROWS_AS(parse_formula("forall x . phi"), ParseError);
}

TEST_CASE("formula files split on def and skip comments") {
  auto defs = parse_formula_file("-- header\ndef a := phi -- trailing\n  /\\ phi\n\ndef b :=\n  dia[a] phi\n", "x.ptl");
  REQUIRE(defs.size() == 2);
  CHECK(defs[0].name == "a");
  CHECK(defs[1].name == "b");
  TypeEnv env = env_of("twosucc");
  CHECK(alpha_equal(desugar(defs[0].expr, env), read_expr("phi /\\ phi", env)));
  CHECK(defs[1].span.line == 5);
  CHECK_THROWS_AS(parse_formula_file("def a := phi\ndef a := phi\n"), ParseError);
}

TEST_CASE("every shipped formula survives print and reparse") {
  int checked = 0;
  for (const auto& suite : formula_suites()) {
    const std::string file = corpus_path("formulas/" + suite.file + ".ptl");
    TypeEnv env = env_of(suite.models.front());
    for (const auto& def : parse_formula_file(read_file(file), file)) {
      CAPTURE(def.name);
      Expr e = desugar(def.expr, env);
      std::string printed = print_formula(e);
      Expr again = read_expr(printed, env);
      CHECK(alpha_equal(again, e));
      CHECK(print_formula(again) == printed);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("random formulas survive print and reparse") {
  std::mt19937 rng(7);
  for (const auto& stem : valid_model_stems()) {
    Model m = corpus_model(stem);
    for (int i = 0; i < 60; ++i) {
      Expr e = random_formula(m, rng, 4);
      CAPTURE(print_formula(e));
      CHECK(alpha_equal(reparse(e, m.signature()), e));
    }
  }
}

TEST_CASE("rational literals are preserved exactly") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long long> num(0, 1'000'000'007LL), den(1, 999'999'937LL);
  TypeEnv env;
  for (int i = 0; i < 500; ++i) {
    Rational r(num(rng), den(rng));
    Expr e = read_expr(print_formula(Expr::lit(r)), env);
    REQUIRE(e.as<Lit>() != nullptr);
    CHECK(e.as<Lit>()->value == r);
  }
  Rational big;
  REQUIRE(parse_rational("123456789012345678901234567890/7", big));
  CHECK(read_expr(print_formula(Expr::lit(big)), env).as<Lit>()->value == big);
}
