#include <doctest.h>

#include <map>

#include "support.hpp"

using namespace ptl;
using namespace ptl::testing;

namespace {

const char* kCoin = R"(types
  heads : obj -> prop
  tails : obj -> prop
objects
  c : Coin
states
  s0 sH sT
initial: s0
actions
  toss : obj -> action
transitions
)";

ModelError::Code model_error_of(const std::string& text) {
  try {
    validate_model(parse_model(text));
  } catch (const ModelError& e) {
    return e.code();
  }
  FAIL("expected a model error");
  return ModelError::Code::InvalidSpace;
}

std::string coin_with(const std::string& transitions) { return std::string(kCoin) + transitions; }

}  // namespace

TEST_CASE("the coin fixture reads into its declarations") {
  ModelSpec spec = parse_model(read_file(corpus_path("models/coin.ptlm")));
  CHECK(spec.states.size() == 3);
  CHECK(spec.actions.size() == 1);
  CHECK(spec.transitions.size() == 2);
  CHECK(spec.initial == std::optional<std::string>("s0"));
  CHECK(spec.transitions[0].probability == Rational(1, 2));
  CHECK(spec.transitions[0].action == GroundAction{"toss", {"c"}});
  Model m = validate_model(spec);
  CHECK(m.transition_count() == 2);
  CHECK(m.ground_actions() == std::vector<GroundAction>{{"toss", {"c"}}});
}

TEST_CASE("a model needs at least one state") {
  try {
    parse_model("types\n  r : prop\nstates\nactions\n  a\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("at least one state required") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_model("types\n  r : prop\n"), ParseError);
}

TEST_CASE("out-of-range probabilities parse but do not validate") {
  std::string text = coin_with("  s0 --toss(c)--> sH @ 2/1\n");
  ModelSpec spec;
  REQUIRE_NOTHROW(spec = parse_model(text));
  CHECK(spec.transitions[0].probability == 2);
  CHECK(model_error_of(text) == ModelError::Code::ProbabilityRange);
  CHECK(model_error_of(coin_with("  s0 --toss(c)--> sH @ 3/2\n")) == ModelError::Code::ProbabilityRange);
  CHECK(model_error_of(coin_with("  s0 --toss(c)--> sH @ 1\n  s0 --toss(c)--> sT @ 0\n")) ==
        ModelError::Code::ProbabilityRange);
}

TEST_CASE("probabilities of a state and action must sum to one") {
  try {
    validate_model(parse_model(coin_with("  s0 --toss(c)--> sH @ 1/2\n  s0 --toss(c)--> sT @ 1/3\n")));
    FAIL("expected a model error");
  } catch (const ModelError& e) {
    CHECK(e.code() == ModelError::Code::ProbabilitySum);
    REQUIRE(e.value().has_value());
    CHECK(*e.value() == Rational(5, 6));
    CHECK(std::string(e.what()).find("5/6") != std::string::npos);
    CHECK(std::string(e.what()).find("ProbabilitySumError") != std::string::npos);
  }
  CHECK_THROWS_AS(load_model(corpus_path("models/badcoin.ptlm")), ModelError);
}

TEST_CASE("declarations are checked") {
  CHECK(model_error_of(coin_with("  s0 --toss(c)--> sX @ 1\n")) == ModelError::Code::UnknownState);
  CHECK(model_error_of(coin_with("  s0 --toss(d)--> sH @ 1\n")) == ModelError::Code::UnknownObject);
  CHECK(model_error_of(coin_with("  s0 --flip(c)--> sH @ 1\n")) == ModelError::Code::UnknownAction);
  CHECK(model_error_of(coin_with("  s0 --toss--> sH @ 1\n")) == ModelError::Code::UnknownAction);
  CHECK(model_error_of(coin_with("  s0 --toss(c)--> sH @ 1\n  s0 --toss(c)--> sH @ 1\n")) ==
        ModelError::Code::DuplicateTransition);
  CHECK(model_error_of(coin_with("valuation\n  sH : edge(c)\n")) == ModelError::Code::UnknownPredicate);
  CHECK(model_error_of(coin_with("valuation\n  sQ : heads(c)\n")) == ModelError::Code::UnknownState);
  CHECK(model_error_of("states\n  s0 s0\n") == ModelError::Code::DuplicateDeclaration);
  CHECK(model_error_of("objects\n  s0 : Thing\nstates\n  s0\n") == ModelError::Code::NameClash);
  CHECK(model_error_of("states\n  s0\ninitial: s9\n") == ModelError::Code::UnknownState);
  CHECK_THROWS_AS(validate_model(parse_model("types\n  r : prop := 1\nstates\n  s0\n")), TypeError);
}

TEST_CASE("successor lists") {
  Model coin = corpus_model("coin");
  const auto& succ = coin.successors(coin.state("s0"), {"toss", {"c"}});
  REQUIRE(succ.size() == 2);
  CHECK(coin.states()[succ[0].state] == "sH");
  CHECK(succ[0].probability == Rational(1, 2));
  CHECK(coin.states()[succ[1].state] == "sT");
  CHECK(succ[1].probability == Rational(1, 2));
  CHECK(coin.successors(coin.state("sH"), {"toss", {"c"}}).empty());
  CHECK_FALSE(coin.enabled(coin.state("sH"), {"toss", {"c"}}));

  Model monty = corpus_model("montyhall");
  const auto& hide = successors(monty, monty.state("s0"), {"h", {}});
  REQUIRE(hide.size() == 3);
  for (const auto& s : hide) CHECK(s.probability == Rational(1, 3));
}

TEST_CASE("cycles and wildcards") {
  Model magical = corpus_model("magical");
  std::size_t h = magical.state("sH"), t = magical.state("sT");
  CHECK(magical.successors(h, {"t", {"c"}})[0].state == t);
  CHECK(magical.successors(t, {"t", {"c"}})[0].state == h);

  Model two = corpus_model("twotoss");
  for (std::size_t s = 0; s < two.states().size(); ++s) CHECK(two.successors(s, {"t", {"c"}}).size() == 2);
  CHECK(two.transition_count() == 6);
}

TEST_CASE("the valuation is closed-world and sorts hold everywhere") {
  Model coin = corpus_model("coin");
  CHECK(coin.holds(coin.state("sH"), {"heads", {"c"}}));
  CHECK_FALSE(coin.holds(coin.state("sH"), {"tails", {"c"}}));
  CHECK_FALSE(coin.holds(coin.state("s0"), {"heads", {"c"}}));
  for (std::size_t s = 0; s < coin.states().size(); ++s) CHECK(coin.holds(s, {"Coin", {"c"}}));
  CHECK(coin.is_object("c"));
  CHECK(coin.action_arity("toss") == std::optional<std::size_t>(1));
  CHECK(coin.predicate_args("heads") != nullptr);
  CHECK(coin.predicate_args("toss") == nullptr);
}

TEST_CASE("definitions join the signature") {
  Model bag = corpus_model("bag4");
  REQUIRE(bag.definition("Sph") != nullptr);
  CHECK(bag.definition("Sph")->type == Type::prop());
  CHECK(bag.signature().at("Sph") == Type::prop());
  Model monty = corpus_model("montyhall");
  CHECK(monty.definition("D")->type == Type::list(Type::object()));
}

TEST_CASE("every shipped model survives print and reparse") {
  for (const auto& stem : valid_model_stems()) {
    CAPTURE(stem);
    Model m = corpus_model(stem);
    std::string printed = print_model(m.spec());
    ModelSpec again = parse_model(printed);
    CHECK(again == m.spec());
    CHECK(print_model(again) == printed);
    for (std::size_t i = 0; i < again.transitions.size(); ++i)
      CHECK(again.transitions[i].probability == m.spec().transitions[i].probability);
  }
}

TEST_CASE("revalidation is a no-op") {
  for (const auto& stem : valid_model_stems()) {
    Model m = corpus_model(stem);
    Model again = validate_model(m.spec());
    CHECK(again.spec() == m.spec());
    CHECK(again.states() == m.states());
    CHECK(again.ground_actions() == m.ground_actions());
    CHECK(again.ground_atoms() == m.ground_atoms());
  }
}

TEST_CASE("validated models satisfy the frame condition") {
  std::mt19937 rng(3);
  std::vector<Model> models;
  for (const auto& stem : valid_model_stems()) models.push_back(corpus_model(stem));
  for (int i = 0; i < 200; ++i) models.push_back(validate_model(random_spec(rng)));
  for (const auto& m : models)
    for (std::size_t s = 0; s < m.states().size(); ++s)
      for (const auto& a : m.ground_actions()) {
        Rational sum = 0;
        std::set<std::size_t> targets;
        for (const auto& succ : m.successors(s, a)) {
          CHECK(succ.probability > 0);
          CHECK(succ.probability <= 1);
          CHECK(targets.insert(succ.state).second);
          sum += succ.probability;
        }
        if (!targets.empty()) CHECK(sum == 1);
      }
}

TEST_CASE("ground terms") {
  CHECK(parse_ground_term("toss(c)") == GroundTerm{"toss", {"c"}});
  CHECK(parse_ground_term("o") == GroundTerm{"o", {}});
  CHECK(parse_ground_term("r(a, b)") == GroundTerm{"r", {"a", "b"}});
  CHECK(GroundTerm{"r", {"a", "b"}}.str() == "r(a, b)");
  CHECK_THROWS_AS(parse_ground_term("toss(c"), ParseError);
}
