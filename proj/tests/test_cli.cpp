#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "ptl/cli.hpp"
#include "support.hpp"

using namespace ptl;
using namespace ptl::testing;

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ptl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string model(const std::string& stem) { return corpus_path("models/" + stem + ".ptlm"); }
std::string formulas(const std::string& stem) { return corpus_path("formulas/" + stem + ".ptl"); }

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("ptl-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("eval prints exact values") {
  Run r = cli({"eval", model("coin"), "Q[toss(c)](heads(c))"});
  CHECK(r.status == kExitSatisfied);
  CHECK(r.out == "1/2\n");
  Run d = cli({"eval", model("montyhall"), formulas("montyhall") + ":switch_wins", "--decimal"});
  CHECK(d.out == "switch_wins = 2/3  -- approx 0.666667\n");
  Run n = cli({"eval", model("montyhall"), formulas("montyhall") + ":naive"});
  CHECK(n.status == kExitEval);
  CHECK(n.err.find("DisabledAction") != std::string::npos);
}

TEST_CASE("check reports verdicts through the exit status") {
  Run conj = cli({"check", model("montyhall"), formulas("montyhall") + ":conjecture", "--state", "s0"});
  CHECK(conj.status == kExitSatisfied);
  CHECK(conj.out.find("Q[h;p(d1);o;s](V) = 2/3 > 1/3 = Q[h;p(d1);o;nos](V)") != std::string::npos);
  CHECK(cli({"check", model("montyhall"), formulas("montyhall") + ":failed_box"}).status == kExitViolated);
  CHECK(cli({"check", model("montyhall"), formulas("montyhall") + ":naive"}).status == kExitEval);
  CHECK(cli({"check", model("coin"), "heads(c)", "--global"}).status == kExitViolated);
  CHECK(cli({"check", model("coin"), "Coin(c)", "--global"}).status == kExitSatisfied);
  Run mixed = cli({"check", model("montyhall"), formulas("montyhall") + ":conjecture",
                   formulas("montyhall") + ":failed_box"});
  CHECK(mixed.status == kExitViolated);
  Run file = cli({"check", model("coin"), formulas("coin")});
  CHECK(file.status == kExitViolated);
  CHECK(file.err.find("[heads_chance] skipped") != std::string::npos);
}

TEST_CASE("usage, parse, type and model errors exit with 2") {
  CHECK(cli({}).status == kExitUsage);
  CHECK(cli({"frobnicate"}).status == kExitUsage);
  CHECK(cli({"check", model("coin")}).status == kExitUsage);
  CHECK(cli({"check", model("coin"), "heads(c"}).status == kExitUsage);
  CHECK(cli({"check", model("coin"), "heads(0)"}).status == kExitUsage);
  CHECK(cli({"check", model("coin"), "1/2"}).status == kExitUsage);
  CHECK(cli({"check", model("coin"), "heads(c)", "--state", "nowhere"}).status == kExitUsage);
  CHECK(cli({"check", "missing.ptlm", "true"}).status == kExitUsage);
  CHECK(cli({"check", model("coin"), formulas("coin") + ":missing"}).status == kExitUsage);
  Run bad = cli({"validate", model("badcoin")});
  CHECK(bad.status == kExitUsage);
  CHECK(bad.err.find("ProbabilitySumError") != std::string::npos);
  CHECK(bad.err.find("5/6") != std::string::npos);
}

TEST_CASE("a model without an initial state needs --state") {
  fs::path dir = scratch_dir("initial");
  std::ofstream(dir / "m.ptlm") << "types\n  r : prop\nstates\n  s0 s1\nvaluation\n  s1 : r\n";
  std::string path = (dir / "m.ptlm").string();
  Run r = cli({"check", path, "r"});
  CHECK(r.status == kExitUsage);
  CHECK(r.err.find("NoInitialState") != std::string::npos);
  CHECK(cli({"check", path, "r", "--state", "s1"}).status == kExitSatisfied);
  fs::remove_all(dir);
}

TEST_CASE("structured output parses back") {
  Run r = cli({"check", model("montyhall"), formulas("montyhall") + ":failed_current", "--json"});
  CHECK(r.status == kExitViolated);
  auto j = nlohmann::json::parse(r.out);
  CheckReport report = report_from_json(j.at("report").dump());
  CHECK(report.verdict == Verdict::Violated);
  REQUIRE(report.witness.has_value());
  CHECK(report.witness->model == "montyhall");
  Run inline_check = cli({"check", model("coin"), "Q[toss(c)](heads(c)) = 1/2", "--json"});
  CheckReport plain = report_from_json(inline_check.out);
  CHECK(plain.verdict == Verdict::Satisfied);
  CHECK(*plain.numeric == Rational(1, 2));
}

TEST_CASE("identical inputs give identical output") {
  std::vector<std::string> args{"check", model("montyhall"), formulas("montyhall")};
  Run a = cli(args), b = cli(args);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
  CHECK(a.status == b.status);
}

TEST_CASE("entail") {
  fs::path dir = scratch_dir("entail");
  std::ofstream(dir / "fair.ptl") << "def fair := forall x : Coin . Q[t(x)](H(x)) = 1/2\n";
  Run r = cli({"entail", model("twotoss"), "--theory", (dir / "fair.ptl").string(), "--conclusion",
               "Q[t(c);t(c)](H(c);H(c)) = 1/4"});
  CHECK(r.status == kExitSatisfied);
  CHECK(r.out.find("relative to 1 model(s)") != std::string::npos);
  Run v = cli({"entail", model("dice12"), model("coin"), "--conclusion", formulas("dice12") + ":q_to_dia"});
  CHECK(v.status == kExitUsage);  // q_to_dia mentions Picked, unknown to the coin model
  Run d = cli({"entail", model("dice12"), "--conclusion", formulas("dice12") + ":q_to_dia"});
  CHECK(d.status == kExitViolated);
  fs::remove_all(dir);
}

TEST_CASE("independent and shortcut") {
  CHECK(cli({"independent", model("twotoss"), "t(c)", "t(c)", "--prop", "H(c)", "--prop", "T(c)"}).status ==
        kExitSatisfied);
  Run m = cli({"independent", model("magical"), "t(c)", "t(c)", "--prop", "H(c)"});
  CHECK(m.status == kExitViolated);
  CHECK(m.out.find("witness") != std::string::npos);
  CHECK(cli({"independent", model("magical"), "t(c)", "H(c)"}).status == kExitUsage);
  Run four = cli({"shortcut", model("bag4"), "--action", "a", "--prop", "Sph", "--prop", "Blk"});
  CHECK(four.status == kExitSatisfied);
  CHECK(four.out.find("warning") != std::string::npos);
  Run five = cli({"shortcut", model("bag5"), "--action", "a", "--props", formulas("bag") + ":sphere", "--prop", "Blk"});
  CHECK(five.status == kExitViolated);
  CHECK(five.out.find("1/5 != 6/25") != std::string::npos);
}

TEST_CASE("translate and adequacy") {
  std::string die = corpus_path("spaces/die.pspace");
  Run t = cli({"translate", die, "--event", "{f1} | {f2}"});
  CHECK(t.status == kExitSatisfied);
  CHECK(t.out.find("-- g({f1} | {f2}) = F1 \\/ F2") != std::string::npos);
  ModelSpec spec = parse_model(t.out);
  CHECK(spec.states.size() == 7);
  CHECK_NOTHROW(validate_model(spec));
  CHECK(cli({"adequacy", die, "--depth", "2", "--all"}).status == kExitSatisfied);
  Run e = cli({"adequacy", die, "--event", "~({f1} | {f2})"});
  CHECK(e.status == kExitSatisfied);
  CHECK(e.out.find("2/3") != std::string::npos);
  CHECK(cli({"adequacy", die, "--event", "{f9}"}).status == kExitUsage);
  CHECK(cli({"adequacy", die, "--depth", "0"}).status == kExitUsage);
}

TEST_CASE("the shipped corpus passes") {
  Run r = cli({"corpus", PTL_CORPUS_DIR});
  CHECK(r.status == kExitSatisfied);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("montyhall: 20/20 passed") != std::string::npos);
  CHECK(r.out.find("all fixtures passed") != std::string::npos);
}

TEST_CASE("a tampered expectation is reported") {
  fs::path dir = scratch_dir("tampered");
  fs::copy(PTL_CORPUS_DIR, dir, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  std::string manifest = read_file((dir / "montyhall.manifest").string());
  auto pos = manifest.find("stay_wins s0 expect 1/3");
  REQUIRE(pos != std::string::npos);
  manifest.replace(pos, std::string("stay_wins s0 expect 1/3").size(), "stay_wins s0 expect 1/4");
  std::ofstream(dir / "montyhall.manifest") << manifest;
  Run r = cli({"corpus", dir.string()});
  CHECK(r.status == kExitViolated);
  std::size_t failures = 0;
  for (auto at = r.out.find("FAIL "); at != std::string::npos; at = r.out.find("FAIL ", at + 1)) ++failures;
  CHECK(failures == 1);
  CHECK(r.out.find("(got 1/3)") != std::string::npos);
  CHECK(r.out.find("montyhall: 19/20 passed") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("an empty corpus is an error") {
  fs::path dir = scratch_dir("empty");
  Run r = cli({"corpus", dir.string()});
  CHECK(r.status == kExitUsage);
  CHECK(r.err.find("no fixtures") != std::string::npos);
  std::ofstream(dir / "bad.manifest") << "models/coin.ptlm formulas/coin.ptl:lands s0\n";
  CHECK(cli({"corpus", dir.string()}).status == kExitUsage);
  fs::remove_all(dir);
}
