#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ptl {

enum class Command { Validate, Eval, Check, Entail, Independent, Shortcut, Translate, Adequacy, Corpus };

/// Exit statuses shared by every command.
enum ExitStatus : int {
  kExitSatisfied = 0,
  kExitViolated = 1,
  kExitUsage = 2,  // usage, parse, type and model errors
  kExitEval = 3,   // evaluation errors such as a disabled action inside Q
};

struct RunConfig {
  Command command = Command::Check;
  std::vector<std::string> models;
  /// Inline formulas, `.ptl` files, or `file.ptl:name` for a single definition.
  std::vector<std::string> formulas;
  std::optional<std::string> state;
  bool global = false;
  bool json = false;
  bool decimal = false;

  std::string theory;      // entail
  std::string conclusion;  // entail
  std::vector<std::string> actions;  // independent (a, b), shortcut (a1..an)
  std::vector<std::string> props;    // inline propositions
  std::optional<std::string> props_file;

  std::string space;  // translate, adequacy
  std::string action = "a";
  std::vector<std::string> events;
  int depth = 3;
  bool all_exprs = false;

  std::string corpus_dir;
};

/// Runs one command. Reports go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line and runs it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs every `*.manifest` fixture list in `dir` (sorted by file name) and prints per-tag counts.
/// 0 when all pass, 1 on any mismatch, 2 when there are no fixtures or a manifest is malformed.
int run_corpus(const std::string& dir, std::ostream& out, std::ostream& err);

}  // namespace ptl
