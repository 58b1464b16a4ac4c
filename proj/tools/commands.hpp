#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "surf_file.hpp"

namespace surfdist::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_assertion_failed = 1,
  exit_parse_failure = 2,
  exit_precondition = 3,
  exit_consistency = 4,
};

struct Options {
  std::string space = "m5";  // m5, m6 or m6hat
  std::optional<std::string> s0;
  std::string bundle = "b3";  // b3 or e4
  bool json = false;
};

struct Outcome {
  int exit_code = exit_ok;
  std::string text;
};

using Json = nlohmann::ordered_json;

const std::vector<std::string>& command_names();

/// Runs one command. `target` is a .surf path or `catalog:<name>`; for the
/// catalog command it is an optional entry name. Never throws.
Outcome run(const std::string& command, const std::optional<std::string>& target, const Options& options);

/// The report object for a surface; `ok` is cleared when an assertion fails.
Json build_report(const Surface& surface, const Options& options, bool& ok);

}  // namespace surfdist::cli
