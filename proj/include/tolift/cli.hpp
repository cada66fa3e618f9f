#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tolift::cli {

enum ExitCode : int {
  verified = 0,
  verification_failed = 1,
  usage_error = 2,
};

struct RunConfig {
  std::string command;
  std::optional<std::string> algebra;
  std::optional<std::string> identities;
  std::optional<std::string> pairs;
  std::optional<std::string> relation;
  std::optional<std::string> lift;
  std::optional<std::string> out;
  std::optional<std::string> sig;
  std::optional<std::size_t> cap_n;
  std::optional<std::size_t> cap_assignments;
  std::optional<unsigned long> seed;
};

// Runs one command; `args` excludes the program name. Normal output goes to
// `out` (or the --out file), diagnostics to `err`.
int run(std::vector<std::string> const& args, std::ostream& out,
        std::ostream& err);

}  // namespace tolift::cli
