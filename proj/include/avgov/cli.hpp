#pragma once

// Command dispatch behind the `avgov` executable.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace avgov::cli {

enum ExitCode : int {
  kOk = 0,
  kClaimFailed = 1,
  kValidation = 2,
  kGuard = 3,
  kUsage = 64,
};

struct CommandInfo {
  std::string_view name;
  std::string_view summary;
  // Library operations this command is the entry point for.
  std::vector<std::string_view> operations;
};

const std::vector<CommandInfo>& command_table();

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reals with 12 significant digits (round-half-even on the binary value).
std::string format_number(double value);

/// Rounds every real in `doc` to 12 significant digits and replaces
/// non-finite values with the strings "inf", "-inf" and "nan".
nlohmann::json canonical(nlohmann::json doc);

}  // namespace avgov::cli
