#pragma once

#include <iosfwd>

namespace isolde {

// Exit codes shared by all subcommands:
//   0  isolated (decide) / success (other commands)
//   1  non-isolated (decide) / cross-check mismatch (oracle)
//   2  input error (bad arguments, unreadable or malformed problem files)
//   3  resource limit (search budgets, capacity ceilings)
inline constexpr int kExitIsolated = 0;
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitNonIsolated = 1;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitResource = 3;

/// Full command-line driver: parses argv, runs the subcommand, writes one
/// JSON document to `out` (diagnostics go to `err`), and returns the exit
/// code. Output bytes are deterministic for a given input.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isolde
