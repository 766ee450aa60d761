#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padeclust::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitInvariant = 3;

/// Runs the command line `args` (args[0] is the program name) and returns the exit code.
/// Results go to `out`, diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace padeclust::cli
