#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sgf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFalse = 2;

/// Runs one command. args excludes the program name. The report goes to
/// --output when given, otherwise to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a/b" with positive integers and 0 < a/b < 1; decimals and bare integers are rejected.
std::string normalize_p(const std::string& text);

}  // namespace sgf::cli
