#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secmom::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes.
enum Exit : int { ok = 0, usage = 1, consistency = 2 };

/// Runs one subcommand; args excludes the program name. Results go to `out`
/// unless --output names a file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secmom::cli
