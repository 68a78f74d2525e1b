#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ftap::cli {

enum ExitCode : int { Affirmative = 0, CertifiedNegative = 1, InputError = 2 };

/// Runs one command. `args` excludes the program name. The report goes to
/// `out`, diagnostics to `err`.
///
///   check <scenario>
///   esm <scenario>
///   kmin --mode bstar|b|cstarstar [--q <measure>] <scenario>
///   band --k <rational> [--q <measure>] <scenario>
///   couple <scenario>
///   case <name> [--seed ...] [case parameters]
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ftap::cli
