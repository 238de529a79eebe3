#pragma once

#include <iosfwd>

namespace heegcone::cli {

/// Runs one subcommand. Data goes to `out` (or --out), progress and errors to `log`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace heegcone::cli
