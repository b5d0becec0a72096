#pragma once

#include <iosfwd>

namespace solvagen::cli {

// Whole command line in, exit code out. The document goes to `out` (or the
// --output file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace solvagen::cli
