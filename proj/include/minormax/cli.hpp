#pragma once

#include <ostream>

namespace minormax {

/// Entry point of the `minormax` tool. Subcommands: simulate, cdf,
/// quantile, verify-lemmas, ks, consistency. Returns 0 on success, 2 on a
/// usage error (bad flags or out-of-domain values), 1 on runtime failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minormax
