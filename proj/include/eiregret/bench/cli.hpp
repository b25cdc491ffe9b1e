#pragma once

namespace eiregret::bench {

// Entry point behind main(). Exit codes: 0 success, 1 validation/usage
// error, 2 runtime failure (IO, numerical breakdown, failed checks).
int run_cli(int argc, const char* const* argv);

}  // namespace eiregret::bench
