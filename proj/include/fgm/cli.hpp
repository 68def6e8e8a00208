#ifndef FGM_CLI_HPP
#define FGM_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fgm/checks.hpp"

namespace fgm {

// Options for the `verify` subcommand; `which` holds theorem ids from the
// registry (empty means the whole registry).
struct VerifyOptions {
  std::vector<std::string> which;
  std::string suite = "default";  // "default", "quick", or comma-separated
                                  // group specs
  std::uint64_t seed = 1;
  double tol = 1e-4;
  int jobs = 1;
};

struct VerifyOutcome {
  std::vector<CheckRow> rows;
  bool all_pass = false;
  bool kappa_requested = false;
  std::string report_json;  // schema-versioned, no timestamps
  std::string summary_csv;
  std::string text_table;   // human table, with the kappa statistics and the
                            // failure diagnostics when applicable
};

// Runs the requested checks over the suite. Deterministic given
// (which, suite, seed, tol): per-item seeds are derived from the position in
// the registry and the suite, so the worker count never changes results.
VerifyOutcome run_verify(const VerifyOptions& opts);

// Entire command-line surface. Returns the process exit code: 0 when all
// requested checks pass, 1 on verification failure, 2 on usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace fgm

#endif  // FGM_CLI_HPP
