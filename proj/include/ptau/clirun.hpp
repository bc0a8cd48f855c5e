#pragma once

// Reusable command-line driver: parses an argument vector, runs the requested
// computation, and renders a deterministic JSON or CSV report.  Kept out of
// main() so tests can drive the full CLI surface in-process.

#include <string>
#include <vector>

namespace ptau {

struct CliOutcome {
  int exit_code = 0;   // 0 ok, 2 validation, 3 certification, 4 consensus/check failure
  std::string report;  // rendered JSON or CSV (also written to --out when given)
};

// args excludes the program name.
CliOutcome run_cli(const std::vector<std::string>& args);

}  // namespace ptau
