#pragma once

#include <iosfwd>

namespace zsg {

struct SelftestResult {
  int passed = 0;
  int failed = 0;
  double seconds = 0.0;

  bool ok() const { return failed == 0; }
};

// Runs the full acceptance checklist, printing one PASS/FAIL line per
// criterion. Deterministic; every tolerance is pinned in the checks.
SelftestResult run_selftest(std::ostream& out);

}  // namespace zsg
