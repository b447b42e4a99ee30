#pragma once

#include <string>
#include <vector>

namespace uavcov {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Cross-checks the analytic pipeline against independent oracles at the
// default parameter set: hypergeometric series vs Euler integrals, closed
// forms vs direct quadrature, transform derivatives vs finite differences,
// generating-functional results vs brute-force field sampling, and
// association classes vs simulation. Deterministic; runs in well under two
// minutes.
std::vector<CheckResult> run_selftest();

} // namespace uavcov
