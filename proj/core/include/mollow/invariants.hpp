#pragma once

#include <string>
#include <vector>

namespace mollow {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Structural and physical invariants on small instances: operator algebra,
// vectorization, trace and Hermiticity preservation of every model,
// superoperator versus direct right-hand side, steady-state physicality,
// uniqueness, and agreement with the closed-form photon number.
// Deterministic: random test matrices come from a fixed seed.
std::vector<CheckResult> run_invariant_suite();

}  // namespace mollow
