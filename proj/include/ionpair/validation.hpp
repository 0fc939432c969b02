#pragma once

#include <string>
#include <vector>

#include "ionpair/state.hpp"

namespace ionpair {

struct CheckResult {
    std::string name;
    bool passed;
    double measured;   // the deviation (or value) actually observed
    double threshold;  // what it was held against
    std::string detail;
};

struct ValidationOptions {
    int q_min = 2;
    int q_max = 8;
    double tol = 1e-10;   // oracle-equivalence tolerance
    bool inject_fault = false;  // corrupt one inversion sign; the degeneracy check must then fail
    Exec policy = Exec::Auto;
};

/// Unitarity, conjugation-route equivalence, factored-vs-dense agreement,
/// the 3-qubit twin-amplitude lock, and the recurrence structure.
std::vector<CheckResult> run_validation_checks(const ValidationOptions& opts);

}  // namespace ionpair
