#pragma once

#include <string>
#include <vector>

#include "ctsc/harness.hpp"

namespace ctsc {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Structural invariants of both allocators checked on `n_instances` fresh
/// draws of `cfg` (closed-form checks) and on up to `n_iterative` of them for
/// the iterative baseline.
std::vector<CheckResult> run_invariant_suite(const SystemConfig& cfg, std::uint64_t seed,
                                             std::size_t n_instances, std::size_t n_iterative,
                                             const TrialOptions& opts = {});

}  // namespace ctsc
