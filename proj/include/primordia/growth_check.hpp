#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primordia/growth.hpp"

namespace primordia {

/// One line of the growth identity suite.
struct GrowthCheckLine {
    std::string name;
    int samples = 0;
    double worst = 0.0;   // worst error seen
    double tolerance = 0.0;
    bool passed = false;
};

/// Runs the full identity suite on deterministic random tensors
/// (condition number <= 1e3). Returns per-identity results.
std::vector<GrowthCheckLine> run_growth_checks(int samples = 1000, uint64_t seed = 2024);

/// Formats the results as an aligned pass/fail table.
std::string format_growth_table(const std::vector<GrowthCheckLine>& lines);

/// Deterministic well-conditioned test tensors.
Tensor3 random_deformation(uint64_t seed, uint64_t index);
Tensor3 random_rotation(uint64_t seed, uint64_t index);

}  // namespace primordia
