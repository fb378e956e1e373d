#pragma once

#include <string>
#include <vector>

#include "primordia/conditions.hpp"

namespace primordia {

struct AxisSpec {
    std::string name;
    double min = 0;
    double max = 0;
    int count = 0;

    double value_at(int i) const {
        if (count == 1) return min;
        return min + (max - min) * double(i) / double(count - 1);
    }
};

/// Condition values and flags over a 2-D parameter grid. Cell (i1, i2)
/// lives at index i1 * axis2.count + i2 (row-major in axis1). Failed
/// cells carry NaN in every column.
struct PatternSpaceGrid {
    AxisSpec axis1, axis2;
    CriticalMode mode = CriticalMode::Uncoupled;
    // per-cell condition values
    std::vector<double> condUC1, condUC2, condUC3;
    std::vector<double> condC1, condC2, condC3, condCDisc;
    // per-cell flags: 1.0 / 0.0 / NaN
    std::vector<double> patterning_uncoupled;
    std::vector<double> patterning_coupled;

    int cells() const { return axis1.count * axis2.count; }
    int index(int i1, int i2) const { return i1 * axis2.count + i2; }
};

/// Evaluates the patterning conditions per cell; the steady state is
/// recomputed for every cell. Cells are processed by a worker pool
/// (capped by the PRIMORDIA_THREADS environment variable) and written
/// into preallocated slots, so output is independent of thread count.
PatternSpaceGrid pattern_space(const ParameterSet& p, const AxisSpec& axis1,
                               const AxisSpec& axis2, CriticalMode mode,
                               const K2Window& win = {});

/// Worker count: PRIMORDIA_THREADS if set, else hardware concurrency.
int worker_count();

}  // namespace primordia
