#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "primordia/pattern_space.hpp"
#include "primordia/stability.hpp"

namespace primordia {

/// All CSV floats print with 17 significant digits, UTF-8, LF endings.
std::string format_g17(double v);

void write_steady_csv(std::ostream& os, const SteadyState& s);

/// header: k2,max_re,re_0..,im_0.. with one row per grid point.
void write_dispersion_csv(std::ostream& os, const std::vector<DispersionPoint>& pts);

/// header: axis names then condition values and flags, row-major in axis1.
void write_patternspace_csv(std::ostream& os, const PatternSpaceGrid& g);

}  // namespace primordia
