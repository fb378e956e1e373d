#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace primordia {

/// Subcommand front end: steady | dispersion | patternspace | simulate
/// | growth-check. Returns 0 on success, 1 on validation errors
/// (including unknown subcommands, which print usage), 2 on numerical
/// failures.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace primordia
