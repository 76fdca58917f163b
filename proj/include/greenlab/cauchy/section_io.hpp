#pragma once

#include <string>

#include "greenlab/cauchy/grid.hpp"

namespace greenlab::cauchy {

/// Writes `path` as CSV (t, theta, value) with 17 significant digits and `path`.json
/// holding the grid descriptor and the support box.
void write_section(const std::string& path, const GridSection& u);

/// Reads values written by write_section back onto a compatible grid.
GridSection read_section(const std::string& path, GridPtr grid);

}  // namespace greenlab::cauchy
