#pragma once

#include <string>
#include <vector>

#include "lattice.hpp"

namespace pyro {

// Renders one snapshot as SVG: burning cells red, alive white, dead grey,
// village cells blue while they stand. Output bytes depend only on the
// inputs. With labels on, every cell shows its "x;y" state.
std::string render_svg(const Grid& grid, const std::vector<Cell>& states,
                       bool labels = false);

}  // namespace pyro
