#pragma once

#include <utility>
#include <vector>

#include "lattice.hpp"

namespace pyro {

// Edge classes along a separating walk. The first edge that enters a cell's
// border pays R, each further left turn around the same cell escalates one
// class. Costs are chosen so a contiguous arc of m edges around one cell sums
// to max(0, m*y + 1 - x), the increment that makes the cell survive m rounds
// of full neighbour fire.
enum class EdgeType { R, L1, L2, L3, L4, L5 };

// Fortification a single edge of the given class adds for a cell with
// resistance x and fuel y. Requires 0 < x <= 2y + 1.
int local_cost(EdgeType type, int x, int y);

// Net number of right turns accumulated along a walk's edge classes.
int winding_of(const std::vector<EdgeType>& types);

// Scaled corner coordinate of the hex border graph: cell (r,c) has centre
// (2c + (r odd), 3r), corners at offsets (0,-2) (1,-1) (1,1) (0,2) (-1,1)
// (-1,-1), with the vertical axis growing downwards.
struct XY {
    int x = 0;
    int y = 0;
    auto operator<=>(const XY&) const = default;
};

struct SelectivePlan {
    int cost = 0;                    // total resistance added
    std::vector<XY> walk;            // corner vertices, bottom boundary to top
    std::vector<EdgeType> edge_types;
    std::vector<RC> cells;           // cell on the left of each walk edge
    std::vector<std::pair<RC, int>> increments;  // per-cell resistance to add
    int winding = 0;
};

// Hex grid, no regeneration, fire in the whole rightmost column, village in
// the whole leftmost column, the same fuel y >= 1 everywhere, and every
// non-fire cell with 0 < x <= 2y + 1.
void validate_selective_instance(const Grid& grid);

// Cheapest per-cell fortification that walls the village off from the fire,
// found as a shortest left-hand walk across the border graph.
SelectivePlan min_selective_fortification(const Grid& grid);

// Applies the increments, burns the fire column to the fixpoint, and reports
// whether the whole village column survives.
bool validate_plan(const Grid& grid, const std::vector<std::pair<RC, int>>& increments);

}  // namespace pyro
