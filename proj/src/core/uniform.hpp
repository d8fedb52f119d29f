#pragma once

#include <vector>

#include "lattice.hpp"

namespace pyro {

// Instances fortified here have the fire in the entire rightmost column, the
// village in the entire leftmost column, at least one column in between, and
// no regeneration.
void validate_uniform_instance(const Grid& grid);

// Largest total fuel adjacent to any single cell. No cell can ever take more
// damage than this, so it bounds the useful fortification amount.
int max_neighbor_fuel_sum(const Grid& grid);

struct UniformDecision {
    bool protects = false;
    // Cells of the village's surviving component that touch a burnt-out cell,
    // sorted by (row, col). This is where the fortification was actually spent.
    std::vector<RC> border;
    // True when the border is one connected chain from the top row to the
    // bottom row.
    bool single_path = false;
};

// Does raising every cell's resistance by k keep the whole village alive?
UniformDecision uniform_decision(const Grid& grid, int k);

struct UniformPlan {
    int k = 0;
    std::vector<RC> border;
    bool single_path = false;
};

// Smallest uniform increment that protects the village. Throws Infeasible when
// a village cell is already burning or out of fuel. The returned border is
// re-verified by full simulation: raising only those cells by k keeps the
// village alive.
UniformPlan min_uniform_fortification(const Grid& grid);

}  // namespace pyro
