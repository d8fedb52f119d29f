#pragma once

#include <span>
#include <vector>

#include "engine.hpp"
#include "lattice.hpp"

namespace pyro {

// A neighbour that ignites at time `start` and burns for `fuel` rounds,
// dealing one point of damage per round while it burns.
struct BurningInterval {
    int start = 0;
    int fuel = 0;
};

// Smallest t at which the accumulated damage sum(max(0, min(t - start, fuel)))
// reaches x, or kNever if the total fuel cannot. x == 0 gives 0.
int predicted_ignition_time(int x, std::span<const BurningInterval> neighbors);

struct PropagationStats {
    int settled_count = 0;  // cells that got a finite ignition time
    int max_frontier = 0;   // peak number of live queue entries
    int iterations = 0;     // queue extractions that settled a cell
};

// Ignition time of every cell without stepping the automaton: cells are
// settled in increasing time order, re-predicting each neighbour from the
// intervals of already-settled cells. Equals ignition_times_by_simulation.
// Not defined for regenerating grids.
std::vector<int> fast_fire_propagation(const Grid& grid, PropagationStats* stats = nullptr);

}  // namespace pyro
