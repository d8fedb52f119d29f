#pragma once

#include <cstdint>
#include <vector>

#include "lattice.hpp"

namespace pyro {

struct GridSnapshot {
    int t = 0;
    std::vector<Cell> states;
};

enum class StopReason { Fixpoint, StepBudgetExhausted };

struct Trace {
    std::vector<GridSnapshot> snapshots;  // times 0..T
    StopReason reason = StopReason::Fixpoint;
};

// Stored cell values with the grid's fire marks ignited.
std::vector<Cell> initial_states(const Grid& grid);

// Sets x := 0 at rc. Igniting a burning cell is a no-op; a dead cell is an error.
void ignite(const Grid& grid, std::vector<Cell>& states, RC rc);

// One synchronous transition of every cell.
std::vector<Cell> step(const Grid& grid, const std::vector<Cell>& current);

// Runs from the ignited initial state until the state repeats or t_max steps
// have been taken, whichever comes first. t_max must be at least 1.
Trace run(const Grid& grid, int t_max);

// Sentinel for "this cell never ignites".
inline constexpr int kNever = -1;

// First time each cell starts burning, by direct simulation to the fixpoint.
// Initially burning cells get 0, cells the fire never reaches get kNever.
// Not defined for regenerating grids.
std::vector<int> ignition_times_by_simulation(const Grid& grid);

// Sparse simulator that only touches cells that can change this step:
// burning cells, their neighbours, and (with regeneration) cells below their
// stored initial values. Matches step() exactly.
class ActiveSimulator {
public:
    explicit ActiveSimulator(const Grid& grid);
    ActiveSimulator(const Grid& grid, std::vector<Cell> states);

    int time() const { return t_; }
    const std::vector<Cell>& states() const { return states_; }
    const Grid& grid() const { return *grid_; }

    // No further step can change anything: with regeneration every cell is back
    // at its stored value and nothing burns; without it, nothing burns.
    bool settled() const;

    void ignite(RC rc);

    // Advances one step and returns the cells that just started burning.
    const std::vector<RC>& advance();

private:
    void rescan_dirty();
    void mark_dirty(std::uint32_t idx);

    const Grid* grid_;
    std::vector<Cell> states_;
    int t_ = 0;
    std::vector<std::uint32_t> dirty_;     // indices that differ from stored or burn
    std::vector<std::uint8_t> is_dirty_;
    std::vector<std::uint32_t> stamp_;     // visited marks for candidate dedupe
    std::uint32_t epoch_ = 0;
    std::vector<std::uint32_t> candidates_;
    std::vector<Cell> staged_;
    std::vector<RC> newly_ignited_;
    std::size_t burning_count_ = 0;
};

}  // namespace pyro
