#include "engine.hpp"

#include <algorithm>

namespace pyro {

namespace {

// One cell's next state under the synchronous rule. Burning cells consume one
// unit of fuel; alive cells lose resistance equal to the number of burning
// neighbours; dead cells stay dead. On regenerating grids a cell that is not
// burning before or after the step and has no burning neighbour recovers one
// unit of each resource, capped at the grid's stored values.
Cell transition(const Grid& g, const std::vector<Cell>& cur, RC rc) {
    const Cell s = cur[g.index(rc)];
    int b = 0;
    for (RC nb : g.neighbors(rc))
        if (phase_of(cur[g.index(nb)]) == Phase::Burning) ++b;
    Cell next = s;
    switch (phase_of(s)) {
        case Phase::Burning: next.y = s.y - 1; break;
        case Phase::Alive: next.x = std::max(s.x - b, 0); break;
        case Phase::Dead: break;
    }
    if (g.regen && b == 0 && phase_of(s) != Phase::Burning &&
        phase_of(next) != Phase::Burning) {
        const Cell init = g.at(rc);
        next.x = std::min(init.x, s.x + 1);
        next.y = std::min(init.y, s.y + 1);
    }
    return next;
}

}  // namespace

std::vector<Cell> initial_states(const Grid& grid) {
    std::vector<Cell> states = grid.cells;
    for (RC rc : grid.fire) ignite(grid, states, rc);
    return states;
}

void ignite(const Grid& grid, std::vector<Cell>& states, RC rc) {
    grid.check_bounds(rc);
    Cell& s = states[grid.index(rc)];
    if (s.y == 0)
        fail(ErrorCode::Input, "cannot ignite cell (" + std::to_string(rc.r) + "," +
                                   std::to_string(rc.c) + "): no fuel left");
    s.x = 0;
}

std::vector<Cell> step(const Grid& grid, const std::vector<Cell>& current) {
    std::vector<Cell> next(current.size());
    for (int r = 1; r <= grid.rows; ++r)
        for (int c = 1; c <= grid.cols; ++c)
            next[grid.index({r, c})] = transition(grid, current, {r, c});
    return next;
}

Trace run(const Grid& grid, int t_max) {
    if (t_max < 1) fail(ErrorCode::Input, "step budget must be at least 1");
    Trace trace;
    trace.snapshots.push_back({0, initial_states(grid)});
    for (int t = 0;; ++t) {
        std::vector<Cell> next = step(grid, trace.snapshots.back().states);
        if (next == trace.snapshots.back().states) {
            trace.reason = StopReason::Fixpoint;
            return trace;
        }
        if (t + 1 > t_max) {
            trace.reason = StopReason::StepBudgetExhausted;
            return trace;
        }
        trace.snapshots.push_back({t + 1, std::move(next)});
    }
}

std::vector<int> ignition_times_by_simulation(const Grid& grid) {
    if (grid.regen)
        fail(ErrorCode::Unsupported,
             "ignition times are only defined without regeneration");
    std::vector<int> times(grid.cells.size(), kNever);
    ActiveSimulator sim(grid);
    const std::vector<Cell>& s0 = sim.states();
    for (std::size_t i = 0; i < s0.size(); ++i)
        if (phase_of(s0[i]) == Phase::Burning) times[i] = 0;
    while (!sim.settled()) {
        for (RC rc : sim.advance()) {
            const std::size_t i = grid.index(rc);
            if (times[i] == kNever) times[i] = sim.time();
        }
    }
    return times;
}

ActiveSimulator::ActiveSimulator(const Grid& grid)
    : ActiveSimulator(grid, initial_states(grid)) {}

ActiveSimulator::ActiveSimulator(const Grid& grid, std::vector<Cell> states)
    : grid_(&grid), states_(std::move(states)) {
    if (states_.size() != grid.cells.size())
        fail(ErrorCode::Input, "state vector does not match grid dimensions");
    is_dirty_.assign(states_.size(), 0);
    stamp_.assign(states_.size(), 0);
    rescan_dirty();
}

void ActiveSimulator::rescan_dirty() {
    dirty_.clear();
    std::fill(is_dirty_.begin(), is_dirty_.end(), 0);
    burning_count_ = 0;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        const bool burning = phase_of(states_[i]) == Phase::Burning;
        if (burning) ++burning_count_;
        if (burning || states_[i] != grid_->cells[i])
            mark_dirty(static_cast<std::uint32_t>(i));
    }
}

void ActiveSimulator::mark_dirty(std::uint32_t idx) {
    if (!is_dirty_[idx]) {
        is_dirty_[idx] = 1;
        dirty_.push_back(idx);
    }
}

bool ActiveSimulator::settled() const {
    return grid_->regen ? dirty_.empty() : burning_count_ == 0;
}

void ActiveSimulator::ignite(RC rc) {
    pyro::ignite(*grid_, states_, rc);
    rescan_dirty();
}

const std::vector<RC>& ActiveSimulator::advance() {
    // Only burning cells, their neighbours, and cells below their stored
    // values can change; everything else maps to itself.
    candidates_.clear();
    ++epoch_;
    auto consider = [&](std::uint32_t idx) {
        if (stamp_[idx] != epoch_) {
            stamp_[idx] = epoch_;
            candidates_.push_back(idx);
        }
    };
    const int cols = grid_->cols;
    for (std::uint32_t idx : dirty_) {
        consider(idx);
        if (phase_of(states_[idx]) == Phase::Burning) {
            const RC rc{static_cast<int>(idx) / cols + 1, static_cast<int>(idx) % cols + 1};
            for (RC nb : grid_->neighbors(rc))
                consider(static_cast<std::uint32_t>(grid_->index(nb)));
        }
    }
    staged_.resize(candidates_.size());
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
        const std::uint32_t idx = candidates_[i];
        const RC rc{static_cast<int>(idx) / cols + 1, static_cast<int>(idx) % cols + 1};
        staged_[i] = transition(*grid_, states_, rc);
    }
    newly_ignited_.clear();
    for (std::uint32_t idx : dirty_) is_dirty_[idx] = 0;
    dirty_.clear();
    burning_count_ = 0;
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
        const std::uint32_t idx = candidates_[i];
        const bool was_burning = phase_of(states_[idx]) == Phase::Burning;
        states_[idx] = staged_[i];
        const bool now_burning = phase_of(states_[idx]) == Phase::Burning;
        if (now_burning) ++burning_count_;
        if (now_burning && !was_burning) {
            const RC rc{static_cast<int>(idx) / cols + 1, static_cast<int>(idx) % cols + 1};
            newly_ignited_.push_back(rc);
        }
        if (now_burning || states_[idx] != grid_->cells[idx]) mark_dirty(idx);
    }
    ++t_;
    return newly_ignited_;
}

}  // namespace pyro
