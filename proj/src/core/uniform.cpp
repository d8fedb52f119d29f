#include "uniform.hpp"

#include <algorithm>

#include "engine.hpp"
#include "propagate.hpp"

namespace pyro {

void validate_uniform_instance(const Grid& grid) {
    validate_grid(grid);
    if (grid.regen)
        fail(ErrorCode::Input, "uniform fortification expects a non-regenerating grid");
    if (grid.cols < 3)
        fail(ErrorCode::Input,
             "uniform fortification needs at least one column between village and fire");
    auto column_marked = [&](const std::vector<RC>& marks, int col) {
        if (static_cast<int>(marks.size()) != grid.rows) return false;
        std::vector<RC> sorted = marks;
        std::sort(sorted.begin(), sorted.end());
        for (int r = 1; r <= grid.rows; ++r)
            if (sorted[static_cast<std::size_t>(r - 1)] != RC{r, col}) return false;
        return true;
    };
    if (!column_marked(grid.fire, grid.cols))
        fail(ErrorCode::Input, "fire must cover exactly the rightmost column");
    if (!column_marked(grid.village, 1))
        fail(ErrorCode::Input, "village must cover exactly the leftmost column");
    for (RC rc : grid.fire)
        if (grid.at(rc).y == 0)
            fail(ErrorCode::Input, "fire column cell (" + std::to_string(rc.r) + "," +
                                       std::to_string(rc.c) + ") has no fuel");
    // Between the two marked columns nothing may be burning on its own,
    // otherwise the fire set is not what the marks declare.
    for (int r = 1; r <= grid.rows; ++r) {
        for (int c = 2; c < grid.cols; ++c) {
            const Cell s = grid.at({r, c});
            if (s.x == 0 && s.y > 0)
                fail(ErrorCode::Input, "cell (" + std::to_string(r) + "," +
                                           std::to_string(c) +
                                           ") is burning but lies outside the fire column");
        }
    }
}

int max_neighbor_fuel_sum(const Grid& grid) {
    int best = 0;
    for (int r = 1; r <= grid.rows; ++r) {
        for (int c = 1; c <= grid.cols; ++c) {
            int sum = 0;
            for (RC nb : grid.neighbors({r, c})) sum += grid.at(nb).y;
            best = std::max(best, sum);
        }
    }
    return best;
}

namespace {

Grid raised_everywhere(const Grid& grid, int k) {
    Grid out = grid;
    for (Cell& s : out.cells) s.x += k;
    return out;
}

// Final phases follow directly from the ignition-time map: a cell ends dead
// exactly when the fire reached it or it never had fuel.
bool ends_dead(const Grid& grid, const std::vector<int>& tau, RC rc) {
    return tau[grid.index(rc)] != kNever || grid.at(rc).y == 0;
}

UniformDecision decision_from_times(const Grid& grid, const std::vector<int>& tau) {
    UniformDecision out;
    for (RC rc : grid.village)
        if (tau[grid.index(rc)] != kNever) return out;
    out.protects = true;

    // Flood the surviving component around the village, then pick out the
    // cells of it that touch a burnt-out cell.
    std::vector<std::uint8_t> seen(grid.cells.size(), 0);
    std::vector<RC> stack;
    for (RC rc : grid.village) {
        if (!ends_dead(grid, tau, rc) && !seen[grid.index(rc)]) {
            seen[grid.index(rc)] = 1;
            stack.push_back(rc);
        }
    }
    std::vector<RC> component;
    while (!stack.empty()) {
        const RC rc = stack.back();
        stack.pop_back();
        component.push_back(rc);
        for (RC nb : grid.neighbors(rc)) {
            if (!seen[grid.index(nb)] && !ends_dead(grid, tau, nb)) {
                seen[grid.index(nb)] = 1;
                stack.push_back(nb);
            }
        }
    }
    for (RC rc : component) {
        for (RC nb : grid.neighbors(rc)) {
            if (ends_dead(grid, tau, nb)) {
                out.border.push_back(rc);
                break;
            }
        }
    }
    std::sort(out.border.begin(), out.border.end());

    // Single chain check: connected, reaching both the top and bottom rows.
    if (!out.border.empty()) {
        std::vector<std::uint8_t> in_border(grid.cells.size(), 0);
        for (RC rc : out.border) in_border[grid.index(rc)] = 1;
        std::vector<RC> work{out.border.front()};
        std::vector<std::uint8_t> visited(grid.cells.size(), 0);
        visited[grid.index(out.border.front())] = 1;
        std::size_t reached = 0;
        bool top = false, bottom = false;
        while (!work.empty()) {
            const RC rc = work.back();
            work.pop_back();
            ++reached;
            top = top || rc.r == 1;
            bottom = bottom || rc.r == grid.rows;
            for (RC nb : grid.neighbors(rc)) {
                if (in_border[grid.index(nb)] && !visited[grid.index(nb)]) {
                    visited[grid.index(nb)] = 1;
                    work.push_back(nb);
                }
            }
        }
        out.single_path = reached == out.border.size() && top && bottom;
    }
    return out;
}

}  // namespace

UniformDecision uniform_decision(const Grid& grid, int k) {
    validate_uniform_instance(grid);
    if (k < 0) fail(ErrorCode::Input, "fortification amount must be non-negative");
    const Grid raised = raised_everywhere(grid, k);
    const std::vector<int> tau = fast_fire_propagation(raised);
    return decision_from_times(grid, tau);
}

UniformPlan min_uniform_fortification(const Grid& grid) {
    validate_uniform_instance(grid);
    for (RC rc : grid.village) {
        const Cell s = grid.at(rc);
        if (s.y == 0)
            fail(ErrorCode::Infeasible, "village cell (" + std::to_string(rc.r) + "," +
                                            std::to_string(rc.c) + ") has no fuel left");
        if (s.x == 0)
            fail(ErrorCode::Infeasible, "village cell (" + std::to_string(rc.r) + "," +
                                            std::to_string(rc.c) + ") is already burning");
    }

    UniformDecision best = uniform_decision(grid, 0);
    int k_star = 0;
    if (!best.protects) {
        // Protection is monotone in k, and max_neighbor_fuel_sum always
        // suffices because every village cell keeps positive resistance.
        int lo = 1, hi = max_neighbor_fuel_sum(grid);
        UniformDecision at_hi = uniform_decision(grid, hi);
        if (!at_hi.protects)
            fail(ErrorCode::Internal, "fuel-sum bound failed to protect the village");
        best = at_hi;
        k_star = hi;
        while (lo < k_star) {
            const int mid = lo + (k_star - lo) / 2;
            UniformDecision at_mid = uniform_decision(grid, mid);
            if (at_mid.protects) {
                best = std::move(at_mid);
                k_star = mid;
            } else {
                lo = mid + 1;
            }
        }
    }

    // The plan only spends fortification on the border; confirm by simulation
    // that this still keeps the village alive.
    Grid fortified = grid;
    for (RC rc : best.border) fortified.at(rc).x += k_star;
    ActiveSimulator sim(fortified);
    while (!sim.settled()) sim.advance();
    for (RC rc : grid.village) {
        if (phase_of(sim.states()[grid.index(rc)]) != Phase::Alive)
            fail(ErrorCode::Internal,
                 "border-only fortification failed to protect the village");
    }
    return {k_star, std::move(best.border), best.single_path};
}

}  // namespace pyro
