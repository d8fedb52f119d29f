#include "propagate.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

namespace pyro {

int predicted_ignition_time(int x, std::span<const BurningInterval> neighbors) {
    if (x < 0) fail(ErrorCode::Input, "ignition resistance must be non-negative");
    if (x == 0) return 0;
    long long total = 0;
    // (time, slope delta): damage accrues at +1 per burning neighbour.
    std::vector<std::pair<int, int>> events;
    events.reserve(neighbors.size() * 2);
    for (const BurningInterval& n : neighbors) {
        if (n.start < 0) fail(ErrorCode::Input, "burning interval starts before t=0");
        if (n.fuel <= 0) continue;
        total += n.fuel;
        events.emplace_back(n.start, +1);
        events.emplace_back(n.start + n.fuel, -1);
    }
    if (total < x) return kNever;
    std::sort(events.begin(), events.end());
    long long damage = 0;
    int slope = 0;
    int t_prev = events.front().first;
    std::size_t i = 0;
    while (i < events.size()) {
        const int tt = events[i].first;
        const long long at_tt = damage + static_cast<long long>(slope) * (tt - t_prev);
        if (slope > 0 && at_tt >= x) {
            const long long need = x - damage;
            return t_prev + static_cast<int>((need + slope - 1) / slope);
        }
        damage = at_tt;
        t_prev = tt;
        while (i < events.size() && events[i].first == tt) slope += events[i++].second;
    }
    fail(ErrorCode::Internal, "interval sweep missed the crossing point");
}

std::vector<int> fast_fire_propagation(const Grid& grid, PropagationStats* stats) {
    if (grid.regen)
        fail(ErrorCode::Unsupported,
             "fire propagation times are only defined without regeneration");
    const std::vector<Cell> start = initial_states(grid);
    const std::size_t n = start.size();
    std::vector<int> tau(n, kNever);
    std::vector<std::uint8_t> settled(n, 0);
    std::vector<int> pending(n, std::numeric_limits<int>::max());

    // Min-heap on (time, row, col); stale entries are skipped on extraction.
    using Entry = std::tuple<int, int, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    int live = 0;
    PropagationStats st;
    auto push = [&](int rho, RC rc) {
        const std::size_t idx = grid.index(rc);
        if (rho >= pending[idx]) return;
        if (pending[idx] == std::numeric_limits<int>::max()) ++live;
        pending[idx] = rho;
        heap.emplace(rho, rc.r, rc.c);
        st.max_frontier = std::max(st.max_frontier, live);
    };

    for (int r = 1; r <= grid.rows; ++r)
        for (int c = 1; c <= grid.cols; ++c)
            if (phase_of(start[grid.index({r, c})]) == Phase::Burning) push(0, {r, c});

    std::vector<BurningInterval> intervals;
    while (!heap.empty()) {
        const auto [rho, r, c] = heap.top();
        heap.pop();
        const RC rc{r, c};
        const std::size_t idx = grid.index(rc);
        if (settled[idx]) continue;
        settled[idx] = 1;
        tau[idx] = rho;
        --live;
        ++st.iterations;
        ++st.settled_count;
        for (RC nb : grid.neighbors(rc)) {
            const std::size_t nidx = grid.index(nb);
            if (settled[nidx]) continue;
            const Cell s = start[nidx];
            if (s.y == 0 || s.x == 0) continue;  // dead, or an unsettled source
            intervals.clear();
            for (RC m : grid.neighbors(nb)) {
                const std::size_t midx = grid.index(m);
                if (settled[midx])
                    intervals.push_back({tau[midx], start[midx].y});
            }
            const int predicted = predicted_ignition_time(s.x, intervals);
            if (predicted != kNever) push(predicted, nb);
        }
    }
    if (stats) *stats = st;
    return tau;
}

}  // namespace pyro
