#include "selective.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <set>

#include "engine.hpp"
#include "uniform.hpp"

namespace pyro {

int local_cost(EdgeType type, int x, int y) {
    if (y < 1 || x < 1 || x > 2 * y + 1)
        fail(ErrorCode::Unsupported,
             "edge cost is only defined for 0 < x <= 2y+1 with positive fuel");
    switch (type) {
        case EdgeType::R: return std::max(0, y + 1 - x);
        case EdgeType::L1: return std::min(y, 2 * y + 1 - x);
        default: return y;
    }
}

int winding_of(const std::vector<EdgeType>& types) {
    int w = 0;
    for (EdgeType t : types) w += t == EdgeType::R ? 1 : -1;
    return w;
}

namespace {

XY hex_center(RC rc) { return {2 * rc.c + (rc.r & 1), 3 * rc.r}; }

struct Corners {
    XY top, ur, lr, bottom, ll, ul;
};

Corners hex_corners(RC rc) {
    const XY c = hex_center(rc);
    return {{c.x, c.y - 2}, {c.x + 1, c.y - 1}, {c.x + 1, c.y + 1},
            {c.x, c.y + 2}, {c.x - 1, c.y + 1}, {c.x - 1, c.y - 1}};
}

// Corner graph of the whole grid. Every directed edge knows the cell on its
// left; walking it counterclockwise on screen keeps the cell on the left.
struct Border {
    std::map<std::pair<XY, XY>, RC> left_of;
    std::map<XY, std::set<XY>> adj;

    Border(int h, int w) {
        for (int r = 1; r <= h; ++r) {
            for (int c = 1; c <= w; ++c) {
                const Corners k = hex_corners({r, c});
                const std::array<XY, 6> seq{k.top, k.ul, k.ll, k.bottom, k.lr, k.ur};
                for (std::size_t i = 0; i < seq.size(); ++i) {
                    const XY v = seq[i];
                    const XY u = seq[(i + 1) % seq.size()];
                    left_of[{v, u}] = {r, c};
                    adj[v].insert(u);
                    adj[u].insert(v);
                }
            }
        }
    }
};

// Row 1 centres sit at scaled height 3, so its upper corners have y <= 2.
bool at_top_boundary(XY v) { return v.y <= 2; }

struct WalkState {
    XY v;  // current corner
    XY p;  // previous corner
    int type = 0;
    int wind = 0;
    auto operator<=>(const WalkState&) const = default;
};

struct SearchResult {
    int cost = 0;
    std::vector<XY> verts;
    std::vector<EdgeType> types;
};

std::optional<SearchResult> search_separating_walk(const Grid& grid, int y) {
    const int h = grid.rows;
    const int w = grid.cols;
    const int fire_col = w;
    const int wmax = 6 * std::min(h, w);
    const Border border(h, w);

    auto usable = [&](XY v, XY u) {
        auto it = border.left_of.find({v, u});
        return it != border.left_of.end() && it->second.c != fire_col;
    };

    using QueueEntry = std::pair<int, WalkState>;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> pq;
    std::map<WalkState, int> best;
    std::set<WalkState> settled;
    std::map<WalkState, std::optional<WalkState>> parent;

    auto relax = [&](int cost, WalkState st, std::optional<WalkState> from) {
        if (settled.count(st)) return;
        auto it = best.find(st);
        if (it == best.end() || cost < it->second) {
            best[st] = cost;
            parent[st] = from;
            pq.emplace(cost, st);
        }
    };

    // Start on the upward edge along the east side of each bottom-row cell.
    for (int c = 1; c <= w; ++c) {
        const RC cell{h, c};
        const Corners k = hex_corners(cell);
        if (!usable(k.lr, k.ur)) continue;
        relax(local_cost(EdgeType::R, grid.at(cell).x, y), {k.ur, k.lr, 0, 1},
              std::nullopt);
    }

    std::optional<WalkState> goal;
    int goal_cost = 0;
    while (!pq.empty()) {
        const auto [cost, st] = pq.top();
        pq.pop();
        if (settled.count(st)) continue;
        settled.insert(st);
        if (at_top_boundary(st.v)) {
            if (st.wind == 1) {
                goal = st;
                goal_cost = cost;
                break;
            }
            continue;
        }
        const XY d_in{st.v.x - st.p.x, st.v.y - st.p.y};
        for (const XY u : border.adj.at(st.v)) {
            if (u == st.p || !usable(st.v, u)) continue;
            const XY d_out{u.x - st.v.x, u.y - st.v.y};
            const int cr = d_in.x * d_out.y - d_in.y * d_out.x;
            if (cr == 0)
                fail(ErrorCode::Internal, "straight continuation on the border graph");
            int type;
            int wind;
            if (cr > 0) {  // right turn, enters the next cell's border
                if (st.wind >= wmax) continue;
                type = 0;
                wind = st.wind + 1;
            } else {  // left turn, keeps circling the same cell
                if (st.type == 5 || st.wind <= -wmax) continue;
                type = st.type + 1;
                wind = st.wind - 1;
            }
            const RC cell = border.left_of.at({st.v, u});
            relax(cost + local_cost(static_cast<EdgeType>(type), grid.at(cell).x, y),
                  {u, st.v, type, wind}, st);
        }
    }
    if (!goal) return std::nullopt;

    std::vector<WalkState> chain;
    for (std::optional<WalkState> cur = goal; cur; cur = parent.at(*cur))
        chain.push_back(*cur);
    std::reverse(chain.begin(), chain.end());
    SearchResult out;
    out.cost = goal_cost;
    out.verts.push_back(chain.front().p);
    for (const WalkState& s : chain) {
        out.verts.push_back(s.v);
        out.types.push_back(static_cast<EdgeType>(s.type));
    }
    return out;
}

}  // namespace

void validate_selective_instance(const Grid& grid) {
    validate_uniform_instance(grid);
    if (grid.lattice != Lattice::Hex)
        fail(ErrorCode::Unsupported, "selective fortification is defined on hex grids");
    const int y = grid.cells.front().y;
    if (y < 1)
        fail(ErrorCode::Unsupported, "selective fortification needs positive fuel");
    for (const Cell& s : grid.cells)
        if (s.y != y)
            fail(ErrorCode::Unsupported,
                 "selective fortification needs the same fuel everywhere");
    for (int r = 1; r <= grid.rows; ++r) {
        for (int c = 1; c < grid.cols; ++c) {
            const int x = grid.at({r, c}).x;
            if (x < 1 || x > 2 * y + 1)
                fail(ErrorCode::Unsupported, "cell (" + std::to_string(r) + "," +
                                                 std::to_string(c) +
                                                 ") needs 0 < x <= 2y+1");
        }
    }
}

SelectivePlan min_selective_fortification(const Grid& grid) {
    validate_selective_instance(grid);
    const int y = grid.cells.front().y;
    const std::optional<SearchResult> found = search_separating_walk(grid, y);
    if (!found)
        fail(ErrorCode::Infeasible, "no separating walk from bottom to top exists");

    SelectivePlan plan;
    plan.cost = found->cost;
    plan.walk = found->verts;
    plan.edge_types = found->types;
    plan.winding = winding_of(found->types);

    const Border border(grid.rows, grid.cols);
    for (std::size_t i = 0; i + 1 < found->verts.size(); ++i)
        plan.cells.push_back(border.left_of.at({found->verts[i], found->verts[i + 1]}));

    // The increment formula assumes each cell's border is traversed as one
    // contiguous arc; the walk the search returns has that shape.
    std::set<XY> unique_verts(plan.walk.begin(), plan.walk.end());
    if (unique_verts.size() != plan.walk.size())
        fail(ErrorCode::Internal, "separating walk revisits a corner");
    std::set<RC> seen;
    for (std::size_t i = 0; i < plan.cells.size(); ++i) {
        if (i > 0 && plan.cells[i] == plan.cells[i - 1]) continue;
        if (!seen.insert(plan.cells[i]).second)
            fail(ErrorCode::Internal, "separating walk re-enters a cell's border");
    }

    std::map<RC, int> multiplicity;
    for (RC rc : plan.cells) ++multiplicity[rc];
    for (const auto& [rc, m] : multiplicity) {
        const int inc = std::max(0, m * y + 1 - grid.at(rc).x);
        if (inc > 0) plan.increments.emplace_back(rc, inc);
    }
    return plan;
}

bool validate_plan(const Grid& grid, const std::vector<std::pair<RC, int>>& increments) {
    Grid fortified = grid;
    for (const auto& [rc, d] : increments) {
        fortified.check_bounds(rc);
        if (d < 0) fail(ErrorCode::Input, "fortification increments must be non-negative");
        fortified.at(rc).x += d;
    }
    ActiveSimulator sim(fortified);
    while (!sim.settled()) sim.advance();
    for (RC rc : grid.village)
        if (phase_of(sim.states()[grid.index(rc)]) != Phase::Alive) return false;
    return true;
}

}  // namespace pyro
