#include "reduce.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include <json.hpp>

#include "engine.hpp"

namespace pyro {

namespace {

using Pt = std::pair<int, int>;

int chebyshev(Pt a, Pt b) {
    return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

Pt parse_point(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer())
        fail(ErrorCode::Parse, std::string(what) + " must be a [row, col] pair");
    return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

VcProblem parse_vc_problem(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        fail(ErrorCode::Parse, std::string("graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        fail(ErrorCode::Parse, "graph JSON needs \"vertices\" and \"edges\" fields");

    VcProblem p;
    if (!j["vertices"].is_array()) fail(ErrorCode::Parse, "\"vertices\" must be an array");
    for (const auto& v : j["vertices"]) {
        if (!v.is_number_integer())
            fail(ErrorCode::Parse, "vertex ids must be integers");
        p.graph.vertices.push_back(v.get<int>());
    }
    {
        std::set<int> ids(p.graph.vertices.begin(), p.graph.vertices.end());
        if (ids.size() != p.graph.vertices.size())
            fail(ErrorCode::Input, "duplicate vertex id");
    }
    if (!j["edges"].is_array()) fail(ErrorCode::Parse, "\"edges\" must be an array");
    std::set<Pt> seen_edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            fail(ErrorCode::Parse, "edges must be [a, b] pairs of vertex ids");
        const int a = e[0].get<int>();
        const int b = e[1].get<int>();
        if (a == b) fail(ErrorCode::Input, "self-loops are not allowed");
        if (std::find(p.graph.vertices.begin(), p.graph.vertices.end(), a) ==
                p.graph.vertices.end() ||
            std::find(p.graph.vertices.begin(), p.graph.vertices.end(), b) ==
                p.graph.vertices.end())
            fail(ErrorCode::Input, "edge references unknown vertex id");
        if (!seen_edges.insert({std::min(a, b), std::max(a, b)}).second)
            fail(ErrorCode::Input, "duplicate edge");
        p.graph.edges.emplace_back(a, b);
    }

    if (j.contains("embedding") && !j["embedding"].is_null()) {
        const auto& je = j["embedding"];
        if (!je.is_object() || !je.contains("positions") || !je.contains("paths"))
            fail(ErrorCode::Parse, "embedding needs \"positions\" and \"paths\"");
        VcEmbedding emb;
        for (const auto& [key, val] : je["positions"].items()) {
            int id = 0;
            try {
                id = std::stoi(key);
            } catch (const std::exception&) {
                fail(ErrorCode::Parse, "position keys must be vertex ids");
            }
            emb.vertex_pos[id] = parse_point(val, "vertex position");
        }
        if (!je["paths"].is_array() || je["paths"].size() != p.graph.edges.size())
            fail(ErrorCode::Parse, "embedding needs one path per edge");
        for (const auto& path : je["paths"]) {
            if (!path.is_array()) fail(ErrorCode::Parse, "each path must be an array");
            std::vector<Pt> pts;
            for (const auto& pt : path) pts.push_back(parse_point(pt, "path point"));
            emb.edge_paths.push_back(std::move(pts));
        }
        p.embedding = std::move(emb);
    }
    return p;
}

void validate_embedding(const VcGraph& graph, const VcEmbedding& embedding) {
    std::set<Pt> positions;
    for (const int id : graph.vertices) {
        auto it = embedding.vertex_pos.find(id);
        if (it == embedding.vertex_pos.end())
            fail(ErrorCode::Input, "no position for vertex " + std::to_string(id));
        if (!positions.insert(it->second).second)
            fail(ErrorCode::Input, "two vertices share a position");
    }
    if (embedding.edge_paths.size() != graph.edges.size())
        fail(ErrorCode::Input, "embedding needs one path per edge");

    std::set<Pt> all_interior;
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        const auto& [a, b] = graph.edges[i];
        const std::vector<Pt>& path = embedding.edge_paths[i];
        const Pt pa = embedding.vertex_pos.at(a);
        const Pt pb = embedding.vertex_pos.at(b);
        if (path.size() < 2)
            fail(ErrorCode::Input, "edge path must contain both endpoints");
        const bool forward = path.front() == pa && path.back() == pb;
        const bool backward = path.front() == pb && path.back() == pa;
        if (!forward && !backward)
            fail(ErrorCode::Input, "edge path does not join its endpoints");
        std::set<Pt> unique(path.begin(), path.end());
        if (unique.size() != path.size())
            fail(ErrorCode::Input, "edge path revisits a point");
        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            const int dr = std::abs(path[k].first - path[k + 1].first);
            const int dc = std::abs(path[k].second - path[k + 1].second);
            if (dr + dc != 1)
                fail(ErrorCode::Input, "edge path must move one step at a time");
        }
        for (std::size_t k = 1; k + 1 < path.size(); ++k) {
            if (positions.count(path[k]))
                fail(ErrorCode::Input, "edge path passes through a vertex");
            if (!all_interior.insert(path[k]).second)
                fail(ErrorCode::Input, "two edge paths overlap");
        }
    }
}

namespace {

// Shortest orthogonal path from `from` to `to` avoiding `blocked`, bounded to
// |coordinate| <= limit. Deterministic: ties resolve in E, S, W, N order.
std::optional<std::vector<Pt>> bfs_route(Pt from, Pt to, const std::set<Pt>& blocked,
                                         int limit) {
    if (blocked.count(to)) return std::nullopt;
    std::map<Pt, Pt> came;
    std::deque<Pt> queue{from};
    came[from] = from;
    const std::array<Pt, 4> dirs{{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};
    while (!queue.empty()) {
        const Pt cur = queue.front();
        queue.pop_front();
        if (cur == to) {
            std::vector<Pt> path{to};
            for (Pt p = to; p != from; p = came.at(p)) path.push_back(came.at(p));
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (const Pt& d : dirs) {
            const Pt nxt{cur.first + d.first, cur.second + d.second};
            if (std::abs(nxt.first) > limit || std::abs(nxt.second) > limit) continue;
            if (came.count(nxt) || (blocked.count(nxt) && nxt != to)) continue;
            came[nxt] = cur;
            queue.push_back(nxt);
        }
    }
    return std::nullopt;
}

void add_halo(std::set<Pt>& blocked, Pt p) {
    for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) blocked.insert({p.first + dr, p.second + dc});
}

std::optional<VcEmbedding> try_route(const VcGraph& graph,
                                     const std::map<int, Pt>& placement, int limit) {
    VcEmbedding emb;
    emb.vertex_pos = placement;
    emb.edge_paths.resize(graph.edges.size());

    // Route short edges first; each finished path becomes an obstacle.
    std::vector<std::size_t> order(graph.edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto span = [&](std::size_t i) {
            const Pt pa = placement.at(graph.edges[i].first);
            const Pt pb = placement.at(graph.edges[i].second);
            return std::abs(pa.first - pb.first) + std::abs(pa.second - pb.second);
        };
        return span(a) < span(b);
    });

    std::vector<std::vector<Pt>> done;
    for (const std::size_t i : order) {
        const auto& [a, b] = graph.edges[i];
        const Pt pa = placement.at(a);
        const Pt pb = placement.at(b);
        std::set<Pt> blocked;
        for (const auto& [id, pos] : placement) {
            if (id == a || id == b) continue;
            add_halo(blocked, pos);
        }
        for (const std::vector<Pt>& path : done)
            for (std::size_t k = 1; k + 1 < path.size(); ++k) add_halo(blocked, path[k]);
        // Keep the lanes right next to this edge's own endpoints open so that
        // several edges can leave the same vertex, and never route through a
        // vertex or an existing path point.
        for (const Pt& anchor : {pa, pb})
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc)
                    blocked.erase({anchor.first + dr, anchor.second + dc});
        for (const auto& [id, pos] : placement) blocked.insert(pos);
        for (const std::vector<Pt>& path : done)
            for (std::size_t k = 1; k + 1 < path.size(); ++k) blocked.insert(path[k]);
        blocked.erase(pb);

        auto path = bfs_route(pa, pb, blocked, limit);
        if (!path) return std::nullopt;
        emb.edge_paths[i] = *path;
        done.push_back(std::move(*path));
    }
    return emb;
}

}  // namespace

std::optional<VcEmbedding> embed_small(const VcGraph& graph) {
    const int n = static_cast<int>(graph.vertices.size());
    if (n == 0) return VcEmbedding{};
    const int radius = std::max(4, 2 * n);
    const int limit = 3 * radius;

    auto ring = [&](const std::vector<int>& ids, int r) {
        std::map<int, Pt> placement;
        const double tau = 6.283185307179586;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const double angle = tau * static_cast<double>(i) / static_cast<double>(ids.size());
            placement[ids[i]] = {static_cast<int>(std::lround(r * std::sin(angle))),
                                 static_cast<int>(std::lround(r * std::cos(angle)))};
        }
        return placement;
    };
    auto distinct = [](const std::map<int, Pt>& placement) {
        std::set<Pt> pts;
        for (const auto& [id, pos] : placement) pts.insert(pos);
        return pts.size() == placement.size();
    };

    std::vector<std::map<int, Pt>> placements;
    placements.push_back(ring(graph.vertices, radius));
    for (int k = 0; k < n; ++k) {  // one vertex in the middle, the rest around it
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (i != k) rest.push_back(graph.vertices[static_cast<std::size_t>(i)]);
        std::map<int, Pt> placement = ring(rest, radius);
        placement[graph.vertices[static_cast<std::size_t>(k)]] = {0, 0};
        placements.push_back(std::move(placement));
    }

    for (const auto& placement : placements) {
        if (!distinct(placement)) continue;
        if (auto emb = try_route(graph, placement, limit)) {
            validate_embedding(graph, *emb);
            return emb;
        }
    }
    return std::nullopt;
}

namespace {

struct CellOwner {
    bool is_vertex = false;
    int id = 0;   // vertex index or edge index
    int seq = 0;  // position along the chain, for edge cells
};

}  // namespace

VcReduction reduce_to_grid(const VcGraph& graph, const VcEmbedding& embedding) {
    validate_embedding(graph, embedding);
    const int n = static_cast<int>(graph.vertices.size());

    std::map<Pt, CellOwner> owners;
    std::map<int, Pt> vertex_cell_pos;
    for (int vi = 0; vi < n; ++vi) {
        const int id = graph.vertices[static_cast<std::size_t>(vi)];
        const Pt p = embedding.vertex_pos.at(id);
        const Pt cell{2 * p.first, 2 * p.second};
        owners[cell] = {true, vi, 0};
        vertex_cell_pos[vi] = cell;
    }
    std::vector<std::vector<Pt>> chains;  // interior cells per edge, in order
    std::vector<int> chain_len;
    for (std::size_t ei = 0; ei < graph.edges.size(); ++ei) {
        const std::vector<Pt>& path = embedding.edge_paths[ei];
        std::vector<Pt> chain;
        for (std::size_t k = 0; k < path.size(); ++k) {
            chain.push_back({2 * path[k].first, 2 * path[k].second});
            if (k + 1 < path.size())
                chain.push_back({path[k].first + path[k + 1].first,
                                 path[k].second + path[k + 1].second});
        }
        std::vector<Pt> interior(chain.begin() + 1, chain.end() - 1);
        for (std::size_t s = 0; s < interior.size(); ++s) {
            if (owners.count(interior[s]))
                fail(ErrorCode::Input, "embedding places two cells on one spot");
            owners[interior[s]] = {false, static_cast<int>(ei), static_cast<int>(s)};
        }
        chain_len.push_back(static_cast<int>(interior.size()));
        chains.push_back(std::move(interior));
    }

    // Spacing audit. Fire must only move along a chain and from a chain's last
    // cell into its own endpoint vertex, so cells of different owners may not
    // touch except in those places; diagonal contact is allowed only between
    // first/last chain cells meeting at their shared vertex.
    auto incident_end = [&](const CellOwner& e, int vi) {
        const auto& [a, b] = graph.edges[static_cast<std::size_t>(e.id)];
        const std::vector<Pt>& path = embedding.edge_paths[static_cast<std::size_t>(e.id)];
        const Pt vpos = embedding.vertex_pos.at(graph.vertices[static_cast<std::size_t>(vi)]);
        const bool at_front = path.front() == vpos;
        const bool at_back = path.back() == vpos;
        (void)a;
        (void)b;
        if (e.seq == 0 && at_front) return true;
        if (e.seq == chain_len[static_cast<std::size_t>(e.id)] - 1 && at_back) return true;
        return false;
    };
    for (auto it1 = owners.begin(); it1 != owners.end(); ++it1) {
        for (auto it2 = std::next(it1); it2 != owners.end(); ++it2) {
            if (chebyshev(it1->first, it2->first) > 1) continue;
            const auto& [p1, o1] = *it1;
            const auto& [p2, o2] = *it2;
            const bool orthogonal =
                std::abs(p1.first - p2.first) + std::abs(p1.second - p2.second) == 1;
            if (!o1.is_vertex && !o2.is_vertex && o1.id == o2.id) {
                if (orthogonal && std::abs(o1.seq - o2.seq) != 1)
                    fail(ErrorCode::Input, "edge path folds back onto itself");
                continue;  // diagonal contact within one chain is harmless
            }
            if (o1.is_vertex && o2.is_vertex)
                fail(ErrorCode::Input, "two vertex cells touch");
            if (o1.is_vertex != o2.is_vertex) {
                const CellOwner& v = o1.is_vertex ? o1 : o2;
                const CellOwner& e = o1.is_vertex ? o2 : o1;
                if (!orthogonal || !incident_end(e, v.id))
                    fail(ErrorCode::Input, "an edge path crowds a vertex cell");
                continue;
            }
            // Different chains. Diagonal contact is fine when both are end
            // cells meeting at their common vertex.
            if (!orthogonal) {
                bool shared_vertex = false;
                for (const auto& [vi, vcell] : vertex_cell_pos)
                    if (chebyshev(p1, vcell) == 1 && chebyshev(p2, vcell) == 1 &&
                        incident_end(o1, vi) && incident_end(o2, vi))
                        shared_vertex = true;
                if (shared_vertex) continue;
            }
            fail(ErrorCode::Input, "two edge paths run too close together");
        }
    }

    int min_r = 0, max_r = 0, min_c = 0, max_c = 0;
    bool first = true;
    for (const auto& [p, o] : owners) {
        if (first) {
            min_r = max_r = p.first;
            min_c = max_c = p.second;
            first = false;
        }
        min_r = std::min(min_r, p.first);
        max_r = std::max(max_r, p.first);
        min_c = std::min(min_c, p.second);
        max_c = std::max(max_c, p.second);
    }
    if (first) {  // no vertices at all
        min_r = max_r = min_c = max_c = 0;
    }

    VcReduction out;
    out.grid = make_grid(Lattice::Square, max_r - min_r + 3, max_c - min_c + 3, false,
                         {0, 0});
    auto to_rc = [&](Pt p) { return RC{p.first - min_r + 2, p.second - min_c + 2}; };
    for (const auto& [p, o] : owners)
        out.grid.at(to_rc(p)) = o.is_vertex ? Cell{n, 1} : Cell{1, 1};
    out.vertex_cells.resize(static_cast<std::size_t>(n));
    for (const auto& [vi, p] : vertex_cell_pos) {
        out.vertex_cells[static_cast<std::size_t>(vi)] = to_rc(p);
        out.grid.fire.push_back(to_rc(p));
    }
    for (const std::vector<Pt>& chain : chains) {
        if (chain.empty()) continue;
        out.grid.target.push_back(to_rc(chain.front()));
        if (chain.size() > 1) out.grid.target.push_back(to_rc(chain.back()));
    }
    std::sort(out.grid.fire.begin(), out.grid.fire.end());
    std::sort(out.grid.target.begin(), out.grid.target.end());
    validate_grid(out.grid);
    return out;
}

bool burns_all_targets(const Grid& grid, const std::vector<RC>& ignite_set) {
    std::vector<Cell> states = grid.cells;
    for (RC rc : ignite_set) ignite(grid, states, rc);
    ActiveSimulator sim(grid, std::move(states));
    while (!sim.settled()) sim.advance();
    for (RC rc : grid.target)
        if (sim.states()[grid.index(rc)].y != 0) return false;
    return true;
}

namespace {

// Calls visit with every size-k index subset until visit returns true.
bool for_each_subset(std::size_t count, int k,
                     const std::function<bool(const std::vector<int>&)>& visit);

}  // namespace

bool vc_check(const Grid& grid, int m) {
    if (m < 0) fail(ErrorCode::Input, "subset size bound must be non-negative");
    validate_grid(grid);
    for (int k = 0; k <= m && k <= static_cast<int>(grid.fire.size()); ++k) {
        if (for_each_subset(grid.fire.size(), k, [&](const std::vector<int>& pick) {
                std::vector<RC> subset;
                for (const int i : pick) subset.push_back(grid.fire[static_cast<std::size_t>(i)]);
                return burns_all_targets(grid, subset);
            }))
            return true;
    }
    return false;
}

IgnitionWitness min_igniting_subset_bruteforce(const Grid& grid) {
    validate_grid(grid);
    for (int k = 0; k <= static_cast<int>(grid.fire.size()); ++k) {
        IgnitionWitness found;
        if (for_each_subset(grid.fire.size(), k, [&](const std::vector<int>& pick) {
                std::vector<RC> subset;
                for (const int i : pick) subset.push_back(grid.fire[static_cast<std::size_t>(i)]);
                if (!burns_all_targets(grid, subset)) return false;
                found.size = k;
                found.cells = subset;
                return true;
            }))
            return found;
    }
    fail(ErrorCode::Infeasible, "igniting every candidate still leaves a target unburnt");
}

namespace {

bool for_each_subset(std::size_t count, int k,
                     const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    if (k > static_cast<int>(count)) return false;
    while (true) {
        if (visit(pick)) return true;
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] ==
                             static_cast<int>(count) - k + i)
            --i;
        if (i < 0) return false;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

}  // namespace pyro
