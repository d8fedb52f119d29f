#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"

namespace pyro {

struct VcGraph {
    std::vector<int> vertices;               // ids, order defines vertex cells
    std::vector<std::pair<int, int>> edges;  // pairs of ids, simple graph
};

// Drawing of the graph on the integer grid: one point per vertex and one
// orthogonal path per edge, including both endpoints.
struct VcEmbedding {
    std::map<int, std::pair<int, int>> vertex_pos;
    std::vector<std::vector<std::pair<int, int>>> edge_paths;  // parallel to edges
};

struct VcProblem {
    VcGraph graph;
    std::optional<VcEmbedding> embedding;
};

// Accepts {"vertices": [...], "edges": [[a,b], ...], "embedding": {...}?}.
// The optional embedding holds "positions": {"id": [r,c], ...} and
// "paths": [[[r,c], ...], ...] parallel to the edge list.
VcProblem parse_vc_problem(const std::string& json_text);

void validate_embedding(const VcGraph& graph, const VcEmbedding& embedding);

// Ring placement plus sequential shortest-path routing with a one-cell halo.
// Returns nothing when some edge cannot be routed; callers may then supply an
// embedding by hand.
std::optional<VcEmbedding> embed_small(const VcGraph& graph);

struct VcReduction {
    Grid grid;                    // square lattice, no regeneration
    std::vector<RC> vertex_cells; // parallel to graph.vertices
};

// Burns-all-targets instance whose minimum igniting subset equals the graph's
// minimum vertex cover: vertex cells carry (|V|, 1) and are the ignition
// candidates, edge paths become (1, 1) fuse chains, and the chain cells next
// to a vertex are the targets. A chain burns end to end exactly when one of
// its endpoints is ignited, while no amount of chain fire can ignite a vertex
// cell, whose resistance exceeds its degree.
VcReduction reduce_to_grid(const VcGraph& graph, const VcEmbedding& embedding);

// Does igniting exactly these fire-candidate cells burn every target out?
bool burns_all_targets(const Grid& grid, const std::vector<RC>& ignite_set);

// True when some subset of at most m fire candidates burns all targets.
bool vc_check(const Grid& grid, int m);

struct IgnitionWitness {
    int size = 0;
    std::vector<RC> cells;
};

// Smallest subset of the fire candidates that burns all targets, by
// exhaustive search over subsets of increasing size.
IgnitionWitness min_igniting_subset_bruteforce(const Grid& grid);

}  // namespace pyro
