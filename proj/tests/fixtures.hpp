#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core/engine.hpp"
#include "core/lattice.hpp"

namespace fixtures {

// Cells from a whitespace-separated list of "x;y" tokens, row-major.
inline std::vector<pyro::Cell> cells_from(const std::string& text) {
    std::vector<pyro::Cell> out;
    std::istringstream in(text);
    for (std::string tok; in >> tok;) {
        const auto semi = tok.find(';');
        out.push_back({std::stoi(tok.substr(0, semi)), std::stoi(tok.substr(semi + 1))});
    }
    return out;
}

// 4x4 hex reference scenario: one burning cell in an uneven landscape. The
// frames below were frozen from an independent step-by-step evaluation of the
// transition rule and act as the regression baseline.
inline pyro::Grid reference_grid() {
    pyro::Grid g = pyro::make_grid(pyro::Lattice::Hex, 4, 4, false, {3, 2});
    g.at({1, 2}) = {5, 2};
    g.at({1, 3}) = {5, 2};
    g.at({2, 3}) = {1, 2};
    g.at({3, 2}) = {0, 2};
    g.at({3, 3}) = {4, 2};
    g.at({3, 4}) = {5, 2};
    g.at({4, 2}) = {5, 2};
    g.at({4, 3}) = {5, 2};
    g.fire = {{3, 2}};
    return g;
}

inline const std::vector<std::pair<int, std::vector<pyro::Cell>>>& reference_frames() {
    static const std::vector<std::pair<int, std::vector<pyro::Cell>>> frames = {
        {0, cells_from("3;2 5;2 5;2 3;2  3;2 3;2 1;2 3;2  3;2 0;2 4;2 5;2  3;2 5;2 5;2 3;2")},
        {1, cells_from("3;2 5;2 5;2 3;2  3;2 2;2 0;2 3;2  2;2 0;1 3;2 5;2  3;2 4;2 4;2 3;2")},
        {2, cells_from("3;2 4;2 4;2 3;2  3;2 0;2 0;1 2;2  1;2 0;0 1;2 5;2  3;2 3;2 3;2 3;2")},
        {3, cells_from("2;2 2;2 3;2 3;2  2;2 0;1 0;0 1;2  0;2 0;0 0;2 5;2  3;2 3;2 3;2 3;2")},
        {4, cells_from("1;2 1;2 3;2 3;2  0;2 0;0 0;0 0;2  0;1 0;0 0;1 4;2  2;2 2;2 2;2 2;2")},
        {5, cells_from("0;2 1;2 2;2 2;2  0;1 0;0 0;0 0;1  0;0 0;0 0;0 2;2  1;2 1;2 1;2 1;2")},
        {7, cells_from("0;0 0;1 0;2 1;2  0;0 0;0 0;0 0;0  0;0 0;0 0;0 1;2  1;2 1;2 1;2 1;2")},
        {10, cells_from("0;0 0;0 0;0 0;0  0;0 0;0 0;0 0;0  0;0 0;0 0;0 1;2  1;2 1;2 1;2 1;2")},
    };
    return frames;
}

// 3x7 square wire: a fuse running east through a (1;2),(2;1) diode pair.
// Fire entering from the west passes; nothing ever burns back west.
inline pyro::Grid wire_grid() {
    pyro::Grid g = pyro::make_grid(pyro::Lattice::Square, 3, 7, false, {0, 0});
    g.at({1, 2}) = {1, 1};
    g.at({2, 2}) = {2, 1};
    g.at({2, 3}) = {1, 1};
    g.at({2, 4}) = {0, 1};
    g.at({2, 5}) = {1, 2};
    g.at({2, 6}) = {2, 1};
    g.at({2, 7}) = {1, 1};
    return g;
}

inline const std::vector<std::vector<pyro::Cell>>& wire_frames() {
    static const std::vector<std::vector<pyro::Cell>> frames = {
        cells_from("0;0 1;1 0;0 0;0 0;0 0;0 0;0  0;0 2;1 1;1 0;1 1;2 2;1 1;1  0;0 0;0 0;0 0;0 0;0 0;0 0;0"),
        cells_from("0;0 1;1 0;0 0;0 0;0 0;0 0;0  0;0 2;1 0;1 0;0 0;2 2;1 1;1  0;0 0;0 0;0 0;0 0;0 0;0 0;0"),
        cells_from("0;0 1;1 0;0 0;0 0;0 0;0 0;0  0;0 1;1 0;0 0;0 0;1 1;1 1;1  0;0 0;0 0;0 0;0 0;0 0;0 0;0"),
        cells_from("0;0 1;1 0;0 0;0 0;0 0;0 0;0  0;0 1;1 0;0 0;0 0;0 0;1 1;1  0;0 0;0 0;0 0;0 0;0 0;0 0;0"),
        cells_from("0;0 1;1 0;0 0;0 0;0 0;0 0;0  0;0 1;1 0;0 0;0 0;0 0;0 0;1  0;0 0;0 0;0 0;0 0;0 0;0 0;0"),
        cells_from("0;0 1;1 0;0 0;0 0;0 0;0 0;0  0;0 1;1 0;0 0;0 0;0 0;0 0;0  0;0 0;0 0;0 0;0 0;0 0;0 0;0"),
    };
    return frames;
}

inline std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* env = std::getenv("PYROCELL_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    return std::strtoull(env, nullptr, 10);
}

struct RandomGridSpec {
    pyro::Lattice lattice = pyro::Lattice::Hex;
    int min_rows = 1, max_rows = 8;
    int min_cols = 1, max_cols = 8;
    int max_x = 12;
    int max_y = 5;
    bool regen = false;
    int max_fires = 3;
    bool allow_stored_burning = true;  // ignored when regen is on
    bool extra_marks = false;          // add village/target marks
};

inline pyro::Grid random_grid(std::mt19937& rng, const RandomGridSpec& spec) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    const int rows = pick(spec.min_rows, spec.max_rows);
    const int cols = pick(spec.min_cols, spec.max_cols);
    pyro::Grid g = pyro::make_grid(spec.lattice, rows, cols, spec.regen, {0, 0});
    for (pyro::Cell& s : g.cells) {
        s = {pick(0, spec.max_x), pick(0, spec.max_y)};
        if ((spec.regen || !spec.allow_stored_burning) && s.y > 0 && s.x == 0) s.x = 1;
    }
    std::vector<pyro::RC> fuel;
    for (int r = 1; r <= rows; ++r)
        for (int c = 1; c <= cols; ++c)
            if (g.at({r, c}).y > 0) fuel.push_back({r, c});
    if (!fuel.empty()) {
        std::set<pyro::RC> fires;
        const int n = pick(0, spec.max_fires);
        for (int i = 0; i < n; ++i)
            fires.insert(fuel[static_cast<std::size_t>(pick(0, static_cast<int>(fuel.size()) - 1))]);
        g.fire.assign(fires.begin(), fires.end());
    }
    if (spec.extra_marks) {
        std::set<pyro::RC> village, target;
        for (int i = pick(0, 2); i > 0; --i) village.insert({pick(1, rows), pick(1, cols)});
        for (int i = pick(0, 2); i > 0; --i) target.insert({pick(1, rows), pick(1, cols)});
        g.village.assign(village.begin(), village.end());
        g.target.assign(target.begin(), target.end());
    }
    pyro::validate_grid(g);
    return g;
}

}  // namespace fixtures
