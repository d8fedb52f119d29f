#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <utility>
#include <vector>

#include "core/lattice.hpp"
#include "fixtures.hpp"

using pyro::Cell;
using pyro::ErrorCode;
using pyro::Grid;
using pyro::Lattice;
using pyro::PyroError;
using pyro::RC;

namespace {

std::vector<RC> nbrs(Lattice lattice, int rows, int cols, RC rc) {
    std::vector<RC> out;
    for (const RC n : pyro::neighbors_of(lattice, rows, cols, rc)) out.push_back(n);
    return out;
}

}  // namespace

TEST_CASE("hex neighbours, odd row, clockwise from east") {
    CHECK(nbrs(Lattice::Hex, 5, 5, {3, 3}) ==
          std::vector<RC>{{3, 4}, {4, 4}, {4, 3}, {3, 2}, {2, 3}, {2, 4}});
}

TEST_CASE("hex neighbours, even row, clockwise from east") {
    CHECK(nbrs(Lattice::Hex, 5, 5, {2, 3}) ==
          std::vector<RC>{{2, 4}, {3, 3}, {3, 2}, {2, 2}, {1, 2}, {1, 3}});
}

TEST_CASE("hex corner keeps only in-bounds neighbours, order preserved") {
    CHECK(nbrs(Lattice::Hex, 4, 4, {1, 1}) == std::vector<RC>{{1, 2}, {2, 2}, {2, 1}});
    CHECK(nbrs(Lattice::Hex, 4, 4, {4, 4}) ==
          std::vector<RC>{{4, 3}, {3, 3}, {3, 4}});
    CHECK(nbrs(Lattice::Hex, 1, 1, {1, 1}).empty());
}

TEST_CASE("square neighbours are the four orthogonal cells") {
    CHECK(nbrs(Lattice::Square, 3, 3, {2, 2}) ==
          std::vector<RC>{{2, 3}, {3, 2}, {2, 1}, {1, 2}});
    CHECK(nbrs(Lattice::Square, 3, 3, {1, 1}) == std::vector<RC>{{1, 2}, {2, 1}});
}

TEST_CASE("neighbour relation is symmetric and degree-bounded") {
    for (const Lattice lattice : {Lattice::Hex, Lattice::Square}) {
        const int rows = 6, cols = 7;
        const int cap = lattice == Lattice::Hex ? 6 : 4;
        for (int r = 1; r <= rows; ++r) {
            for (int c = 1; c <= cols; ++c) {
                const auto around = nbrs(lattice, rows, cols, {r, c});
                CHECK(static_cast<int>(around.size()) <= cap);
                const std::set<RC> uniq(around.begin(), around.end());
                CHECK(uniq.size() == around.size());
                for (const RC n : around) {
                    const auto back = nbrs(lattice, rows, cols, n);
                    CHECK(std::count(back.begin(), back.end(), RC{r, c}) == 1);
                }
            }
        }
    }
}

TEST_CASE("phase classification") {
    CHECK(pyro::phase_of({0, 0}) == pyro::Phase::Dead);
    CHECK(pyro::phase_of({3, 0}) == pyro::Phase::Dead);
    CHECK(pyro::phase_of({0, 2}) == pyro::Phase::Burning);
    CHECK(pyro::phase_of({1, 1}) == pyro::Phase::Alive);
}

TEST_CASE("make_grid rejects empty dimensions") {
    CHECK_THROWS_AS(pyro::make_grid(Lattice::Hex, 0, 3, false, {1, 1}), PyroError);
    CHECK_THROWS_AS(pyro::make_grid(Lattice::Hex, 3, -1, false, {1, 1}), PyroError);
}

TEST_CASE("validate_grid catches bad instances") {
    Grid g = fixtures::reference_grid();
    CHECK_NOTHROW(pyro::validate_grid(g));

    SUBCASE("negative state") {
        g.at({1, 1}) = {-1, 2};
        CHECK_THROWS_AS(pyro::validate_grid(g), PyroError);
    }
    SUBCASE("mark out of bounds") {
        g.village.push_back({9, 9});
        CHECK_THROWS_AS(pyro::validate_grid(g), PyroError);
    }
    SUBCASE("fire mark without fuel") {
        g.at({3, 2}) = {0, 0};
        CHECK_THROWS_AS(pyro::validate_grid(g), PyroError);
    }
    SUBCASE("stored burning cell is fine without regeneration") {
        CHECK(pyro::phase_of(g.at({3, 2})) == pyro::Phase::Burning);
        CHECK_NOTHROW(pyro::validate_grid(g));
    }
    SUBCASE("stored burning cell is rejected with regeneration") {
        g.regen = true;
        try {
            pyro::validate_grid(g);
            FAIL("expected an error");
        } catch (const PyroError& e) {
            CHECK(e.code() == ErrorCode::Input);
        }
    }
}

TEST_CASE("index is row-major and in_bounds tracks the rectangle") {
    const Grid g = pyro::make_grid(Lattice::Square, 3, 4, false, {1, 1});
    CHECK(g.index({1, 1}) == 0);
    CHECK(g.index({1, 4}) == 3);
    CHECK(g.index({2, 1}) == 4);
    CHECK(g.index({3, 4}) == 11);
    CHECK(g.in_bounds({3, 4}));
    CHECK_FALSE(g.in_bounds({0, 1}));
    CHECK_FALSE(g.in_bounds({1, 5}));
}
