#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "core/engine.hpp"
#include "fixtures.hpp"

using pyro::ActiveSimulator;
using pyro::Cell;
using pyro::ErrorCode;
using pyro::Grid;
using pyro::Lattice;
using pyro::PyroError;
using pyro::RC;
using pyro::StopReason;

TEST_CASE("reference scenario replays the frozen frames exactly") {
    const Grid g = fixtures::reference_grid();
    const pyro::Trace trace = pyro::run(g, 100);
    REQUIRE(trace.snapshots.size() == 11);  // t = 0..10
    CHECK(trace.reason == StopReason::Fixpoint);
    for (const auto& [t, states] : fixtures::reference_frames()) {
        CAPTURE(t);
        CHECK(trace.snapshots[static_cast<std::size_t>(t)].states == states);
    }
    int dead = 0, alive = 0, burning = 0;
    for (const Cell s : trace.snapshots.back().states) {
        switch (pyro::phase_of(s)) {
            case pyro::Phase::Dead: ++dead; break;
            case pyro::Phase::Alive: ++alive; break;
            case pyro::Phase::Burning: ++burning; break;
        }
    }
    CHECK(dead == 11);
    CHECK(alive == 5);
    CHECK(burning == 0);
}

TEST_CASE("wire fuse carries fire east but never back west") {
    const Grid g = fixtures::wire_grid();
    std::vector<Cell> states = fixtures::wire_frames().front();
    for (std::size_t t = 1; t < fixtures::wire_frames().size(); ++t) {
        states = pyro::step(g, states);
        CAPTURE(t);
        CHECK(states == fixtures::wire_frames()[t]);
    }
    CHECK(pyro::step(g, states) == states);  // settled
    // The diode pair at (2,2),(2,3) was crossed left to right; the cells west
    // of it never ignited.
    CHECK(pyro::phase_of(states[g.index({2, 1})]) == pyro::Phase::Dead);
    CHECK(pyro::phase_of(states[g.index({2, 2})]) == pyro::Phase::Alive);
    CHECK(pyro::phase_of(states[g.index({1, 2})]) == pyro::Phase::Alive);
}

TEST_CASE("ignite rules") {
    const Grid g = fixtures::reference_grid();
    std::vector<Cell> states(g.cells);
    pyro::ignite(g, states, {1, 1});
    CHECK(states[g.index({1, 1})] == Cell{0, 2});
    pyro::ignite(g, states, {1, 1});  // already burning: no-op
    CHECK(states[g.index({1, 1})] == Cell{0, 2});
    states[g.index({2, 2})] = {3, 0};
    CHECK_THROWS_AS(pyro::ignite(g, states, {2, 2}), PyroError);
    CHECK_THROWS_AS(pyro::ignite(g, states, {9, 9}), PyroError);
}

TEST_CASE("run validates the step budget and honours it") {
    const Grid g = fixtures::reference_grid();
    CHECK_THROWS_AS(pyro::run(g, 0), PyroError);
    CHECK_THROWS_AS(pyro::run(g, -2), PyroError);
    const pyro::Trace trace = pyro::run(g, 3);
    CHECK(trace.snapshots.size() == 4);
    CHECK(trace.reason == StopReason::StepBudgetExhausted);
}

TEST_CASE("regeneration refills a scarred landscape back to its initials") {
    Grid g = pyro::make_grid(Lattice::Square, 1, 3, true, {0, 0});
    g.at({1, 1}) = {3, 2};
    g.at({1, 2}) = {1, 2};
    g.at({1, 3}) = {2, 1};
    g.fire = {{1, 3}};
    const pyro::Trace trace = pyro::run(g, 100);
    CHECK(trace.reason == StopReason::Fixpoint);
    REQUIRE(trace.snapshots.size() == 6);
    CHECK(trace.snapshots.back().states == g.cells);  // healed completely
    // The middle cell caught fire and burned out on the way.
    CHECK(trace.snapshots[1].states[1] == Cell{0, 2});
    CHECK(trace.snapshots[3].states[1] == Cell{0, 0});
}

TEST_CASE("burning cells and their direct exposure block regeneration") {
    Grid g = pyro::make_grid(Lattice::Square, 1, 3, true, {0, 0});
    g.at({1, 1}) = {3, 3};
    g.at({1, 2}) = {2, 3};
    g.at({1, 3}) = {1, 3};
    g.fire = {{1, 3}};
    std::vector<Cell> states = pyro::initial_states(g);
    states = pyro::step(g, states);
    // (1,2) took damage and sits next to the flame: no regrowth.
    CHECK(states[1] == Cell{1, 3});
    // (1,1) is out of reach and already at its initial value.
    CHECK(states[0] == Cell{3, 3});
}

TEST_CASE("active simulator matches the dense step on random grids") {
    std::mt19937 rng(static_cast<unsigned>(fixtures::seed_from_env(20260815)));
    for (int round = 0; round < 120; ++round) {
        fixtures::RandomGridSpec spec;
        spec.lattice = round % 2 == 0 ? Lattice::Hex : Lattice::Square;
        spec.regen = round % 4 < 2;
        const Grid g = fixtures::random_grid(rng, spec);
        std::vector<Cell> dense = pyro::initial_states(g);
        ActiveSimulator sim(g);
        for (int t = 1; t <= 25; ++t) {
            const std::vector<Cell> before = dense;
            dense = pyro::step(g, dense);
            const std::vector<RC>& lit = sim.advance();
            CAPTURE(round);
            CAPTURE(t);
            REQUIRE(sim.states() == dense);
            std::set<RC> expected_lit;
            for (int r = 1; r <= g.rows; ++r)
                for (int c = 1; c <= g.cols; ++c) {
                    const std::size_t i = g.index({r, c});
                    if (pyro::phase_of(dense[i]) == pyro::Phase::Burning &&
                        pyro::phase_of(before[i]) != pyro::Phase::Burning)
                        expected_lit.insert({r, c});
                }
            CHECK(std::set<RC>(lit.begin(), lit.end()) == expected_lit);
            CHECK(lit.size() == expected_lit.size());
            if (sim.settled()) {
                CHECK(pyro::step(g, dense) == dense);
                break;
            }
        }
    }
}

TEST_CASE("settled means nothing changes, in both variants") {
    for (const bool regen : {false, true}) {
        Grid g = pyro::make_grid(Lattice::Hex, 3, 3, regen, {2, 2});
        g.fire = {{2, 2}};
        ActiveSimulator sim(g);
        int guard = 0;
        while (!sim.settled() && ++guard < 200) sim.advance();
        REQUIRE(sim.settled());
        const std::vector<Cell> frozen = sim.states();
        sim.advance();
        CHECK(sim.states() == frozen);
        if (regen) CHECK(frozen == g.cells);
    }
}

TEST_CASE("ignition times by simulation") {
    const Grid g = fixtures::reference_grid();
    const std::vector<int> times = pyro::ignition_times_by_simulation(g);
    CHECK(times[g.index({3, 2})] == 0);
    CHECK(times[g.index({2, 3})] == 1);
    CHECK(times[g.index({2, 2})] == 2);
    CHECK(times[g.index({1, 3})] == 7);
    CHECK(times[g.index({3, 4})] == pyro::kNever);
    CHECK(times[g.index({4, 4})] == pyro::kNever);

    Grid r = fixtures::reference_grid();
    r.regen = true;
    r.at({3, 2}) = {3, 2};  // regenerating grids must not store flames
    try {
        pyro::ignition_times_by_simulation(r);
        FAIL("expected an error");
    } catch (const PyroError& e) {
        CHECK(e.code() == ErrorCode::Unsupported);
    }
}
