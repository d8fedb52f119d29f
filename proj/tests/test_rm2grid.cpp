#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include "core/rm2grid.hpp"

using pyro::ErrorCode;
using pyro::PyroError;
using pyro::RmCompiled;
using pyro::RmConfig;
using pyro::RmInstruction;
using pyro::RmMeta;
using pyro::RmProgram;

namespace {

RmProgram three_add() {
    return pyro::parse_rm_program(
        "1 ADD r1 2\n"
        "2 ADD r1 3\n"
        "3 ADD r1 4\n"
        "4 HALT\n");
}

RmProgram r2_loop() {
    return pyro::parse_rm_program(
        "1 ADD r2 2\n"
        "2 ADD r2 1\n"
        "3 HALT\n");
}

RmProgram sub_zero() {
    return pyro::parse_rm_program(
        "1 SUB r1 2 1\n"
        "2 HALT\n");
}

RmProgram mixed_loop() {
    return pyro::parse_rm_program(
        "1 ADD r2 2\n"
        "2 SUB r2 3 1\n"
        "3 HALT\n");
}

int nonzero_cells(const pyro::Grid& g) {
    int n = 0;
    for (const pyro::Cell& c : g.cells)
        if (c.x != 0 || c.y != 0) ++n;
    return n;
}

void expect_parse_error(const std::string& text) {
    try {
        pyro::parse_rm_program(text);
        FAIL("expected a parse error for: " << text);
    } catch (const PyroError& e) {
        CHECK(e.code() == ErrorCode::Parse);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

void expect_input_error(const std::string& text) {
    try {
        pyro::parse_rm_program(text);
        FAIL("expected an input error for: " << text);
    } catch (const PyroError& e) {
        CHECK(e.code() == ErrorCode::Input);
    }
}

}  // namespace

TEST_CASE("machine stepping") {
    const RmProgram prog = mixed_loop();
    CHECK(pyro::rm_step({0, 0, 1}, prog) == RmConfig{0, 1, 2});
    CHECK(pyro::rm_step({0, 1, 2}, prog) == RmConfig{0, 0, 1});
    CHECK(pyro::rm_step({5, 3, 1}, prog) == RmConfig{5, 4, 2});
    CHECK_FALSE(pyro::rm_step({0, 0, 3}, prog).has_value());
    CHECK_THROWS_AS(pyro::rm_step({0, 0, 9}, prog), PyroError);

    const RmProgram sub = sub_zero();
    CHECK(pyro::rm_step({0, 0, 1}, sub) == RmConfig{0, 0, 2});  // zero branch
    CHECK(pyro::rm_step({2, 0, 1}, sub) == RmConfig{1, 0, 1});  // decrement branch
}

TEST_CASE("program parsing") {
    const RmProgram prog = pyro::parse_rm_program(
        "# counts down r1\n"
        "\n"
        "  1 SUB r1 2 1\n"
        "2 HALT\n");
    REQUIRE(prog.size() == 2);
    CHECK(prog[0].kind == RmInstruction::Kind::Sub);
    CHECK(prog[0].reg == 1);
    CHECK(prog[0].j_zero == 2);
    CHECK(prog[0].k_dec == 1);
    CHECK(prog[1].kind == RmInstruction::Kind::Halt);

    expect_parse_error("1 FOO 2\n2 HALT\n");
    expect_parse_error("1 ADD r3 2\n2 HALT\n");       // no such register
    expect_parse_error("2 ADD r1 1\n1 HALT\n");       // numbering must start at 1
    expect_parse_error("1 ADD r1 x\n2 HALT\n");       // malformed target
    expect_parse_error("1 ADD r1 2 3\n2 HALT\n");     // trailing token
    expect_parse_error("1 SUB r1 2\n2 HALT\n");       // SUB needs two targets

    expect_input_error("1 ADD r1 1\n");                // missing HALT
    expect_input_error("1 HALT\n2 HALT\n");            // HALT must come last, once
    expect_input_error("1 ADD r1 5\n2 HALT\n");        // jump out of range
}

TEST_CASE("compile validation") {
    CHECK_THROWS_AS(pyro::rm_compile(sub_zero(), -1, 0), PyroError);
    CHECK_THROWS_AS(pyro::rm_compile(sub_zero(), 0, 9), PyroError);

    RmProgram too_long;
    for (int i = 1; i <= 6; ++i)
        too_long.push_back({RmInstruction::Kind::Add, 1, i + 1, 0, 0});
    too_long.push_back({RmInstruction::Kind::Halt, 1, 0, 0, 0});
    CHECK_THROWS_AS(pyro::rm_compile(too_long, 1, 0), PyroError);
}

TEST_CASE("three-add program") {
    const RmCompiled c = pyro::rm_compile(three_add(), 3, 0);
    CHECK(c.grid.lattice == pyro::Lattice::Square);
    CHECK(c.grid.regen);
    CHECK(c.grid.rows == 124);
    CHECK(c.grid.cols == 580);
    CHECK(nonzero_cells(c.grid) == 3278);
    CHECK(c.crossings.empty());
    CHECK(c.centrals.size() == 16);  // d1 in 0..3 times instructions 1..4

    // Every in-range hop takes the same time; halting and escaping
    // configurations have no recorded latency.
    std::map<RmConfig, int> want;
    for (int d = 0; d <= 2; ++d)
        for (int i = 1; i <= 3; ++i) want[{d, 0, i}] = 228;
    CHECK(c.latencies == want);

    // Metadata survives the JSON round trip.
    const RmMeta meta = pyro::rm_meta_from_json(pyro::rm_meta_to_json(c));
    CHECK(meta.r1_max == 3);
    CHECK(meta.r2_max == 0);
    CHECK(meta.centrals == c.centrals);
    CHECK(meta.latencies == c.latencies);

    // The run (0,0,1) -> (1,0,2) -> (2,0,3) -> (3,0,4) plays out on the grid
    // at the recorded pace.
    auto reach = [&](RmConfig from, RmConfig to) {
        return pyro::rm_reach(c.grid, meta, from, to, 10000);
    };
    CHECK(reach({0, 0, 1}, {0, 0, 1}).reached);
    CHECK(reach({0, 0, 1}, {0, 0, 1}).t == 0);
    CHECK(reach({0, 0, 1}, {1, 0, 2}).t == 228);
    CHECK(reach({0, 0, 1}, {2, 0, 3}).t == 456);
    CHECK(reach({0, 0, 1}, {3, 0, 4}).t == 684);

    // From (1,0,1) the counter tops out and the fire leaves through an
    // escape, so (0,0,1) is never revisited and the grid heals.
    const pyro::RmReachResult r = reach({1, 0, 1}, {0, 0, 1});
    CHECK_FALSE(r.reached);
    CHECK(r.settled);

    CHECK_THROWS_AS(reach({9, 0, 1}, {0, 0, 1}), PyroError);
}

TEST_CASE("register-2 loop program") {
    const RmCompiled c = pyro::rm_compile(r2_loop(), 0, 2);
    CHECK(c.grid.rows == 335);
    CHECK(c.grid.cols == 101);
    CHECK(nonzero_cells(c.grid) == 1406);
    CHECK(c.crossings.size() == 2);

    const std::map<RmConfig, int> want{
        {{0, 0, 1}, 156}, {{0, 1, 1}, 156}, {{0, 0, 2}, 178}, {{0, 1, 2}, 178}};
    CHECK(c.latencies == want);

    const RmMeta meta = pyro::rm_meta_from_json(pyro::rm_meta_to_json(c));
    CHECK(pyro::rm_reach(c.grid, meta, {0, 0, 1}, {0, 2, 1}, 10000).t == 334);

    // The register tops out after two bounces and the fire escapes, so the
    // halt gadget never ignites.
    const pyro::RmReachResult r =
        pyro::rm_reach(c.grid, meta, {0, 0, 1}, {0, 0, 3}, 10000);
    CHECK_FALSE(r.reached);
    CHECK(r.settled);
}

TEST_CASE("subtract-to-zero program") {
    const RmCompiled c = pyro::rm_compile(sub_zero(), 2, 0);
    CHECK(c.grid.rows == 78);
    CHECK(c.grid.cols == 262);
    CHECK(nonzero_cells(c.grid) == 799);
    CHECK(c.crossings.empty());

    const std::map<RmConfig, int> want{
        {{0, 0, 1}, 114}, {{1, 0, 1}, 112}, {{2, 0, 1}, 112}};
    CHECK(c.latencies == want);

    const RmMeta meta = pyro::rm_meta_from_json(pyro::rm_meta_to_json(c));
    auto reach = [&](RmConfig from, RmConfig to) {
        return pyro::rm_reach(c.grid, meta, from, to, 10000);
    };
    CHECK(reach({2, 0, 1}, {1, 0, 1}).t == 112);
    CHECK(reach({2, 0, 1}, {0, 0, 1}).t == 224);
    CHECK(reach({2, 0, 1}, {0, 0, 2}).t == 338);
    CHECK(reach({0, 0, 1}, {0, 0, 2}).t == 114);
}

TEST_CASE("looping program never halts") {
    const RmCompiled c = pyro::rm_compile(mixed_loop(), 0, 1);
    CHECK(c.grid.rows == 238);
    CHECK(c.grid.cols == 101);
    CHECK(nonzero_cells(c.grid) == 880);
    CHECK(c.crossings.empty());

    const std::map<RmConfig, int> want{
        {{0, 0, 1}, 151}, {{0, 0, 2}, 114}, {{0, 1, 2}, 151}};
    CHECK(c.latencies == want);

    const RmMeta meta = pyro::rm_meta_from_json(pyro::rm_meta_to_json(c));
    CHECK(pyro::rm_reach(c.grid, meta, {0, 0, 1}, {0, 1, 2}, 10000).t == 151);

    // (0,0,1) and (0,1,2) chase each other forever; the halt gadget stays
    // cold and the fire never dies, so the budget runs out.
    const pyro::RmReachResult r =
        pyro::rm_reach(c.grid, meta, {0, 0, 1}, {0, 0, 3}, 2000);
    CHECK_FALSE(r.reached);
    CHECK_FALSE(r.settled);
}

TEST_CASE("metadata parsing errors") {
    try {
        pyro::rm_meta_from_json("not json");
        FAIL("expected a parse error");
    } catch (const PyroError& e) {
        CHECK(e.code() == ErrorCode::Parse);
    }
    CHECK_THROWS_AS(pyro::rm_meta_from_json("[]"), PyroError);
    CHECK_THROWS_AS(pyro::rm_meta_from_json("{}"), PyroError);
}
