#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "core/gridfile.hpp"
#include "core/svg.hpp"
#include "fixtures.hpp"

using pyro::Cell;
using pyro::ErrorCode;
using pyro::Grid;
using pyro::Lattice;
using pyro::PyroError;
using pyro::RC;

namespace {

void expect_parse_error(const std::string& text, const std::string& fragment) {
    try {
        pyro::parse_grid(text);
        FAIL("expected a parse error, fragment: " << fragment);
    } catch (const PyroError& e) {
        CHECK(e.code() == ErrorCode::Parse);
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
}

}  // namespace

TEST_CASE("parsing a small grid file") {
    const std::string text =
        "# a hex meadow with one flame\n"
        "lattice hex\n"
        "size 2 3\n"
        "default 3;2   # mostly sturdy grass\n"
        "cell 1 2 0;2\n"
        "cell 2 3 5;1\n"
        "fire 1 2\n"
        "village 2 1\n";
    std::vector<std::string> warnings;
    const Grid g = pyro::parse_grid(text, nullptr, &warnings);
    CHECK(g.lattice == Lattice::Hex);
    CHECK(g.rows == 2);
    CHECK(g.cols == 3);
    CHECK_FALSE(g.regen);
    CHECK(g.at({1, 1}) == Cell{3, 2});
    CHECK(g.at({1, 2}) == Cell{0, 2});
    CHECK(g.at({2, 3}) == Cell{5, 1});
    CHECK(g.fire == std::vector<RC>{{1, 2}});
    CHECK(g.village == std::vector<RC>{{2, 1}});
    CHECK(g.target.empty());
    CHECK(warnings.empty());
}

TEST_CASE("directives may come in any order") {
    const Grid g = pyro::parse_grid(
        "fire 1 1\n"
        "cell 1 1 2;2\n"
        "regen on\n"
        "size 1 2\n"
        "lattice square\n");
    CHECK(g.regen);
    CHECK(g.at({1, 1}) == Cell{2, 2});
}

TEST_CASE("parse errors carry line numbers") {
    expect_parse_error("lattice hex\n", "missing 'size'");
    expect_parse_error("size 2 2\n", "missing 'lattice'");
    expect_parse_error("lattice hex\nsize 2 2\nlattice hex\n", "line 3: duplicate");
    expect_parse_error("lattice triangular\nsize 2 2\n", "line 1");
    expect_parse_error("lattice hex\nsize 2\n", "line 2");
    expect_parse_error("lattice hex\nsize 2 2\nregen maybe\n", "line 3");
    expect_parse_error("lattice hex\nsize 2 2\ndefault 3\n", "'<x>;<y>'");
    expect_parse_error("lattice hex\nsize 2 2\ncell 1 1 -1;2\n", "non-negative");
    expect_parse_error("lattice hex\nsize 2 2\ncell 3 1 1;1\n", "outside");
    expect_parse_error("lattice hex\nsize 2 2\nfire 0 1\n", "outside");
    expect_parse_error("lattice hex\nsize 2 2\nmoat 1 1\n", "unknown directive");
    expect_parse_error("lattice hex\nsize 2 2\ncell 1 1 1;1 extra\n", "argument");
}

TEST_CASE("later cell records override earlier ones, with a warning") {
    std::vector<std::string> warnings;
    const Grid g = pyro::parse_grid(
        "lattice square\n"
        "size 1 2\n"
        "cell 1 1 1;1\n"
        "cell 1 1 4;4\n",
        nullptr, &warnings);
    CHECK(g.at({1, 1}) == Cell{4, 4});
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("line 4") != std::string::npos);
    CHECK(warnings[0].find("overrides") != std::string::npos);
}

TEST_CASE("marks are sorted and deduplicated") {
    const Grid g = pyro::parse_grid(
        "lattice square\n"
        "size 2 2\n"
        "default 1;1\n"
        "fire 2 2\n"
        "fire 1 1\n"
        "fire 2 2\n");
    CHECK(g.fire == std::vector<RC>{{1, 1}, {2, 2}});
}

TEST_CASE("parsed grids are validated") {
    // A fire mark needs fuel under it.
    try {
        pyro::parse_grid("lattice square\nsize 1 1\nfire 1 1\n");
        FAIL("expected a validation error");
    } catch (const PyroError& e) {
        CHECK(e.code() == ErrorCode::Input);
    }
    // Stored burning cells are fine without regeneration, rejected with it.
    CHECK_NOTHROW(pyro::parse_grid("lattice square\nsize 1 1\ncell 1 1 0;2\n"));
    CHECK_THROWS_AS(
        pyro::parse_grid("lattice square\nsize 1 1\nregen on\ncell 1 1 0;2\n"),
        PyroError);
}

TEST_CASE("serialization is canonical") {
    Grid g = pyro::make_grid(Lattice::Square, 2, 2, false, {1, 2});
    g.cells[g.index({2, 2})] = {0, 0};
    g.fire = {{1, 1}};
    CHECK(pyro::serialize_grid(g) ==
          "lattice square\n"
          "size 2 2\n"
          "regen off\n"
          "default 1;2\n"
          "cell 2 2 0;0\n"
          "fire 1 1\n");

    // Ties on the most common value go to the smallest one.
    Grid tie = pyro::make_grid(Lattice::Square, 1, 2, false, {0, 0});
    tie.cells[1] = {1, 1};
    CHECK(pyro::serialize_grid(tie) ==
          "lattice square\n"
          "size 1 2\n"
          "regen off\n"
          "default 0;0\n"
          "cell 1 2 1;1\n");
}

TEST_CASE("round trips preserve every field") {
    std::mt19937 rng(static_cast<unsigned>(fixtures::seed_from_env(20260815)));
    int checked = 0;
    for (int round = 0; round < 130; ++round) {
        fixtures::RandomGridSpec spec;
        spec.lattice = (round % 2 == 0) ? Lattice::Hex : Lattice::Square;
        spec.regen = (round % 3 == 0);
        spec.extra_marks = true;
        const Grid g = fixtures::random_grid(rng, spec);
        const std::string text = pyro::serialize_grid(g);
        const Grid back = pyro::parse_grid(text);
        CHECK(back == g);
        // Serializing again reproduces the same bytes.
        CHECK(pyro::serialize_grid(back) == text);
        ++checked;
    }
    CHECK(checked == 130);
}

TEST_CASE("metadata comments survive the round trip") {
    Grid g = pyro::make_grid(Lattice::Square, 1, 1, false, {1, 1});
    const std::string meta = R"({"r1_max": 2})";
    const std::string text = pyro::serialize_grid(g, &meta);
    CHECK(text.find("# rm-meta {\"r1_max\": 2}") != std::string::npos);

    std::string meta_out;
    const Grid back = pyro::parse_grid(text, &meta_out);
    CHECK(back == g);
    CHECK(meta_out == meta);

    // Grids without the carrier comment leave the slot empty.
    meta_out.clear();
    pyro::parse_grid("lattice square\nsize 1 1\n", &meta_out);
    CHECK(meta_out.empty());
}

TEST_CASE("SVG rendering") {
    const Grid hex = pyro::parse_grid(
        "lattice hex\n"
        "size 2 2\n"
        "default 2;1\n"
        "cell 1 1 0;1\n"  // burning
        "cell 1 2 1;0\n"  // dead
        "village 2 1\n");
    const std::string svg = pyro::render_svg(hex, hex.cells);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polygon") != std::string::npos);
    CHECK(svg.find("#d64541") != std::string::npos);  // burning
    CHECK(svg.find("#9b9b9b") != std::string::npos);  // dead
    CHECK(svg.find("#4a7bd4") != std::string::npos);  // village
    CHECK(svg.find("#ffffff") != std::string::npos);  // alive
    // Byte determinism.
    CHECK(pyro::render_svg(hex, hex.cells) == svg);

    const Grid sq = pyro::parse_grid("lattice square\nsize 1 1\ndefault 3;2\n");
    const std::string plain = pyro::render_svg(sq, sq.cells);
    CHECK(plain.find("rect") != std::string::npos);
    CHECK(plain.find("3;2") == std::string::npos);
    const std::string labelled = pyro::render_svg(sq, sq.cells, true);
    CHECK(labelled.find("3;2") != std::string::npos);

    CHECK_THROWS_AS(pyro::render_svg(sq, std::vector<Cell>{}), PyroError);
}
