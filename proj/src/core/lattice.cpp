#include "lattice.hpp"

namespace pyro {

NeighborSet neighbors_of(Lattice lattice, int rows, int cols, RC rc) {
    NeighborSet out;
    auto add = [&](int r, int c) {
        if (r >= 1 && r <= rows && c >= 1 && c <= cols) out.push({r, c});
    };
    const int r = rc.r;
    const int c = rc.c;
    if (lattice == Lattice::Square) {
        add(r, c + 1);  // E
        add(r + 1, c);  // S
        add(r, c - 1);  // W
        add(r - 1, c);  // N
        return out;
    }
    // Hex rows are offset: odd rows shift their diagonal neighbours one column
    // to the east, even rows one column to the west.
    if (r % 2 == 1) {
        add(r, c + 1);      // E
        add(r + 1, c + 1);  // SE
        add(r + 1, c);      // SW
        add(r, c - 1);      // W
        add(r - 1, c);      // NW
        add(r - 1, c + 1);  // NE
    } else {
        add(r, c + 1);      // E
        add(r + 1, c);      // SE
        add(r + 1, c - 1);  // SW
        add(r, c - 1);      // W
        add(r - 1, c - 1);  // NW
        add(r - 1, c);      // NE
    }
    return out;
}

Grid make_grid(Lattice lattice, int rows, int cols, bool regen, Cell fill) {
    if (rows < 1 || cols < 1)
        fail(ErrorCode::Input, "grid dimensions must be at least 1x1");
    Grid g;
    g.lattice = lattice;
    g.rows = rows;
    g.cols = cols;
    g.regen = regen;
    g.cells.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
    return g;
}

void validate_grid(const Grid& grid) {
    if (grid.rows < 1 || grid.cols < 1)
        fail(ErrorCode::Input, "grid dimensions must be at least 1x1");
    if (grid.cells.size() !=
        static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.cols))
        fail(ErrorCode::Internal, "cell storage does not match grid dimensions");
    for (int r = 1; r <= grid.rows; ++r) {
        for (int c = 1; c <= grid.cols; ++c) {
            const Cell s = grid.at({r, c});
            if (s.x < 0 || s.y < 0)
                fail(ErrorCode::Input, "cell (" + std::to_string(r) + "," + std::to_string(c) +
                                           ") has negative state");
            if (grid.regen && phase_of(s) == Phase::Burning)
                fail(ErrorCode::Input,
                     "regenerating grid stores burning cell (" + std::to_string(r) + "," +
                         std::to_string(c) + "); ignite it via a fire mark instead");
        }
    }
    auto check_marks = [&](const std::vector<RC>& marks, const char* kind) {
        for (RC rc : marks) {
            if (!grid.in_bounds(rc))
                fail(ErrorCode::Input, std::string(kind) + " mark (" + std::to_string(rc.r) +
                                           "," + std::to_string(rc.c) + ") is outside the grid");
        }
    };
    check_marks(grid.fire, "fire");
    check_marks(grid.village, "village");
    check_marks(grid.target, "target");
    for (RC rc : grid.fire) {
        if (grid.at(rc).y == 0)
            fail(ErrorCode::Input, "fire mark (" + std::to_string(rc.r) + "," +
                                       std::to_string(rc.c) + ") has no fuel to ignite");
    }
}

}  // namespace pyro
