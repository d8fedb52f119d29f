#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <vector>

#include "error.hpp"

namespace pyro {

enum class Lattice { Hex, Square };

// Row/column address, 1-based, row 1 at the top.
struct RC {
    int r = 0;
    int c = 0;
    auto operator<=>(const RC&) const = default;
};

// Cell state: x is the remaining ignition resistance, y the remaining fuel.
struct Cell {
    int x = 0;
    int y = 0;
    auto operator<=>(const Cell&) const = default;
};

enum class Phase { Alive, Burning, Dead };

inline Phase phase_of(Cell s) {
    if (s.y == 0) return Phase::Dead;
    return s.x == 0 ? Phase::Burning : Phase::Alive;
}

// Fixed-capacity neighbour list; a cell has at most 6 neighbours.
struct NeighborSet {
    std::array<RC, 6> items{};
    int count = 0;

    const RC* begin() const { return items.data(); }
    const RC* end() const { return items.data() + count; }
    void push(RC rc) { items[static_cast<std::size_t>(count++)] = rc; }
};

// In-bounds neighbours of rc, clockwise starting from east.
NeighborSet neighbors_of(Lattice lattice, int rows, int cols, RC rc);

struct Grid {
    Lattice lattice = Lattice::Hex;
    int rows = 0;
    int cols = 0;
    bool regen = false;
    std::vector<Cell> cells;  // stored initial values, row-major
    std::vector<RC> fire;     // cells ignited at t=0
    std::vector<RC> village;  // cells that protection must keep alive
    std::vector<RC> target;   // cells that an igniting subset must burn

    bool in_bounds(RC rc) const {
        return rc.r >= 1 && rc.r <= rows && rc.c >= 1 && rc.c <= cols;
    }

    std::size_t index(RC rc) const {
        return static_cast<std::size_t>(rc.r - 1) * static_cast<std::size_t>(cols) +
               static_cast<std::size_t>(rc.c - 1);
    }

    Cell& at(RC rc) { return cells[index(rc)]; }
    const Cell& at(RC rc) const { return cells[index(rc)]; }

    void check_bounds(RC rc) const {
        if (!in_bounds(rc))
            fail(ErrorCode::Input, "cell (" + std::to_string(rc.r) + "," +
                                       std::to_string(rc.c) + ") is outside the grid");
    }

    NeighborSet neighbors(RC rc) const { return neighbors_of(lattice, rows, cols, rc); }

    bool operator==(const Grid&) const = default;
};

Grid make_grid(Lattice lattice, int rows, int cols, bool regen, Cell fill);

// Checks structural invariants: positive dimensions, non-negative cell values,
// marks in bounds, fire marks on cells with fuel, and (for regenerating grids)
// no stored burning cells, which would pulse forever.
void validate_grid(const Grid& grid);

}  // namespace pyro
