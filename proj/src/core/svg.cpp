#include "svg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pyro {

namespace {

// Integer pixel geometry keeps the output byte-stable across platforms.
constexpr int kHexUnit = 10;   // hex corner coordinates are multiples of this
constexpr int kSquare = 24;    // square cell edge in pixels

const char* fill_for(Phase phase, bool village) {
    switch (phase) {
        case Phase::Burning: return "#d64541";
        case Phase::Dead: return "#9b9b9b";
        case Phase::Alive: return village ? "#4a7bd4" : "#ffffff";
    }
    return "#ffffff";
}

}  // namespace

std::string render_svg(const Grid& grid, const std::vector<Cell>& states, bool labels) {
    if (states.size() != grid.cells.size())
        fail(ErrorCode::Input, "snapshot size does not match the grid");

    const std::set<RC> village(grid.village.begin(), grid.village.end());
    std::ostringstream out;
    const bool hex = grid.lattice == Lattice::Hex;
    const int width = hex ? (2 * grid.cols + 3) * kHexUnit : grid.cols * kSquare;
    const int height = hex ? (3 * grid.rows + 3) * kHexUnit : grid.rows * kSquare;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    for (int r = 1; r <= grid.rows; ++r) {
        for (int c = 1; c <= grid.cols; ++c) {
            const RC rc{r, c};
            const Cell s = states[grid.index(rc)];
            const char* fill = fill_for(phase_of(s), village.count(rc) > 0);
            int tx = 0, ty = 0;
            if (hex) {
                const int X = 2 * c + (r & 1);
                const int Y = 3 * r;
                const int px[6] = {X, X + 1, X + 1, X, X - 1, X - 1};
                const int py[6] = {Y - 2, Y - 1, Y + 1, Y + 2, Y + 1, Y - 1};
                out << "<polygon points=\"";
                for (int i = 0; i < 6; ++i) {
                    if (i) out << " ";
                    out << px[i] * kHexUnit << "," << py[i] * kHexUnit;
                }
                out << "\" fill=\"" << fill << "\" stroke=\"#333333\"/>\n";
                tx = X * kHexUnit;
                ty = Y * kHexUnit;
            } else {
                out << "<rect x=\"" << (c - 1) * kSquare << "\" y=\"" << (r - 1) * kSquare
                    << "\" width=\"" << kSquare << "\" height=\"" << kSquare
                    << "\" fill=\"" << fill << "\" stroke=\"#333333\"/>\n";
                tx = (c - 1) * kSquare + kSquare / 2;
                ty = (r - 1) * kSquare + kSquare / 2;
            }
            if (labels) {
                out << "<text x=\"" << tx << "\" y=\"" << ty
                    << "\" font-size=\"8\" font-family=\"monospace\" "
                       "text-anchor=\"middle\" dominant-baseline=\"middle\">"
                    << s.x << ";" << s.y << "</text>\n";
            }
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace pyro
