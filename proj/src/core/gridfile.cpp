#include "gridfile.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>

namespace pyro {

namespace {

[[noreturn]] void bad_line(int lineno, const std::string& why) {
    fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + why);
}

int to_int(const std::string& t, int lineno) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        bad_line(lineno, "expected a number, got '" + t + "'");
    }
}

Cell to_cell_value(const std::string& t, int lineno) {
    const auto semi = t.find(';');
    if (semi == std::string::npos || semi == 0 || semi + 1 == t.size() ||
        t.find(';', semi + 1) != std::string::npos)
        bad_line(lineno, "cell values must look like '<x>;<y>', got '" + t + "'");
    const Cell v{to_int(t.substr(0, semi), lineno), to_int(t.substr(semi + 1), lineno)};
    if (v.x < 0 || v.y < 0) bad_line(lineno, "cell values must be non-negative");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Grid parse_grid(const std::string& text, std::string* rm_meta_out,
                std::vector<std::string>* warnings) {
    std::optional<Lattice> lattice;
    std::optional<std::pair<int, int>> size;
    std::optional<bool> regen;
    std::optional<Cell> default_value;
    struct CellRecord {
        int lineno;
        RC rc;
        Cell value;
    };
    struct MarkRecord {
        int lineno;
        RC rc;
        std::vector<RC>* where;
    };
    std::vector<CellRecord> cell_records;
    std::vector<MarkRecord> mark_records;
    std::vector<RC> fire, village, target;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string rest = trim(line.substr(1));
            if (rest.rfind("rm-meta", 0) == 0 && rm_meta_out != nullptr)
                *rm_meta_out = trim(rest.substr(7));
            continue;
        }
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);

        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        auto want = [&](std::size_t args) {
            if (tok.size() != args + 1)
                bad_line(lineno, "'" + key + "' takes " + std::to_string(args) +
                                     " argument(s)");
        };
        auto once = [&](const auto& slot) {
            if (slot.has_value()) bad_line(lineno, "duplicate '" + key + "' directive");
        };
        if (key == "lattice") {
            want(1);
            once(lattice);
            if (tok[1] == "hex")
                lattice = Lattice::Hex;
            else if (tok[1] == "square")
                lattice = Lattice::Square;
            else
                bad_line(lineno, "lattice must be hex or square, got '" + tok[1] + "'");
        } else if (key == "size") {
            want(2);
            once(size);
            size = {to_int(tok[1], lineno), to_int(tok[2], lineno)};
            if (size->first < 1 || size->second < 1)
                bad_line(lineno, "grid dimensions must be positive");
        } else if (key == "regen") {
            want(1);
            once(regen);
            if (tok[1] == "on")
                regen = true;
            else if (tok[1] == "off")
                regen = false;
            else
                bad_line(lineno, "regen must be on or off, got '" + tok[1] + "'");
        } else if (key == "default") {
            want(1);
            once(default_value);
            default_value = to_cell_value(tok[1], lineno);
        } else if (key == "cell") {
            want(3);
            cell_records.push_back({lineno,
                                    {to_int(tok[1], lineno), to_int(tok[2], lineno)},
                                    to_cell_value(tok[3], lineno)});
        } else if (key == "fire" || key == "village" || key == "target") {
            want(2);
            auto* where = key == "fire" ? &fire : key == "village" ? &village : &target;
            mark_records.push_back(
                {lineno, {to_int(tok[1], lineno), to_int(tok[2], lineno)}, where});
        } else {
            bad_line(lineno, "unknown directive '" + key + "'");
        }
    }

    if (!lattice) fail(ErrorCode::Parse, "missing 'lattice' directive");
    if (!size) fail(ErrorCode::Parse, "missing 'size' directive");

    Grid grid = make_grid(*lattice, size->first, size->second, regen.value_or(false),
                          default_value.value_or(Cell{0, 0}));

    std::vector<bool> seen(grid.cells.size(), false);
    auto describe = [](RC rc) {
        return "(" + std::to_string(rc.r) + "," + std::to_string(rc.c) + ")";
    };
    for (const auto& rec : cell_records) {
        if (!grid.in_bounds(rec.rc))
            bad_line(rec.lineno, "cell " + describe(rec.rc) + " is outside the " +
                                     std::to_string(grid.rows) + "x" +
                                     std::to_string(grid.cols) + " grid");
        const std::size_t idx = grid.index(rec.rc);
        if (seen[idx] && warnings != nullptr)
            warnings->push_back("line " + std::to_string(rec.lineno) + ": cell " +
                                describe(rec.rc) + " overrides an earlier value");
        seen[idx] = true;
        grid.cells[idx] = rec.value;
    }
    for (const auto& rec : mark_records) {
        if (!grid.in_bounds(rec.rc))
            bad_line(rec.lineno, "mark " + describe(rec.rc) + " is outside the " +
                                     std::to_string(grid.rows) + "x" +
                                     std::to_string(grid.cols) + " grid");
        rec.where->push_back(rec.rc);
    }
    for (auto* marks : {&fire, &village, &target}) {
        std::sort(marks->begin(), marks->end());
        marks->erase(std::unique(marks->begin(), marks->end()), marks->end());
    }
    grid.fire = std::move(fire);
    grid.village = std::move(village);
    grid.target = std::move(target);

    validate_grid(grid);
    return grid;
}

std::string serialize_grid(const Grid& grid, const std::string* rm_meta) {
    std::map<Cell, int> histogram;
    for (const Cell& s : grid.cells) histogram[s] += 1;
    Cell def{0, 0};
    int best = -1;
    for (const auto& [value, count] : histogram) {
        if (count > best) {
            def = value;
            best = count;
        }
    }

    std::ostringstream out;
    out << "lattice " << (grid.lattice == Lattice::Hex ? "hex" : "square") << "\n";
    out << "size " << grid.rows << " " << grid.cols << "\n";
    out << "regen " << (grid.regen ? "on" : "off") << "\n";
    out << "default " << def.x << ";" << def.y << "\n";
    for (int r = 1; r <= grid.rows; ++r) {
        for (int c = 1; c <= grid.cols; ++c) {
            const Cell s = grid.at({r, c});
            if (s == def) continue;
            out << "cell " << r << " " << c << " " << s.x << ";" << s.y << "\n";
        }
    }
    const std::array<std::pair<const char*, const std::vector<RC>*>, 3> marks{
        {{"fire", &grid.fire}, {"village", &grid.village}, {"target", &grid.target}}};
    for (const auto& [name, list] : marks) {
        std::vector<RC> sorted(*list);
        std::sort(sorted.begin(), sorted.end());
        for (const RC rc : sorted) out << name << " " << rc.r << " " << rc.c << "\n";
    }
    if (rm_meta != nullptr && !rm_meta->empty()) out << "# rm-meta " << *rm_meta << "\n";
    return out.str();
}

}  // namespace pyro
