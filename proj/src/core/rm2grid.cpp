#include "rm2grid.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include <json.hpp>

#include "engine.hpp"

namespace pyro {

std::optional<RmConfig> rm_step(const RmConfig& cfg, const RmProgram& prog) {
    if (cfg.i < 1 || cfg.i > static_cast<int>(prog.size()))
        fail(ErrorCode::Input, "configuration points outside the program");
    const RmInstruction& ins = prog[static_cast<std::size_t>(cfg.i - 1)];
    switch (ins.kind) {
        case RmInstruction::Kind::Halt:
            return std::nullopt;
        case RmInstruction::Kind::Add:
            if (ins.reg == 1) return RmConfig{cfg.d1 + 1, cfg.d2, ins.j};
            return RmConfig{cfg.d1, cfg.d2 + 1, ins.j};
        case RmInstruction::Kind::Sub:
            if (ins.reg == 1)
                return cfg.d1 == 0 ? RmConfig{cfg.d1, cfg.d2, ins.j_zero}
                                   : RmConfig{cfg.d1 - 1, cfg.d2, ins.k_dec};
            return cfg.d2 == 0 ? RmConfig{cfg.d1, cfg.d2, ins.j_zero}
                               : RmConfig{cfg.d1, cfg.d2 - 1, ins.k_dec};
    }
    fail(ErrorCode::Internal, "unknown instruction kind");
}

namespace {

void validate_rm_program(const RmProgram& prog) {
    const int n = static_cast<int>(prog.size());
    if (n < 1) fail(ErrorCode::Input, "program must contain at least one instruction");
    if (prog.back().kind != RmInstruction::Kind::Halt)
        fail(ErrorCode::Input, "the last instruction must be HALT");
    for (int i = 1; i <= n; ++i) {
        const RmInstruction& ins = prog[static_cast<std::size_t>(i - 1)];
        if (ins.kind == RmInstruction::Kind::Halt) {
            if (i != n) fail(ErrorCode::Input, "HALT must be the single last instruction");
            continue;
        }
        if (ins.reg != 1 && ins.reg != 2)
            fail(ErrorCode::Input, "instruction " + std::to_string(i) +
                                       " uses an unknown register");
        auto check_target = [&](int t) {
            if (t < 1 || t > n)
                fail(ErrorCode::Input, "instruction " + std::to_string(i) +
                                           " jumps outside the program");
        };
        if (ins.kind == RmInstruction::Kind::Add) {
            check_target(ins.j);
        } else {
            check_target(ins.j_zero);
            check_target(ins.k_dec);
        }
    }
}

}  // namespace

RmProgram parse_rm_program(const std::string& text) {
    RmProgram prog;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto bad = [&](const std::string& why) {
            fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + why);
        };
        auto as_int = [&](const std::string& t) {
            try {
                std::size_t used = 0;
                const int v = std::stoi(t, &used);
                if (used != t.size()) throw std::invalid_argument(t);
                return v;
            } catch (const std::exception&) {
                bad("expected a number, got '" + t + "'");
            }
            return 0;
        };
        if (as_int(tok[0]) != static_cast<int>(prog.size()) + 1)
            bad("instructions must be numbered densely from 1");
        if (tok.size() < 2) bad("missing instruction mnemonic");
        auto as_reg = [&](const std::string& t) {
            if (t == "r1") return 1;
            if (t == "r2") return 2;
            bad("expected r1 or r2, got '" + t + "'");
            return 0;
        };
        RmInstruction ins;
        if (tok[1] == "ADD") {
            if (tok.size() != 4) bad("ADD takes a register and a target");
            ins.kind = RmInstruction::Kind::Add;
            ins.reg = as_reg(tok[2]);
            ins.j = as_int(tok[3]);
        } else if (tok[1] == "SUB") {
            if (tok.size() != 5) bad("SUB takes a register and two targets");
            ins.kind = RmInstruction::Kind::Sub;
            ins.reg = as_reg(tok[2]);
            ins.j_zero = as_int(tok[3]);
            ins.k_dec = as_int(tok[4]);
        } else if (tok[1] == "HALT") {
            if (tok.size() != 2) bad("HALT takes no arguments");
            ins.kind = RmInstruction::Kind::Halt;
        } else {
            bad("unknown mnemonic '" + tok[1] + "'");
        }
        prog.push_back(ins);
    }
    validate_rm_program(prog);
    return prog;
}

namespace {

using Pt = std::pair<int, int>;
using PatternCells = std::map<Pt, Cell>;

struct PatCell {
    int r, c, x, y;
};

// 11x11 crossing gadget: two perpendicular wires that pass one another
// without interacting, guarded by diode pairs on all four arms.
constexpr PatCell kCrossing[] = {
    {1, 6, 1, 1},
    {2, 6, 1, 1},  {2, 7, 1, 1},  {2, 8, 1, 1},
    {3, 8, 1, 2},
    {4, 2, 1, 1},  {4, 3, 1, 2},  {4, 4, 2, 1},  {4, 5, 1, 1},
    {4, 6, 1, 1},  {4, 7, 1, 1},  {4, 8, 2, 1},
    {5, 2, 1, 1},  {5, 4, 1, 1},  {5, 6, 1, 1},  {5, 8, 1, 1},
    {6, 1, 1, 1},  {6, 2, 1, 1},  {6, 4, 1, 1},  {6, 5, 1, 1},
    {6, 6, 1, 1},  {6, 7, 1, 1},  {6, 8, 1, 1},  {6, 10, 1, 1}, {6, 11, 1, 1},
    {7, 4, 1, 1},  {7, 6, 1, 1},  {7, 8, 1, 1},  {7, 10, 1, 1},
    {8, 4, 2, 1},  {8, 5, 1, 1},  {8, 6, 1, 1},  {8, 7, 1, 1},
    {8, 8, 2, 1},  {8, 9, 1, 2},  {8, 10, 1, 1},
    {9, 4, 1, 2},
    {10, 4, 1, 1}, {10, 5, 1, 1}, {10, 6, 1, 1},
    {11, 6, 1, 1},
};

// 11x11 instruction gadget in its north-exit orientation: fire entering at
// any of the four inputs sweeps the central cell and leaves at the output.
constexpr PatCell kInstruction[] = {
    {1, 4, 1, 2},  {1, 8, 1, 1},
    {2, 4, 2, 1},  {2, 8, 1, 1},
    {3, 4, 1, 1},  {3, 6, 1, 1},  {3, 7, 1, 1},  {3, 8, 1, 1},
    {4, 4, 1, 1},  {4, 6, 1, 1},  {4, 10, 2, 1}, {4, 11, 1, 2},
    {5, 4, 1, 1},  {5, 6, 1, 1},  {5, 10, 1, 1},
    {6, 4, 1, 1},  {6, 6, 1, 1},  {6, 8, 1, 1},  {6, 9, 1, 1},  {6, 10, 1, 1},
    {7, 4, 1, 1},  {7, 6, 1, 1},  {7, 8, 1, 1},
    {8, 1, 1, 2},  {8, 2, 2, 1},  {8, 3, 1, 1},  {8, 4, 1, 1},
    {8, 5, 1, 1},  {8, 6, 1, 1},  {8, 7, 1, 1},  {8, 8, 1, 1},
    {9, 8, 1, 1},
    {10, 8, 2, 1},
    {11, 8, 1, 2},
};

PatternCells pattern_from(const PatCell* data, std::size_t count) {
    PatternCells out;
    for (std::size_t i = 0; i < count; ++i)
        out[{data[i].r, data[i].c}] = {data[i].x, data[i].y};
    return out;
}

PatternCells rotate_cw(const PatternCells& cells) {
    PatternCells out;
    for (const auto& [rc, v] : cells) out[{rc.second, 12 - rc.first}] = v;
    return out;
}

// Canvas boundary port offsets within a 23x23 slot.
constexpr int kInNE = 2;   // N and E sides take input at offset 2
constexpr int kOutNE = 8;  // and emit at offset 8
constexpr int kOutSW = 14; // S and W sides emit at offset 14
constexpr int kInSW = 20;  // and take input at offset 20

constexpr int kCanvas = 23;
constexpr int kPatternOff = 6;
constexpr int kTrackPitch = 12;
constexpr int kEscapeLen = 8;
constexpr Pt kCentral{12, 12};

enum class Side { N, E, S, W };

std::vector<Pt> vline(int c, int r1, int r2) {
    std::vector<Pt> out;
    for (int r = std::min(r1, r2); r <= std::max(r1, r2); ++r) out.push_back({r, c});
    return out;
}

std::vector<Pt> hline(int r, int c1, int c2) {
    std::vector<Pt> out;
    for (int c = std::min(c1, c2); c <= std::max(c1, c2); ++c) out.push_back({r, c});
    return out;
}

std::vector<Pt> concat(std::vector<Pt> a, const std::vector<Pt>& b,
                       const std::vector<Pt>& c) {
    a.insert(a.end(), b.begin(), b.end());
    a.insert(a.end(), c.begin(), c.end());
    return a;
}

// Wire from the canvas boundary input to the pattern's input port.
std::vector<Pt> in_stub(Side side) {
    switch (side) {
        case Side::N: return concat(vline(kInNE, 1, 5), hline(5, kInNE + 1, 10), {{6, 10}});
        case Side::E: return concat(hline(kInNE, 19, 23), vline(19, kInNE + 1, 10), {{10, 18}});
        case Side::S: return concat(vline(kInSW, 19, 23), hline(19, 14, kInSW - 1), {{18, 14}});
        case Side::W: return concat(hline(kInSW, 1, 5), vline(5, 14, kInSW - 1), {{14, 6}});
    }
    fail(ErrorCode::Internal, "unknown side");
}

// Wire from the pattern's output port to the canvas boundary output.
std::vector<Pt> out_stub(Side side) {
    switch (side) {
        case Side::N: return concat(vline(kOutNE, 1, 3), hline(3, kOutNE + 1, 14), vline(14, 4, 6));
        case Side::E: return concat(hline(kOutNE, 21, 23), vline(21, kOutNE + 1, 14), hline(14, 18, 20));
        case Side::S: return concat(vline(kOutSW, 21, 23), hline(21, 10, kOutSW - 1), vline(10, 18, 20));
        case Side::W: return concat(hline(kOutSW, 1, 3), vline(3, 10, kOutSW - 1), hline(10, 4, 6));
    }
    fail(ErrorCode::Internal, "unknown side");
}

// Pattern port positions in canvas coordinates; the same for every rotation.
Pt pattern_in(Side side) {
    switch (side) {
        case Side::N: return {7, 10};
        case Side::E: return {10, 17};
        case Side::S: return {17, 14};
        case Side::W: return {14, 7};
    }
    fail(ErrorCode::Internal, "unknown side");
}

Pt pattern_out(Side side) {
    switch (side) {
        case Side::N: return {7, 14};
        case Side::E: return {14, 17};
        case Side::S: return {17, 10};
        case Side::W: return {10, 7};
    }
    fail(ErrorCode::Internal, "unknown side");
}

constexpr std::array<Side, 4> kSides{Side::N, Side::E, Side::S, Side::W};

PatternCells build_canvas(Side out_side) {
    PatternCells pat = pattern_from(kInstruction, std::size(kInstruction));
    const int turns = out_side == Side::N   ? 0
                      : out_side == Side::E ? 1
                      : out_side == Side::S ? 2
                                            : 3;
    for (int k = 0; k < turns; ++k) pat = rotate_cw(pat);

    PatternCells cells;
    for (const auto& [rc, v] : pat)
        cells[{rc.first + kPatternOff, rc.second + kPatternOff}] = v;

    std::vector<std::vector<Pt>> stubs;
    for (const Side s : kSides) stubs.push_back(in_stub(s));
    stubs.push_back(out_stub(out_side));
    for (const auto& stub : stubs) {
        for (const Pt& rc : stub) {
            if (cells.count(rc))
                fail(ErrorCode::Internal, "canvas stub collides with the pattern");
            cells[rc] = {1, 1};
        }
    }

    // The stubs may touch the pattern only at the designated ports, and must
    // not touch each other.
    std::set<Pt> pat_cells;
    for (const auto& [rc, v] : pat)
        pat_cells.insert({rc.first + kPatternOff, rc.second + kPatternOff});
    std::set<Pt> allowed;
    for (const Side s : kSides) allowed.insert(pattern_in(s));
    allowed.insert(pattern_out(out_side));
    auto orth = [](Pt p) {
        return std::array<Pt, 4>{{{p.first - 1, p.second},
                                  {p.first + 1, p.second},
                                  {p.first, p.second - 1},
                                  {p.first, p.second + 1}}};
    };
    for (const auto& stub : stubs)
        for (const Pt& rc : stub)
            for (const Pt& nb : orth(rc))
                if (pat_cells.count(nb) && !allowed.count(nb))
                    fail(ErrorCode::Internal, "canvas stub touches the pattern off-port");
    for (std::size_t i = 0; i < stubs.size(); ++i) {
        const std::set<Pt> a(stubs[i].begin(), stubs[i].end());
        for (std::size_t j = i + 1; j < stubs.size(); ++j) {
            for (const Pt& rc : stubs[j]) {
                if (a.count(rc)) fail(ErrorCode::Internal, "canvas stubs overlap");
                for (const Pt& nb : orth(rc))
                    if (a.count(nb)) fail(ErrorCode::Internal, "canvas stubs touch");
            }
        }
    }
    return cells;
}

struct Seg {
    char kind = 'h';  // 'h': row `fixed`, cols lo..hi; 'v': col `fixed`, rows lo..hi
    int fixed = 0;
    int lo = 0;
    int hi = 0;
};

struct Net {
    std::string owner;
    Seg stub;      // out of the source canvas, up to the private track
    Seg track;     // private lane inside the channel
    Seg approach;  // from the track into the shared rail toward the target port
    std::string rail;
};

[[noreturn]] void reject_routing(const std::string& what) {
    fail(ErrorCode::Unsupported,
         "connector routing cannot keep the required clearances: " + what);
}

std::string key3(int a, int b, int i) {
    return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(i);
}

}  // namespace

RmCompiled rm_compile(const RmProgram& prog, int r1_max, int r2_max) {
    validate_rm_program(prog);
    const int n = static_cast<int>(prog.size());
    if (n > 6) fail(ErrorCode::Input, "compiler supports at most 6 instructions");
    if (r1_max < 0 || r1_max > 8 || r2_max < 0 || r2_max > 8)
        fail(ErrorCode::Input, "register caps must lie in 0..8");

    const int S = kCanvas * n;
    const int A = r1_max;
    const int B = r2_max;
    int n_addr1 = 0, n_addr2 = 0, n_subr1 = 0, n_subr2 = 0;
    for (const RmInstruction& ins : prog) {
        if (ins.kind == RmInstruction::Kind::Add)
            (ins.reg == 1 ? n_addr1 : n_addr2) += 1;
        else if (ins.kind == RmInstruction::Kind::Sub)
            (ins.reg == 1 ? n_subr1 : n_subr2) += 1;
    }

    const int Wg = kTrackPitch * std::max(1, n_addr1 + n_subr1) + 24;
    const int Hg = kTrackPitch * std::max(1, n_addr2 + n_subr2) + 24;
    const int Mw = n_subr1 ? kTrackPitch * n_subr1 + 24 : 16;
    const int Ms = n_subr2 ? kTrackPitch * n_subr2 + 24 : 16;
    const int Mn = 16;
    const int Me = 16;

    const int H = Mn + (B + 1) * S + B * Hg + Ms;
    const int W = Mw + (A + 1) * S + A * Wg + Me;

    auto box_left = [&](int a) { return Mw + a * (S + Wg) + 1; };
    auto box_top = [&](int b) { return Mn + (B - b) * (S + Hg) + 1; };
    auto port_row = [&](int b, int slot, int off) {
        return box_top(b) + (slot - 1) * kCanvas + off - 1;
    };
    auto port_col = [&](int a, int slot, int off) {
        return box_left(a) + (slot - 1) * kCanvas + off - 1;
    };

    std::map<Pt, std::pair<Cell, std::string>> cells;

    // Canvases: every box holds the whole program, one gadget per slot on the
    // diagonal. The exit side encodes what the instruction does.
    auto out_of = [&](const RmInstruction& ins) {
        if (ins.kind == RmInstruction::Kind::Add)
            return ins.reg == 1 ? Side::E : Side::N;
        if (ins.kind == RmInstruction::Kind::Sub)
            return ins.reg == 1 ? Side::W : Side::S;
        return Side::N;  // halt: the out stub is a dead end
    };
    std::vector<PatternCells> canvases;
    for (int i = 1; i <= n; ++i)
        canvases.push_back(build_canvas(out_of(prog[static_cast<std::size_t>(i - 1)])));

    std::map<RmConfig, Pt> centrals;
    for (int a = 0; a <= A; ++a) {
        for (int b = 0; b <= B; ++b) {
            for (int i = 1; i <= n; ++i) {
                const int o_r = box_top(b) + (i - 1) * kCanvas - 1;
                const int o_c = box_left(a) + (i - 1) * kCanvas - 1;
                const std::string owner = "canvas:" + key3(a, b, i);
                for (const auto& [rc, v] : canvases[static_cast<std::size_t>(i - 1)])
                    cells[{o_r + rc.first, o_c + rc.second}] = {v, owner};
                centrals[{a, b, i}] = {o_r + kCentral.first, o_c + kCentral.second};
            }
        }
    }

    // Nets. Vertical channels carry r1 moves (west margin hosts the zero-branch
    // U-turns of SUB r1), horizontal channels carry r2 moves likewise.
    std::vector<Net> nets;
    auto add_net = [&](std::string owner, Seg stub, Seg track, Seg approach,
                       std::string rail) {
        nets.push_back({std::move(owner), stub, track, approach, std::move(rail)});
    };
    std::vector<std::pair<int, int>> east, west, north, south, u1, u2;
    for (int i = 1; i <= n; ++i) {
        const RmInstruction& ins = prog[static_cast<std::size_t>(i - 1)];
        if (ins.kind == RmInstruction::Kind::Add) {
            (ins.reg == 1 ? east : north).push_back({i, ins.j});
        } else if (ins.kind == RmInstruction::Kind::Sub) {
            (ins.reg == 1 ? u1 : u2).push_back({i, ins.j_zero});
            (ins.reg == 1 ? west : south).push_back({i, ins.k_dec});
        }
    }
    for (auto* v : {&east, &west, &north, &south, &u1, &u2})
        std::sort(v->begin(), v->end());

    for (int b = 0; b <= B; ++b) {
        {  // a == 0: west margin, U-turns back into the same column of boxes
            const int right = box_left(0) - 1;
            int k = 0;
            for (const auto& [i, j] : u1) {
                const int T = right - 11 - kTrackPitch * k++;
                const int rs = port_row(b, i, kOutSW);
                const int rt = port_row(b, j, kInSW);
                add_net("net:u1:" + key3(0, b, i),
                        {'h', rs, T, port_col(0, i, 1) - 1},
                        {'v', T, std::min(rs, rt), std::max(rs, rt)},
                        {'h', rt, T + 1, port_col(0, j, 1) - 1},
                        "rail:W:" + key3(0, b, j));
            }
        }
        for (int a = 1; a <= A; ++a) {
            const int gut_l = box_left(a - 1) + S;
            const int gut_r = box_left(a) - 1;
            const int n_e = static_cast<int>(east.size());
            int k = 0;
            for (const auto& [i, j] : east) {
                const int T = gut_l + 11 + kTrackPitch * (n_e - 1 - k++);
                const int rs = port_row(b, i, kOutNE);
                const int rt = port_row(b, j, kInSW);
                add_net("net:e:" + key3(a - 1, b, i),
                        {'h', rs, port_col(a - 1, i, kCanvas) + 1, T},
                        {'v', T, std::min(rs, rt), std::max(rs, rt)},
                        {'h', rt, T + 1, port_col(a, j, 1) - 1},
                        "rail:W:" + key3(a, b, j));
            }
            k = 0;
            for (const auto& [i, j] : west) {
                const int T = gut_r - 11 - kTrackPitch * k++;
                const int rs = port_row(b, i, kOutSW);
                const int rt = port_row(b, j, kInNE);
                add_net("net:w:" + key3(a, b, i),
                        {'h', rs, T, port_col(a, i, 1) - 1},
                        {'v', T, std::min(rs, rt), std::max(rs, rt)},
                        {'h', rt, port_col(a - 1, j, kCanvas) + 1, T - 1},
                        "rail:E:" + key3(a - 1, b, j));
            }
        }
    }
    for (int a = 0; a <= A; ++a) {
        {  // b == 0: south margin U-turns
            const int top = box_top(0) + S;
            int k = 0;
            for (const auto& [i, j] : u2) {
                const int T = top + 11 + kTrackPitch * k++;
                const int cs = port_col(a, i, kOutSW);
                const int ct = port_col(a, j, kInSW);
                add_net("net:u2:" + key3(a, 0, i),
                        {'v', cs, port_row(0, i, kCanvas) + 1, T},
                        {'h', T, std::min(cs, ct), std::max(cs, ct)},
                        {'v', ct, port_row(0, j, kCanvas) + 1, T - 1},
                        "rail:S:" + key3(a, 0, j));
            }
        }
        for (int b = 1; b <= B; ++b) {
            const int gut_t = box_top(b) + S;
            const int gut_b = box_top(b - 1) - 1;
            const int n_n = static_cast<int>(north.size());
            int k = 0;
            for (const auto& [i, j] : north) {
                const int T = gut_b - 11 - kTrackPitch * (n_n - 1 - k++);
                const int cs = port_col(a, i, kOutNE);
                const int ct = port_col(a, j, kInSW);
                add_net("net:n:" + key3(a, b - 1, i),
                        {'v', cs, T, port_row(b - 1, i, 1) - 1},
                        {'h', T, std::min(cs, ct), std::max(cs, ct)},
                        {'v', ct, port_row(b, j, kCanvas) + 1, T - 1},
                        "rail:S:" + key3(a, b, j));
            }
            k = 0;
            for (const auto& [i, j] : south) {
                const int T = gut_t + 11 + kTrackPitch * k++;
                const int cs = port_col(a, i, kOutSW);
                const int ct = port_col(a, j, kInNE);
                add_net("net:s:" + key3(a, b, i),
                        {'v', cs, port_row(b, i, kCanvas) + 1, T},
                        {'h', T, std::min(cs, ct), std::max(cs, ct)},
                        {'v', ct, T + 1, port_row(b - 1, j, 1) - 1},
                        "rail:N:" + key3(a, b - 1, j));
            }
        }
    }

    // Escapes: moves that would leave the modelled register range run into a
    // dead-end stub in the margin and burn out there.
    struct OwnedSeg {
        std::string owner;
        Seg seg;
    };
    std::vector<OwnedSeg> segs;
    for (const Net& net : nets) {
        segs.push_back({net.owner, net.stub});
        segs.push_back({net.owner, net.track});
        segs.push_back({net.rail, net.approach});
    }
    for (int b = 0; b <= B; ++b) {
        for (const auto& [i, j] : east) {
            const int rs = port_row(b, i, kOutNE);
            const int c0 = port_col(A, i, kCanvas) + 1;
            segs.push_back({"esc:e:" + key3(A, b, i), {'h', rs, c0, c0 + kEscapeLen}});
        }
    }
    for (int a = 0; a <= A; ++a) {
        for (const auto& [i, j] : north) {
            const int cs = port_col(a, i, kOutNE);
            const int r0 = port_row(B, i, 1) - 1;
            segs.push_back({"esc:n:" + key3(a, B, i), {'v', cs, r0 - kEscapeLen, r0}});
        }
    }

    // Paint the wires. Same-owner overlap merges (rails), perpendicular
    // overlap of different owners awaits a crossing, anything else is a
    // routing failure.
    std::map<Pt, std::pair<std::string, char>> wire_cells;
    std::set<Pt> pending_cross;
    for (const auto& [owner, seg] : segs) {
        if (seg.lo > seg.hi)
            fail(ErrorCode::Internal, "degenerate wire segment in " + owner);
        for (int t = seg.lo; t <= seg.hi; ++t) {
            const Pt rc = seg.kind == 'h' ? Pt{seg.fixed, t} : Pt{t, seg.fixed};
            if (auto it = cells.find(rc); it != cells.end())
                reject_routing("wire " + owner + " hits " + it->second.second);
            if (auto it = wire_cells.find(rc); it != wire_cells.end()) {
                const auto& [o2, k2] = it->second;
                if (o2 == owner) continue;
                if (k2 != seg.kind) {
                    pending_cross.insert(rc);
                    continue;
                }
                reject_routing("parallel overlap of " + o2 + " and " + owner);
            }
            wire_cells[rc] = {owner, seg.kind};
        }
    }

    // Each track joins its rail through a diode pair: fire leaving the track
    // passes, fire running along the rail cannot climb back in.
    for (const Net& net : nets) {
        const char tk = net.track.kind;
        const int tfix = net.track.fixed;
        const int afix = net.approach.fixed;
        const int d = net.stub.fixed < afix ? 1 : -1;
        const Pt d12 = tk == 'v' ? Pt{afix - 2 * d, tfix} : Pt{tfix, afix - 2 * d};
        const Pt d21 = tk == 'v' ? Pt{afix - d, tfix} : Pt{tfix, afix - d};
        for (const auto& [rc, val] : {std::pair<Pt, Cell>{d12, {1, 2}},
                                      std::pair<Pt, Cell>{d21, {2, 1}}}) {
            auto it = wire_cells.find(rc);
            if (it == wire_cells.end() || it->second.first != net.owner ||
                it->second.second != tk)
                reject_routing("diode site of " + net.owner + " is not free");
            wire_cells.erase(it);
            cells[rc] = {val, net.owner + ":diode"};
        }
    }

    // Stamp a crossing gadget wherever wires of different owners intersect.
    std::set<Pt> crossing_set;
    for (const auto& [ho, hs] : segs) {
        if (hs.kind != 'h') continue;
        for (const auto& [vo, vs] : segs) {
            if (vs.kind != 'v' || ho == vo) continue;
            if (hs.lo <= vs.fixed && vs.fixed <= hs.hi && vs.lo <= hs.fixed &&
                hs.fixed <= vs.hi)
                crossing_set.insert({hs.fixed, vs.fixed});
        }
    }
    const std::vector<Pt> crossings(crossing_set.begin(), crossing_set.end());
    const PatternCells crossing_pat = pattern_from(kCrossing, std::size(kCrossing));
    for (std::size_t idx = 0; idx < crossings.size(); ++idx) {
        const auto [R, C] = crossings[idx];
        for (std::size_t prior = 0; prior < idx; ++prior) {
            const auto [R0, C0] = crossings[prior];
            if (std::abs(R0 - R) < 11 && std::abs(C0 - C) < 11)
                reject_routing("crossing footprints overlap");
        }
        for (int dr = -5; dr <= 5; ++dr) {
            for (int dc = -5; dc <= 5; ++dc) {
                const Pt rc{R + dr, C + dc};
                if (auto it = cells.find(rc); it != cells.end())
                    reject_routing("crossing collides with " + it->second.second);
                if (wire_cells.count(rc)) {
                    if (dr != 0 && dc != 0)
                        reject_routing("crossing would eat an off-line wire");
                    wire_cells.erase(rc);
                    pending_cross.erase(rc);
                }
            }
        }
        for (const auto& [prc, v] : crossing_pat)
            cells[{R + prc.first - 6, C + prc.second - 6}] =
                {v, "cross:" + std::to_string(R) + "," + std::to_string(C)};
    }
    if (!pending_cross.empty()) reject_routing("unresolved wire overlap");

    for (const auto& [rc, ow] : wire_cells) cells[rc] = {{1, 1}, ow.first};

    // Adjacency audit: cells of different owners may touch only where kinds
    // legitimately meet (wire to rail, wire to canvas port, and so on);
    // same-kind contact between different owners means two routes merged.
    auto base_of = [](const std::string& owner) {
        const auto pos = owner.rfind(":diode");
        return pos == std::string::npos ? owner : owner.substr(0, pos);
    };
    auto kind_of = [](const std::string& base) { return base.substr(0, base.find(':')); };
    static const std::set<std::string> kWireKinds{"net", "rail", "cross", "esc",
                                                  "canvas"};
    for (const auto& [rc, cv] : cells) {
        const std::string b1 = base_of(cv.second);
        const std::array<Pt, 4> nbs{{{rc.first - 1, rc.second},
                                     {rc.first + 1, rc.second},
                                     {rc.first, rc.second - 1},
                                     {rc.first, rc.second + 1}}};
        for (const Pt& nb : nbs) {
            const auto it = cells.find(nb);
            if (it == cells.end()) continue;
            const std::string b2 = base_of(it->second.second);
            if (b1 == b2) continue;
            const std::string k1 = kind_of(b1);
            const std::string k2 = kind_of(b2);
            if (k1 != k2 && kWireKinds.count(k1) && kWireKinds.count(k2)) continue;
            reject_routing("unplanned contact between " + b1 + " and " + b2);
        }
    }

    RmCompiled out;
    out.r1_max = A;
    out.r2_max = B;
    out.prog = prog;
    out.grid = make_grid(Lattice::Square, H, W, true, {0, 0});
    for (const auto& [rc, cv] : cells) {
        const RC at{rc.first, rc.second};
        if (!out.grid.in_bounds(at))
            fail(ErrorCode::Internal, "layout cell outside the computed bounds");
        out.grid.at(at) = cv.first;
    }
    for (const auto& [cfg, rc] : centrals) out.centrals[cfg] = {rc.first, rc.second};
    for (const Pt& rc : crossings) out.crossings.push_back({rc.first, rc.second});
    validate_grid(out.grid);

    // Measure every hop by simulation: fire one central, watch for the
    // successor's central. Halting and escaping configurations must instead
    // settle without reaching any other gadget.
    const std::set<RC> watch = [&] {
        std::set<RC> w;
        for (const auto& [cfg, rc] : out.centrals) w.insert(rc);
        return w;
    }();
    constexpr int kLatencyBudget = 4000;
    for (const auto& [cfg, cell] : out.centrals) {
        const std::optional<RmConfig> succ = rm_step(cfg, prog);
        const bool in_range = succ && succ->d1 <= A && succ->d2 <= B;
        ActiveSimulator sim(out.grid);
        sim.ignite(cell);
        std::optional<int> hop;
        bool foreign = false;
        bool settled = false;
        const RC target = in_range ? out.centrals.at(*succ) : RC{};
        while (sim.time() < kLatencyBudget && !hop && !foreign) {
            for (const RC rc : sim.advance()) {
                if (!watch.count(rc)) continue;
                if (in_range && rc == target)
                    hop = sim.time();
                else if (rc != cell)
                    foreign = true;
            }
            if (sim.settled()) {
                settled = true;
                break;
            }
        }
        if (foreign)
            fail(ErrorCode::Internal, "stray fire reached an unrelated gadget");
        if (in_range) {
            if (!hop)
                fail(ErrorCode::Internal, "successor gadget never ignited");
            out.latencies[cfg] = *hop;
        } else if (!settled) {
            fail(ErrorCode::Internal, "terminal configuration failed to settle");
        }
    }
    return out;
}

std::string rm_meta_to_json(const RmCompiled& compiled) {
    nlohmann::json j;
    j["r1_max"] = compiled.r1_max;
    j["r2_max"] = compiled.r2_max;
    auto& cents = j["centrals"] = nlohmann::json::array();
    for (const auto& [cfg, rc] : compiled.centrals)
        cents.push_back({cfg.d1, cfg.d2, cfg.i, rc.r, rc.c});
    auto& lats = j["latencies"] = nlohmann::json::array();
    for (const auto& [cfg, t] : compiled.latencies)
        lats.push_back({cfg.d1, cfg.d2, cfg.i, t});
    return j.dump();
}

RmMeta rm_meta_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        fail(ErrorCode::Parse, std::string("machine metadata: ") + e.what());
    }
    RmMeta meta;
    if (!j.is_object() || !j.contains("r1_max") || !j.contains("r2_max") ||
        !j.contains("centrals") || !j.contains("latencies"))
        fail(ErrorCode::Parse, "machine metadata is incomplete");
    meta.r1_max = j["r1_max"].get<int>();
    meta.r2_max = j["r2_max"].get<int>();
    for (const auto& e : j["centrals"]) {
        if (!e.is_array() || e.size() != 5)
            fail(ErrorCode::Parse, "malformed central entry in machine metadata");
        meta.centrals[{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()}] =
            {e[3].get<int>(), e[4].get<int>()};
    }
    for (const auto& e : j["latencies"]) {
        if (!e.is_array() || e.size() != 4)
            fail(ErrorCode::Parse, "malformed latency entry in machine metadata");
        meta.latencies[{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()}] =
            e[3].get<int>();
    }
    return meta;
}

RmReachResult rm_reach(const Grid& grid, const RmMeta& meta, const RmConfig& start,
                       const RmConfig& target, int t_max) {
    if (t_max < 0) fail(ErrorCode::Input, "time budget must be non-negative");
    const auto its = meta.centrals.find(start);
    if (its == meta.centrals.end())
        fail(ErrorCode::Input, "start configuration is outside the compiled range");
    const auto itt = meta.centrals.find(target);
    if (itt == meta.centrals.end())
        fail(ErrorCode::Input, "target configuration is outside the compiled range");
    ActiveSimulator sim(grid);
    sim.ignite(its->second);
    if (start == target) return {true, 0, false};
    while (sim.time() < t_max) {
        for (const RC rc : sim.advance())
            if (rc == itt->second) return {true, sim.time(), false};
        if (sim.settled()) return {false, 0, true};
    }
    return {false, 0, false};
}

}  // namespace pyro
