#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace pyro {

// Two-counter register machine. Instructions are numbered 1..n, in order, and
// the program ends with its single Halt.
struct RmInstruction {
    enum class Kind { Add, Sub, Halt };
    Kind kind = Kind::Halt;
    int reg = 1;     // 1 or 2, for Add and Sub
    int j = 0;       // Add: next instruction
    int j_zero = 0;  // Sub: next instruction when the register is zero
    int k_dec = 0;   // Sub: next instruction after decrementing
};

using RmProgram = std::vector<RmInstruction>;

struct RmConfig {
    int d1 = 0;  // register contents
    int d2 = 0;
    int i = 1;  // current instruction number
    auto operator<=>(const RmConfig&) const = default;
};

// One machine step; nothing when the current instruction is Halt.
std::optional<RmConfig> rm_step(const RmConfig& cfg, const RmProgram& prog);

// Text format, one instruction per line, numbered densely from 1:
//   <i> ADD r1|r2 <j>
//   <i> SUB r1|r2 <j_zero> <k_dec>
//   <n> HALT
// Blank lines and '#' comments are ignored.
RmProgram parse_rm_program(const std::string& text);

struct RmCompiled {
    Grid grid;  // square lattice, regeneration on
    int r1_max = 0;
    int r2_max = 0;
    RmProgram prog;
    // Central cell of the gadget representing each configuration within the
    // modelled register ranges.
    std::map<RmConfig, RC> centrals;
    // Steps from igniting a configuration's central to its successor's
    // central igniting; absent for halting and escaping configurations.
    std::map<RmConfig, int> latencies;
    std::vector<RC> crossings;
};

// Lays the machine out as one fire gadget per configuration, with channel
// routed connectors, one-way diode junctions where connectors join shared
// rails, and crossing gadgets where connectors intersect. Hop latencies are
// measured by simulation before returning. Programs whose connectors cannot
// keep the required clearances are rejected with an Unsupported error.
RmCompiled rm_compile(const RmProgram& prog, int r1_max, int r2_max);

// Compact metadata embedded in compiled grid files so reachability queries
// work without recompiling.
struct RmMeta {
    int r1_max = 0;
    int r2_max = 0;
    std::map<RmConfig, RC> centrals;
    std::map<RmConfig, int> latencies;
};

std::string rm_meta_to_json(const RmCompiled& compiled);
RmMeta rm_meta_from_json(const std::string& json_text);

struct RmReachResult {
    bool reached = false;
    int t = 0;  // ignition time of the target's central when reached
    bool settled = false;
};

// Ignites the start configuration's central cell and watches whether the
// target configuration's central ignites within t_max steps. Stops early when
// the grid settles.
RmReachResult rm_reach(const Grid& grid, const RmMeta& meta, const RmConfig& start,
                       const RmConfig& target, int t_max);

}  // namespace pyro
