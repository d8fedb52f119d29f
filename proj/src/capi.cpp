#include "pyrocell/pyrocell.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "core/engine.hpp"
#include "core/gridfile.hpp"
#include "core/propagate.hpp"
#include "core/reduce.hpp"
#include "core/rm2grid.hpp"
#include "core/selective.hpp"
#include "core/svg.hpp"
#include "core/uniform.hpp"

struct pyro_grid {
    pyro::Grid g;
};

struct pyro_trace {
    pyro::Grid g;
    pyro::Trace t;
};

namespace {

thread_local std::string tl_error;

int status_of(pyro::ErrorCode code) {
    switch (code) {
        case pyro::ErrorCode::Input: return PYRO_ERR_INPUT;
        case pyro::ErrorCode::Parse: return PYRO_ERR_PARSE;
        case pyro::ErrorCode::Unsupported: return PYRO_ERR_UNSUPPORTED;
        case pyro::ErrorCode::Infeasible: return PYRO_ERR_INFEASIBLE;
        case pyro::ErrorCode::Io: return PYRO_ERR_IO;
        case pyro::ErrorCode::Internal: return PYRO_ERR_INTERNAL;
    }
    return PYRO_ERR_INTERNAL;
}

template <typename F>
int guard(F&& body) {
    try {
        body();
        return PYRO_OK;
    } catch (const pyro::PyroError& e) {
        tl_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        tl_error = e.what();
        return PYRO_ERR_INTERNAL;
    } catch (...) {
        tl_error = "unknown failure";
        return PYRO_ERR_INTERNAL;
    }
}

[[noreturn]] void require_failed(const char* what) {
    pyro::fail(pyro::ErrorCode::Input, std::string("null argument: ") + what);
}

template <typename T>
T* require(T* p, const char* what) {
    if (p == nullptr) require_failed(what);
    return p;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) pyro::fail(pyro::ErrorCode::Internal, "out of memory");
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int* dup_ints(const std::vector<int>& v) {
    int* out = static_cast<int*>(std::malloc(sizeof(int) * std::max<std::size_t>(v.size(), 1)));
    if (out == nullptr) pyro::fail(pyro::ErrorCode::Internal, "out of memory");
    std::memcpy(out, v.data(), sizeof(int) * v.size());
    return out;
}

const std::vector<pyro::Cell>& snapshot_at(const pyro_trace& trace, int t) {
    if (t < 0 || t >= static_cast<int>(trace.t.snapshots.size()))
        pyro::fail(pyro::ErrorCode::Input,
                   "snapshot " + std::to_string(t) + " is outside the trace");
    return trace.t.snapshots[static_cast<std::size_t>(t)].states;
}

}  // namespace

extern "C" {

const char* pyro_last_error(void) { return tl_error.c_str(); }

const char* pyro_status_name(int status) {
    switch (status) {
        case PYRO_OK: return "ok";
        case PYRO_ERR_INPUT: return "input";
        case PYRO_ERR_PARSE: return "parse";
        case PYRO_ERR_UNSUPPORTED: return "unsupported";
        case PYRO_ERR_INFEASIBLE: return "infeasible";
        case PYRO_ERR_IO: return "io";
        case PYRO_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void pyro_free(void* buffer) { std::free(buffer); }
void pyro_grid_free(pyro_grid* grid) { delete grid; }
void pyro_trace_free(pyro_trace* trace) { delete trace; }

int pyro_grid_parse(const char* text, char** rm_meta_out, pyro_grid** out) {
    return guard([&] {
        require(text, "text");
        require(out, "out");
        std::string meta;
        auto grid = std::make_unique<pyro_grid>();
        grid->g = pyro::parse_grid(text, &meta);
        if (rm_meta_out != nullptr)
            *rm_meta_out = meta.empty() ? nullptr : dup_string(meta);
        *out = grid.release();
    });
}

int pyro_grid_serialize(const pyro_grid* grid, const char* rm_meta, char** out) {
    return guard([&] {
        require(grid, "grid");
        require(out, "out");
        const std::string meta = rm_meta == nullptr ? "" : rm_meta;
        *out = dup_string(pyro::serialize_grid(grid->g, meta.empty() ? nullptr : &meta));
    });
}

int pyro_grid_dims(const pyro_grid* grid, int* rows, int* cols) {
    return guard([&] {
        require(grid, "grid");
        if (rows != nullptr) *rows = grid->g.rows;
        if (cols != nullptr) *cols = grid->g.cols;
    });
}

int pyro_grid_get_cell(const pyro_grid* grid, int r, int c, int* x, int* y) {
    return guard([&] {
        require(grid, "grid");
        grid->g.check_bounds({r, c});
        const pyro::Cell s = grid->g.at({r, c});
        if (x != nullptr) *x = s.x;
        if (y != nullptr) *y = s.y;
    });
}

int pyro_grid_set_cell(pyro_grid* grid, int r, int c, int x, int y) {
    return guard([&] {
        require(grid, "grid");
        grid->g.check_bounds({r, c});
        const pyro::Cell before = grid->g.at({r, c});
        grid->g.at({r, c}) = {x, y};
        try {
            pyro::validate_grid(grid->g);
        } catch (...) {
            grid->g.at({r, c}) = before;
            throw;
        }
    });
}

int pyro_simulate(const pyro_grid* grid, int t_max, pyro_trace** out) {
    return guard([&] {
        require(grid, "grid");
        require(out, "out");
        auto trace = std::make_unique<pyro_trace>();
        trace->g = grid->g;
        trace->t = pyro::run(grid->g, t_max);
        *out = trace.release();
    });
}

int pyro_trace_last(const pyro_trace* trace, int* last) {
    return guard([&] {
        require(trace, "trace");
        require(last, "last");
        *last = static_cast<int>(trace->t.snapshots.size()) - 1;
    });
}

int pyro_trace_fixpoint(const pyro_trace* trace, int* fixpoint) {
    return guard([&] {
        require(trace, "trace");
        require(fixpoint, "fixpoint");
        *fixpoint = trace->t.reason == pyro::StopReason::Fixpoint ? 1 : 0;
    });
}

int pyro_trace_grid_text(const pyro_trace* trace, int t, char** out) {
    return guard([&] {
        require(trace, "trace");
        require(out, "out");
        pyro::Grid snap = trace->g;
        snap.cells = snapshot_at(*trace, t);
        snap.fire.clear();
        *out = dup_string(pyro::serialize_grid(snap));
    });
}

int pyro_trace_svg(const pyro_trace* trace, int t, int labels, char** out) {
    return guard([&] {
        require(trace, "trace");
        require(out, "out");
        *out = dup_string(pyro::render_svg(trace->g, snapshot_at(*trace, t), labels != 0));
    });
}

int pyro_render_svg(const pyro_grid* grid, int labels, char** out) {
    return guard([&] {
        require(grid, "grid");
        require(out, "out");
        *out = dup_string(
            pyro::render_svg(grid->g, pyro::initial_states(grid->g), labels != 0));
    });
}

int pyro_ignition_time(int x, const int* intervals, int n, int* out) {
    return guard([&] {
        require(out, "out");
        if (n < 0) pyro::fail(pyro::ErrorCode::Input, "negative interval count");
        if (n > 0) require(intervals, "intervals");
        std::vector<pyro::BurningInterval> iv(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            iv[static_cast<std::size_t>(i)] = {intervals[2 * i], intervals[2 * i + 1]};
        *out = pyro::predicted_ignition_time(x, iv);
    });
}

int pyro_propagate(const pyro_grid* grid, int** times, int* len) {
    return guard([&] {
        require(grid, "grid");
        require(times, "times");
        require(len, "len");
        const std::vector<int> result = pyro::fast_fire_propagation(grid->g);
        *times = dup_ints(result);
        *len = static_cast<int>(result.size());
    });
}

int pyro_protect_uniform(const pyro_grid* grid, int* k, int** border, int* border_len,
                         int* single_path) {
    return guard([&] {
        require(grid, "grid");
        require(k, "k");
        require(border, "border");
        require(border_len, "border_len");
        require(single_path, "single_path");
        const pyro::UniformPlan plan = pyro::min_uniform_fortification(grid->g);
        *k = plan.k;
        std::vector<int> flat;
        flat.reserve(plan.border.size() * 2);
        for (const pyro::RC rc : plan.border) {
            flat.push_back(rc.r);
            flat.push_back(rc.c);
        }
        *border = dup_ints(flat);
        *border_len = static_cast<int>(plan.border.size());
        *single_path = plan.single_path ? 1 : 0;
    });
}

int pyro_protect_selective(const pyro_grid* grid, int* cost, int** increments, int* len,
                           int* winding) {
    return guard([&] {
        require(grid, "grid");
        require(cost, "cost");
        require(increments, "increments");
        require(len, "len");
        require(winding, "winding");
        const pyro::SelectivePlan plan = pyro::min_selective_fortification(grid->g);
        *cost = plan.cost;
        std::vector<int> flat;
        flat.reserve(plan.increments.size() * 3);
        for (const auto& [rc, amount] : plan.increments) {
            flat.push_back(rc.r);
            flat.push_back(rc.c);
            flat.push_back(amount);
        }
        *increments = dup_ints(flat);
        *len = static_cast<int>(plan.increments.size());
        *winding = plan.winding;
    });
}

int pyro_vc_reduce(const char* graph_json, char** grid_text) {
    return guard([&] {
        require(graph_json, "graph_json");
        require(grid_text, "grid_text");
        const pyro::VcProblem problem = pyro::parse_vc_problem(graph_json);
        pyro::VcEmbedding embedding;
        if (problem.embedding.has_value()) {
            embedding = *problem.embedding;
            pyro::validate_embedding(problem.graph, embedding);
        } else {
            auto found = pyro::embed_small(problem.graph);
            if (!found.has_value())
                pyro::fail(pyro::ErrorCode::Unsupported,
                           "no drawing found for this graph; supply an embedding");
            embedding = std::move(*found);
        }
        const pyro::VcReduction reduction =
            pyro::reduce_to_grid(problem.graph, embedding);
        *grid_text = dup_string(pyro::serialize_grid(reduction.grid));
    });
}

int pyro_vc_check(const pyro_grid* grid, int m, int* yes) {
    return guard([&] {
        require(grid, "grid");
        require(yes, "yes");
        *yes = pyro::vc_check(grid->g, m) ? 1 : 0;
    });
}

int pyro_rm_compile(const char* program_text, int r1_max, int r2_max, char** grid_text) {
    return guard([&] {
        require(program_text, "program_text");
        require(grid_text, "grid_text");
        const pyro::RmProgram prog = pyro::parse_rm_program(program_text);
        const pyro::RmCompiled compiled = pyro::rm_compile(prog, r1_max, r2_max);
        const std::string meta = pyro::rm_meta_to_json(compiled);
        *grid_text = dup_string(pyro::serialize_grid(compiled.grid, &meta));
    });
}

int pyro_rm_reach(const char* grid_text, int d1, int d2, int i, int e1, int e2, int j,
                  int t_max, int* reached, int* t, int* settled) {
    return guard([&] {
        require(grid_text, "grid_text");
        require(reached, "reached");
        require(t, "t");
        require(settled, "settled");
        std::string meta;
        const pyro::Grid grid = pyro::parse_grid(grid_text, &meta);
        if (meta.empty())
            pyro::fail(pyro::ErrorCode::Input,
                       "the grid carries no machine metadata; compile it first");
        const pyro::RmMeta parsed = pyro::rm_meta_from_json(meta);
        const pyro::RmReachResult result =
            pyro::rm_reach(grid, parsed, {d1, d2, i}, {e1, e2, j}, t_max);
        *reached = result.reached ? 1 : 0;
        *t = result.t;
        *settled = result.settled ? 1 : 0;
    });
}

}  // extern "C"
