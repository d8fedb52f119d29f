// Command-line front end for the pyrocell shared library.
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pyrocell/pyrocell.h"

namespace {

constexpr int kExitError = 2;

[[noreturn]] void die(int status) {
    std::cerr << "error: " << pyro_status_name(status) << ": " << pyro_last_error()
              << "\n";
    std::exit(kExitError);
}

[[noreturn]] void die_io(const std::string& message) {
    std::cerr << "error: io: " << message << "\n";
    std::exit(kExitError);
}

void check(int status) {
    if (status != PYRO_OK) die(status);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die_io("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) die_io("cannot write " + path);
    out << content;
    if (!out) die_io("cannot write " + path);
}

struct GridHandle {
    pyro_grid* g = nullptr;
    std::string rm_meta;

    ~GridHandle() { pyro_grid_free(g); }
};

GridHandle load_grid(const std::string& path) {
    GridHandle handle;
    const std::string text = read_file(path);
    char* meta = nullptr;
    check(pyro_grid_parse(text.c_str(), &meta, &handle.g));
    if (meta != nullptr) {
        handle.rm_meta = meta;
        pyro_free(meta);
    }
    return handle;
}

std::string take_string(char* s) {
    std::string out = s == nullptr ? "" : s;
    pyro_free(s);
    return out;
}

struct Config {
    int d1 = 0, d2 = 0, i = 1;
};

Config parse_config(const std::string& text) {
    Config cfg;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d,%d,%d%c", &cfg.d1, &cfg.d2, &cfg.i, &extra) != 3) {
        std::cerr << "error: input: expected d1,d2,i but got '" << text << "'\n";
        std::exit(kExitError);
    }
    return cfg;
}

int cmd_simulate(const std::string& grid_path, int steps, const std::string& trace_dir,
                 bool svg) {
    GridHandle grid = load_grid(grid_path);
    pyro_trace* trace = nullptr;
    check(pyro_simulate(grid.g, steps, &trace));
    const std::unique_ptr<pyro_trace, decltype(&pyro_trace_free)> owner(trace,
                                                                        pyro_trace_free);
    int last = 0, fixpoint = 0;
    check(pyro_trace_last(trace, &last));
    check(pyro_trace_fixpoint(trace, &fixpoint));
    std::cout << "t=" << last << " " << (fixpoint ? "fixpoint" : "budget") << "\n";
    if (!trace_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(trace_dir, ec);
        if (ec) die_io("cannot create directory " + trace_dir);
        for (int t = 0; t <= last; ++t) {
            char name[32];
            std::snprintf(name, sizeof(name), "t%04d", t);
            char* text = nullptr;
            check(pyro_trace_grid_text(trace, t, &text));
            write_file(trace_dir + "/" + name + ".grid", take_string(text));
            if (svg) {
                char* image = nullptr;
                check(pyro_trace_svg(trace, t, 0, &image));
                write_file(trace_dir + "/" + name + ".svg", take_string(image));
            }
        }
    } else {
        char* text = nullptr;
        check(pyro_trace_grid_text(trace, last, &text));
        std::cout << take_string(text);
    }
    return 0;
}

int cmd_propagate(const std::string& grid_path, const std::string& json_path) {
    GridHandle grid = load_grid(grid_path);
    int rows = 0, cols = 0;
    check(pyro_grid_dims(grid.g, &rows, &cols));
    int* times = nullptr;
    int len = 0;
    check(pyro_propagate(grid.g, &times, &len));
    nlohmann::json table = nlohmann::json::object();
    for (int r = 1; r <= rows; ++r) {
        for (int c = 1; c <= cols; ++c) {
            const int t = times[(r - 1) * cols + (c - 1)];
            const std::string key = "r" + std::to_string(r) + "c" + std::to_string(c);
            if (t < 0)
                table[key] = nullptr;
            else
                table[key] = t;
        }
    }
    pyro_free(times);
    const std::string text = table.dump(2) + "\n";
    if (json_path.empty())
        std::cout << text;
    else
        write_file(json_path, text);
    return 0;
}

int cmd_protect_uniform(const std::string& grid_path, const std::string& out_path) {
    GridHandle grid = load_grid(grid_path);
    int k = 0, border_len = 0, single_path = 0;
    int* border = nullptr;
    check(pyro_protect_uniform(grid.g, &k, &border, &border_len, &single_path));
    std::cout << "k " << k << "\n";
    std::cout << "single_path " << (single_path ? "yes" : "no") << "\n";
    for (int i = 0; i < border_len; ++i)
        std::cout << "border " << border[2 * i] << " " << border[2 * i + 1] << "\n";
    if (!out_path.empty()) {
        for (int i = 0; i < border_len; ++i) {
            const int r = border[2 * i], c = border[2 * i + 1];
            int x = 0, y = 0;
            check(pyro_grid_get_cell(grid.g, r, c, &x, &y));
            check(pyro_grid_set_cell(grid.g, r, c, x + k, y));
        }
        char* text = nullptr;
        check(pyro_grid_serialize(grid.g, nullptr, &text));
        write_file(out_path, take_string(text));
    }
    pyro_free(border);
    return 0;
}

int cmd_protect_selective(const std::string& grid_path, const std::string& out_path) {
    GridHandle grid = load_grid(grid_path);
    int cost = 0, len = 0, winding = 0;
    int* increments = nullptr;
    check(pyro_protect_selective(grid.g, &cost, &increments, &len, &winding));
    std::cout << "cost " << cost << "\n";
    std::cout << "winding " << winding << "\n";
    for (int i = 0; i < len; ++i)
        std::cout << "add " << increments[3 * i] << " " << increments[3 * i + 1] << " "
                  << increments[3 * i + 2] << "\n";
    if (!out_path.empty()) {
        nlohmann::json plan;
        plan["cost"] = cost;
        plan["winding"] = winding;
        plan["increments"] = nlohmann::json::array();
        for (int i = 0; i < len; ++i)
            plan["increments"].push_back(
                {increments[3 * i], increments[3 * i + 1], increments[3 * i + 2]});
        write_file(out_path, plan.dump(2) + "\n");
    }
    pyro_free(increments);
    return 0;
}

int cmd_vc_reduce(const std::string& graph_path, const std::string& out_path, int m) {
    const std::string graph_json = read_file(graph_path);
    char* text = nullptr;
    check(pyro_vc_reduce(graph_json.c_str(), &text));
    const std::string grid_text = take_string(text);
    write_file(out_path, grid_text);
    if (m >= 0) {
        pyro_grid* grid = nullptr;
        check(pyro_grid_parse(grid_text.c_str(), nullptr, &grid));
        int yes = 0;
        const int status = pyro_vc_check(grid, m, &yes);
        pyro_grid_free(grid);
        check(status);
        std::cout << (yes ? "yes" : "no") << "\n";
        return yes ? 0 : 1;
    }
    return 0;
}

int cmd_vc_check(const std::string& instance_path, int m) {
    GridHandle grid = load_grid(instance_path);
    int yes = 0;
    check(pyro_vc_check(grid.g, m, &yes));
    std::cout << (yes ? "yes" : "no") << "\n";
    return yes ? 0 : 1;
}

int cmd_rm_compile(const std::string& program_path, int r1_max, int r2_max,
                   const std::string& out_path) {
    const std::string program = read_file(program_path);
    char* text = nullptr;
    check(pyro_rm_compile(program.c_str(), r1_max, r2_max, &text));
    write_file(out_path, take_string(text));
    return 0;
}

int cmd_rm_reach(const std::string& grid_path, const std::string& start,
                 const std::string& target, int t_max) {
    const std::string text = read_file(grid_path);
    const Config s = parse_config(start);
    const Config e = parse_config(target);
    int reached = 0, t = 0, settled = 0;
    check(pyro_rm_reach(text.c_str(), s.d1, s.d2, s.i, e.d1, e.d2, e.i, t_max, &reached,
                        &t, &settled));
    if (reached) {
        std::cout << "reached t=" << t << "\n";
        return 0;
    }
    std::cout << "not-reached " << (settled ? "settled" : "budget") << "\n";
    return 1;
}

int cmd_render(const std::string& grid_path, int at, const std::string& out_path,
               bool labels) {
    GridHandle grid = load_grid(grid_path);
    std::string image;
    if (at == 0) {
        char* text = nullptr;
        check(pyro_render_svg(grid.g, labels ? 1 : 0, &text));
        image = take_string(text);
    } else {
        pyro_trace* trace = nullptr;
        check(pyro_simulate(grid.g, at, &trace));
        const std::unique_ptr<pyro_trace, decltype(&pyro_trace_free)> owner(
            trace, pyro_trace_free);
        int last = 0;
        check(pyro_trace_last(trace, &last));
        // Past a fixpoint the state no longer changes, so the last snapshot
        // stands in for any later time.
        char* text = nullptr;
        check(pyro_trace_svg(trace, std::min(at, last), labels ? 1 : 0, &text));
        image = take_string(text);
    }
    write_file(out_path, image);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fire-spread cellular automaton toolkit"};
    app.require_subcommand(1);

    std::string grid_path, trace_dir, json_path, graph_path, instance_path;
    std::string program_path, out_path, start, target;
    int steps = 1000, m = -1, r1_max = 0, r2_max = 0, t_max = 10000, at = 0;
    bool svg = false, labels = false;

    auto* simulate = app.add_subcommand("simulate", "run the automaton");
    simulate->add_option("--grid", grid_path, "grid file")->required();
    simulate->add_option("--steps", steps, "step budget (default 1000)");
    simulate->add_option("--trace", trace_dir, "write every snapshot to this directory");
    simulate->add_flag("--svg", svg, "also render trace snapshots as SVG");

    auto* propagate = app.add_subcommand("propagate", "per-cell ignition times");
    propagate->add_option("--grid", grid_path, "grid file")->required();
    propagate->add_option("--json", json_path, "write the table here instead of stdout");

    auto* pu = app.add_subcommand("protect-uniform", "minimal uniform fortification");
    pu->add_option("--grid", grid_path, "grid file")->required();
    pu->add_option("--out", out_path, "write the fortified grid here");

    auto* ps = app.add_subcommand("protect-selective", "minimal per-cell fortification");
    ps->add_option("--grid", grid_path, "grid file")->required();
    ps->add_option("--out", out_path, "write the plan as JSON here");

    auto* vr = app.add_subcommand("vc-reduce", "graph to grid-instance reduction");
    vr->add_option("--graph", graph_path, "graph JSON file")->required();
    vr->add_option("--out", out_path, "output grid file")->required();
    vr->add_option("--m", m, "also check this ignition budget");

    auto* vc = app.add_subcommand("vc-check", "can m ignition points burn all targets");
    vc->add_option("--instance", instance_path, "instance grid file")->required();
    vc->add_option("--m", m, "ignition budget")->required();

    auto* rc = app.add_subcommand("rm-compile", "compile a counter machine to a grid");
    rc->add_option("--program", program_path, "program file")->required();
    rc->add_option("--r1-max", r1_max, "largest modelled value of register 1")->required();
    rc->add_option("--r2-max", r2_max, "largest modelled value of register 2")->required();
    rc->add_option("--out", out_path, "output grid file")->required();

    auto* rr = app.add_subcommand("rm-reach", "configuration reachability by fire");
    rr->add_option("--grid", grid_path, "compiled machine grid")->required();
    rr->add_option("--start", start, "start configuration d1,d2,i")->required();
    rr->add_option("--target", target, "target configuration d1,d2,i")->required();
    rr->add_option("--t-max", t_max, "step budget (default 10000)");

    auto* render = app.add_subcommand("render", "render a snapshot as SVG");
    render->add_option("--grid", grid_path, "grid file")->required();
    render->add_option("--at", at, "time of the snapshot (default 0)");
    render->add_option("--out", out_path, "output SVG file")->required();
    render->add_flag("--labels", labels, "print x;y in every cell");

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) return cmd_simulate(grid_path, steps, trace_dir, svg);
    if (propagate->parsed()) return cmd_propagate(grid_path, json_path);
    if (pu->parsed()) return cmd_protect_uniform(grid_path, out_path);
    if (ps->parsed()) return cmd_protect_selective(grid_path, out_path);
    if (vr->parsed()) return cmd_vc_reduce(graph_path, out_path, m);
    if (vc->parsed()) return cmd_vc_check(instance_path, m);
    if (rc->parsed()) return cmd_rm_compile(program_path, r1_max, r2_max, out_path);
    if (rr->parsed()) return cmd_rm_reach(grid_path, start, target, t_max);
    if (render->parsed()) return cmd_render(grid_path, at, out_path, labels);
    return 0;
}
