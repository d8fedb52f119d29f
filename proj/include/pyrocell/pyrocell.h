/* pyrocell: fire-spread cellular automaton on hex and square lattices.
 *
 * Every function returns PYRO_OK (0) on success or a pyro_status error code;
 * pyro_last_error() describes the most recent failure on the calling thread.
 * Strings and arrays returned through out-parameters are heap-allocated and
 * must be released with pyro_free(); handles have their own free functions.
 */
#ifndef PYROCELL_H
#define PYROCELL_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pyro_status {
    PYRO_OK = 0,
    PYRO_ERR_INPUT = 1,       /* bad arguments or malformed instances */
    PYRO_ERR_PARSE = 2,       /* unreadable grid, program, or metadata text */
    PYRO_ERR_UNSUPPORTED = 3, /* operation undefined for this lattice/variant */
    PYRO_ERR_INFEASIBLE = 4,  /* well-formed instance with no solution */
    PYRO_ERR_IO = 5,          /* file access failure */
    PYRO_ERR_INTERNAL = 6     /* broken invariant */
} pyro_status;

typedef struct pyro_grid pyro_grid;
typedef struct pyro_trace pyro_trace;

/* Message for the most recent error on this thread; empty string if none.
 * The pointer stays valid until the next failing call on the same thread. */
const char* pyro_last_error(void);

/* Short lowercase name ("input", "parse", ...) for a status code. */
const char* pyro_status_name(int status);

void pyro_free(void* buffer);
void pyro_grid_free(pyro_grid* grid);
void pyro_trace_free(pyro_trace* trace);

/* --- grid text format ------------------------------------------------- */

/* Parses grid text. rm_meta_out (nullable) receives the embedded machine
 * metadata JSON line when present, or NULL when absent. */
int pyro_grid_parse(const char* text, char** rm_meta_out, pyro_grid** out);

/* Canonical text for a grid; rm_meta (nullable) is embedded verbatim. */
int pyro_grid_serialize(const pyro_grid* grid, const char* rm_meta, char** out);

int pyro_grid_dims(const pyro_grid* grid, int* rows, int* cols);

/* Reads one cell's resistance and fuel. Coordinates are 1-based. */
int pyro_grid_get_cell(const pyro_grid* grid, int r, int c, int* x, int* y);

/* Overwrites one cell. The change must leave the grid well formed (for
 * example, a cell carrying a fire mark keeps fuel, and regenerating grids
 * never store a burning cell); otherwise the grid is left untouched and an
 * input error is reported. */
int pyro_grid_set_cell(pyro_grid* grid, int r, int c, int x, int y);

/* --- simulation --------------------------------------------------------- */

/* Runs at most t_max steps (t_max >= 1). The trace holds snapshots for
 * t = 0..pyro_trace_last(trace). */
int pyro_simulate(const pyro_grid* grid, int t_max, pyro_trace** out);

/* Index of the last snapshot. */
int pyro_trace_last(const pyro_trace* trace, int* last);

/* 1 if the run reached a fixpoint (two equal consecutive states), 0 if it
 * stopped because the step budget ran out. */
int pyro_trace_fixpoint(const pyro_trace* trace, int* fixpoint);

/* Snapshot t as grid text. Fire marks are dropped: the flames live in the
 * cell states themselves. */
int pyro_trace_grid_text(const pyro_trace* trace, int t, char** out);

/* Snapshot t rendered as SVG. */
int pyro_trace_svg(const pyro_trace* trace, int t, int labels, char** out);

/* The initial state (fire marks applied) rendered as SVG. */
int pyro_render_svg(const pyro_grid* grid, int labels, char** out);

/* --- ignition-time prediction ------------------------------------------ */

/* Earliest step at which a cell with resistance x ignites when exposed to
 * the given burning intervals, or -1 if it never does. Each interval is a
 * (start, fuel) pair; intervals has 2*n entries. */
int pyro_ignition_time(int x, const int* intervals, int n, int* out);

/* Per-cell ignition times via the event-driven frontier algorithm, row-major,
 * -1 for cells that never burn. The array has rows*cols entries. */
int pyro_propagate(const pyro_grid* grid, int** times, int* len);

/* --- fortification planning -------------------------------------------- */

/* Minimal uniform reinforcement k added to every cell so the fire column
 * never reaches the village column, plus the border cells to fortify.
 * border receives (r,c) pairs (2*border_len entries). */
int pyro_protect_uniform(const pyro_grid* grid, int* k, int** border,
                         int* border_len, int* single_path);

/* Minimal selective fortification: increments receives (r,c,amount) triples
 * (3*len entries); winding is the separating walk's turning number. */
int pyro_protect_selective(const pyro_grid* grid, int* cost, int** increments,
                           int* len, int* winding);

/* --- vertex-cover reduction --------------------------------------------- */

/* Builds the grid instance for a small graph given as JSON
 * ({"vertices":[...],"edges":[[u,v],...]}, optional "embedding"). */
int pyro_vc_reduce(const char* graph_json, char** grid_text);

/* 1 if some subset of at most m fire-marked cells burns every target. */
int pyro_vc_check(const pyro_grid* grid, int m, int* yes);

/* --- register-machine compilation --------------------------------------- */

/* Compiles a counter-machine program (text form) into a grid whose text
 * carries the central/latency metadata needed by pyro_rm_reach. */
int pyro_rm_compile(const char* program_text, int r1_max, int r2_max,
                    char** grid_text);

/* Whether fire started at configuration (d1,d2,i) reaches the gadget of
 * (e1,e2,j) within t_max steps. Requires the metadata emitted by
 * pyro_rm_compile. reached/settled are 0/1; t is the ignition step when
 * reached. */
int pyro_rm_reach(const char* grid_text, int d1, int d2, int i, int e1, int e2,
                  int j, int t_max, int* reached, int* t, int* settled);

#ifdef __cplusplus
}
#endif

#endif /* PYROCELL_H */
