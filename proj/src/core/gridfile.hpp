#pragma once

#include <string>
#include <vector>

#include "lattice.hpp"

namespace pyro {

// Parses the plain-text grid format:
//
//   lattice hex            (or square)
//   size <rows> <cols>
//   regen on               (optional, defaults to off)
//   default <x>;<y>        (optional, defaults to 0;0)
//   cell <r> <c> <x>;<y>
//   fire <r> <c>
//   village <r> <c>
//   target <r> <c>
//
// '#' starts a comment, except for the "# rm-meta <json>" carrier line which
// is returned verbatim through rm_meta_out when requested. Directives may
// appear in any order. A repeated cell directive wins over earlier ones and
// is reported through warnings.
Grid parse_grid(const std::string& text, std::string* rm_meta_out = nullptr,
                std::vector<std::string>* warnings = nullptr);

// Canonical serialization: header, then cell lines for every cell that
// deviates from the most common value, then sorted marks. Parsing the output
// reproduces the grid exactly.
std::string serialize_grid(const Grid& grid, const std::string* rm_meta = nullptr);

}  // namespace pyro
