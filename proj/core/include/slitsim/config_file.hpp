#pragma once

#include <string>
#include <string_view>

#include "slitsim/model.hpp"

namespace slitsim {

// Parses the plain-text configuration format: one `key = value` per line,
// `#` starts a comment, blank lines ignored.  Recognized keys:
//
//   hbar, mass, omega
//   slit1.x0, slit1.v, slit1.sigma0, slit1.dphi
//   slit2.x0, slit2.v, slit2.sigma0, slit2.dphi
//   grid.x_min, grid.x_max, grid.nx, grid.t_min, grid.t_max, grid.nt
//   phase_mode   (paper | qm; the long spellings paper-verbatim and
//                 qm-exact are accepted aliases)
//
// Every key is optional and falls back to the struct defaults; a second
// channel exists iff at least one slit2.* key appears.  Unknown keys,
// duplicate keys, and malformed values are errors (fail-closed), reported
// with their line number via invalid_config.  The assembled configuration is
// validated before being returned.
SimulationConfig parse_config(std::string_view text);

// Reads and parses the file; unreadable files raise io_error, invalid
// content raises invalid_config prefixed with the path.
SimulationConfig load_config(const std::string& path);

}  // namespace slitsim
