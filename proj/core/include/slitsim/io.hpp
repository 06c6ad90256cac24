#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slitsim/model.hpp"

namespace slitsim {

// Exact header of fields.csv; columns j_conv1/j_conv2/j_interf/j_entangling
// are the four current terms, j_total their sum.
inline constexpr const char* kFieldsCsvHeader =
    "t,x,p_tot,j_total,j_conv1,j_conv2,j_interf,j_entangling,phi12,v_eff";

// Shortest decimal representation that round-trips the exact binary64 value
// (std::to_chars); locale-independent.
std::string format_double(double value);

// FNV-1a 64-bit hash over a canonical serialization of the configuration.
std::uint64_t config_fingerprint(const SimulationConfig& config);

// Writes the bytes, creating/truncating the file; io_error names the path.
void write_file(const std::string& path, std::string_view bytes);

// Reads the whole file; io_error names the path.
std::string read_file(const std::string& path);

// Binary 16-bit PGM (magic P5, maxval 65535, big-endian samples) of the
// density history: one image row per time slice, later times toward the top
// of the image (evolution runs bottom to top), one column per x grid point.
// Values are scaled to [0, 65535] by the maximum density over all frames.
// p_frames[j][i] is the density at time index j (ascending) and x index i.
std::string render_intensity_pgm(
    const std::vector<std::vector<double>>& p_frames);

// fields.csv reduced to what re-rendering needs: the time values (ascending,
// one per frame), the x grid, and the density matrix p[j][i].
struct FieldsTable {
  std::vector<double> ts;
  std::vector<double> xs;
  std::vector<std::vector<double>> p;
};

// Parses a fields.csv produced by this tool: exact header, then rows of 10
// numeric fields ordered ascending in t then x.  Structural problems (empty
// file, wrong header, truncated row, unparsable number, inconsistent grid)
// raise io_error naming the path and 1-based line.
FieldsTable read_fields_csv(const std::string& path);

}  // namespace slitsim
