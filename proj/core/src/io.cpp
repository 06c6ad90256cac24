#include "slitsim/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "slitsim/errors.hpp"

namespace slitsim {

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (const unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace

std::uint64_t config_fingerprint(const SimulationConfig& config) {
  std::string text;
  auto field = [&text](std::string_view key, const std::string& value) {
    text.append(key);
    text.push_back('=');
    text.append(value);
    text.push_back('\n');
  };
  field("hbar", format_double(config.params.hbar));
  field("mass", format_double(config.params.mass));
  field("omega", format_double(config.params.omega));
  for (std::size_t k = 0; k < config.slits.size(); ++k) {
    const std::string prefix = "slit" + std::to_string(k + 1) + ".";
    field(prefix + "x0", format_double(config.slits[k].x0));
    field(prefix + "v", format_double(config.slits[k].v));
    field(prefix + "sigma0", format_double(config.slits[k].sigma0));
    field(prefix + "dphi", format_double(config.slits[k].dphi));
  }
  field("grid.x_min", format_double(config.grid.x_min));
  field("grid.x_max", format_double(config.grid.x_max));
  field("grid.nx", std::to_string(config.grid.nx));
  field("grid.t_min", format_double(config.grid.t_min));
  field("grid.t_max", format_double(config.grid.t_max));
  field("grid.nt", std::to_string(config.grid.nt));
  field("phase_mode", to_string(config.mode));
  return fnv1a64(text);
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw io_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read file: " + path);
  std::string bytes;
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  if (size > 0) {
    bytes.resize(static_cast<std::size_t>(size));
    in.seekg(0, std::ios::beg);
    in.read(bytes.data(), size);
  }
  if (in.bad()) throw io_error("read failed: " + path);
  return bytes;
}

std::string render_intensity_pgm(
    const std::vector<std::vector<double>>& p_frames) {
  if (p_frames.empty() || p_frames.front().empty())
    throw invalid_config("invalid config: cannot render an empty frame set");
  const std::size_t nt = p_frames.size();
  const std::size_t nx = p_frames.front().size();
  double max = 0.0;
  for (const auto& frame : p_frames) {
    if (frame.size() != nx)
      throw invalid_config("invalid config: ragged frame set");
    for (const double p : frame) max = std::max(max, p);
  }
  std::string bytes = "P5\n" + std::to_string(nx) + " " + std::to_string(nt) +
                      "\n65535\n";
  bytes.reserve(bytes.size() + 2 * nt * nx);
  // Later times go toward the top of the image, so emit frames in reverse.
  for (std::size_t j = nt; j-- > 0;) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::uint16_t sample =
          max > 0.0 ? static_cast<std::uint16_t>(
                          std::llround(p_frames[j][i] / max * 65535.0))
                    : 0;
      bytes.push_back(static_cast<char>(sample >> 8));
      bytes.push_back(static_cast<char>(sample & 0xff));
    }
  }
  return bytes;
}

namespace {

[[noreturn]] void bad_csv(const std::string& path, std::size_t lineno,
                          const std::string& what) {
  throw io_error(path + ": line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

FieldsTable read_fields_csv(const std::string& path) {
  const std::string bytes = read_file(path);

  struct Row {
    double t;
    double x;
    double p;
  };
  std::vector<Row> rows;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < bytes.size()) {
    auto nl = bytes.find('\n', pos);
    if (nl == std::string::npos) nl = bytes.size();
    std::string_view line(bytes.data() + pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (!header_seen) {
      if (line != kFieldsCsvHeader)
        bad_csv(path, lineno, "expected header '" +
                                  std::string(kFieldsCsvHeader) + "'");
      header_seen = true;
      continue;
    }

    double fields[10];
    std::size_t n_fields = 0;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      const std::string_view cell =
          line.substr(start, comma == std::string_view::npos
                                 ? line.size() - start
                                 : comma - start);
      if (n_fields >= 10)
        bad_csv(path, lineno, "expected 10 fields");
      double v = 0.0;
      const char* begin = cell.data();
      const char* end = begin + cell.size();
      const auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc{} || ptr != end)
        bad_csv(path, lineno, "field " + std::to_string(n_fields + 1) +
                                  " ('" + std::string(cell) +
                                  "') is not a number");
      fields[n_fields++] = v;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (n_fields != 10) bad_csv(path, lineno, "expected 10 fields");
    rows.push_back(Row{fields[0], fields[1], fields[2]});
  }

  if (!header_seen) bad_csv(path, 1, "empty file, expected header");
  if (rows.empty()) bad_csv(path, lineno + 1, "no data rows");

  // The x grid is the first run of rows sharing the first row's t value.
  std::size_t nx = 0;
  while (nx < rows.size() && rows[nx].t == rows.front().t) ++nx;
  if (rows.size() % nx != 0)
    bad_csv(path, 1 + rows.size(),
            "row count " + std::to_string(rows.size()) +
                " is not a multiple of the x grid size " + std::to_string(nx));
  const std::size_t nt = rows.size() / nx;

  FieldsTable table;
  table.xs.reserve(nx);
  for (std::size_t i = 0; i < nx; ++i) table.xs.push_back(rows[i].x);
  table.ts.reserve(nt);
  table.p.assign(nt, std::vector<double>(nx));
  for (std::size_t j = 0; j < nt; ++j) {
    const std::size_t base = j * nx;
    const double t = rows[base].t;
    if (j > 0 && !(t > table.ts.back()))
      bad_csv(path, 2 + base, "time values must be strictly ascending");
    table.ts.push_back(t);
    for (std::size_t i = 0; i < nx; ++i) {
      const Row& row = rows[base + i];
      if (row.t != t)
        bad_csv(path, 2 + base + i,
                "time changes mid-frame (every frame must span the x grid)");
      if (row.x != table.xs[i])
        bad_csv(path, 2 + base + i,
                "x grid differs from the first frame's");
      table.p[j][i] = row.p;
    }
  }
  return table;
}

}  // namespace slitsim
