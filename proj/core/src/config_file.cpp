#include "slitsim/config_file.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slitsim/errors.hpp"

namespace slitsim {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw invalid_config("invalid config: line " + std::to_string(lineno) +
                       ": " + what);
}

double parse_double(std::string_view value, int lineno,
                    std::string_view key) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end)
    fail(lineno, "value '" + std::string(value) + "' for key '" +
                     std::string(key) + "' is not a number");
  return out;
}

int parse_int(std::string_view value, int lineno, std::string_view key) {
  int out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end)
    fail(lineno, "value '" + std::string(value) + "' for key '" +
                     std::string(key) + "' is not an integer");
  return out;
}

}  // namespace

SimulationConfig parse_config(std::string_view text) {
  PhysicalParams params;
  SlitConfig slit1;
  SlitConfig slit2;
  bool slit2_seen = false;
  GridSpec grid;
  PhaseMode mode = PhaseMode::paper;

  std::set<std::string, std::less<>> seen;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(lineno, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "expected key = value");
    if (value.empty())
      fail(lineno, "key '" + std::string(key) + "' has no value");
    if (!seen.insert(std::string(key)).second)
      fail(lineno, "duplicate key '" + std::string(key) + "'");

    if (key.substr(0, 6) == "slit2.") slit2_seen = true;

    if (key == "hbar") {
      params.hbar = parse_double(value, lineno, key);
    } else if (key == "mass") {
      params.mass = parse_double(value, lineno, key);
    } else if (key == "omega") {
      params.omega = parse_double(value, lineno, key);
    } else if (key == "slit1.x0") {
      slit1.x0 = parse_double(value, lineno, key);
    } else if (key == "slit1.v") {
      slit1.v = parse_double(value, lineno, key);
    } else if (key == "slit1.sigma0") {
      slit1.sigma0 = parse_double(value, lineno, key);
    } else if (key == "slit1.dphi") {
      slit1.dphi = parse_double(value, lineno, key);
    } else if (key == "slit2.x0") {
      slit2.x0 = parse_double(value, lineno, key);
    } else if (key == "slit2.v") {
      slit2.v = parse_double(value, lineno, key);
    } else if (key == "slit2.sigma0") {
      slit2.sigma0 = parse_double(value, lineno, key);
    } else if (key == "slit2.dphi") {
      slit2.dphi = parse_double(value, lineno, key);
    } else if (key == "grid.x_min") {
      grid.x_min = parse_double(value, lineno, key);
    } else if (key == "grid.x_max") {
      grid.x_max = parse_double(value, lineno, key);
    } else if (key == "grid.nx") {
      grid.nx = parse_int(value, lineno, key);
    } else if (key == "grid.t_min") {
      grid.t_min = parse_double(value, lineno, key);
    } else if (key == "grid.t_max") {
      grid.t_max = parse_double(value, lineno, key);
    } else if (key == "grid.nt") {
      grid.nt = parse_int(value, lineno, key);
    } else if (key == "phase_mode") {
      if (value == "paper" || value == "paper-verbatim") {
        mode = PhaseMode::paper;
      } else if (value == "qm" || value == "qm-exact") {
        mode = PhaseMode::qm;
      } else {
        fail(lineno, "phase_mode must be 'paper' or 'qm', got '" +
                         std::string(value) + "'");
      }
    } else {
      fail(lineno, "unknown key '" + std::string(key) + "'");
    }
  }

  std::vector<SlitConfig> slits{slit1};
  if (slit2_seen) slits.push_back(slit2);
  return validate(params, slits, grid, mode);
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw io_error("cannot read config file: " + path);
  try {
    return parse_config(buffer.str());
  } catch (const invalid_config& e) {
    throw invalid_config(path + ": " + e.what());
  }
}

}  // namespace slitsim
