#include "slitsim/model.hpp"

#include <cmath>
#include <string>

namespace slitsim {

namespace {

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw invalid_config("invalid config: " + field + " " + why);
}

void check_slit(const SlitConfig& s, const std::string& prefix) {
  require(std::isfinite(s.x0), prefix + ".x0", "must be finite");
  require(std::isfinite(s.v), prefix + ".v", "must be finite");
  require(std::isfinite(s.sigma0) && s.sigma0 > 0.0, prefix + ".sigma0",
          "must be > 0");
  require(std::isfinite(s.dphi), prefix + ".dphi", "must be finite");
}

}  // namespace

double compute_u0(const PhysicalParams& params, double sigma0) {
  if (!(std::isfinite(sigma0) && sigma0 > 0.0))
    throw invalid_config("invalid config: sigma0 must be > 0");
  return params.hbar / (2.0 * params.mass * sigma0);
}

SimulationConfig validate(const PhysicalParams& params,
                          const std::vector<SlitConfig>& slits,
                          const GridSpec& grid, PhaseMode mode) {
  require(std::isfinite(params.hbar) && params.hbar > 0.0, "hbar",
          "must be > 0");
  require(std::isfinite(params.mass) && params.mass > 0.0, "mass",
          "must be > 0");
  require(std::isfinite(params.omega) && params.omega > 0.0, "omega",
          "must be > 0");
  require(!slits.empty() && slits.size() <= 2, "slits",
          "must hold one or two channels");
  check_slit(slits[0], "slit1");
  if (slits.size() == 2) check_slit(slits[1], "slit2");
  require(std::isfinite(grid.x_min) && std::isfinite(grid.x_max) &&
              grid.x_min < grid.x_max,
          "x_min/x_max", "must satisfy x_min < x_max");
  require(grid.nx >= 2, "nx", "must be >= 2");
  require(std::isfinite(grid.t_min) && std::isfinite(grid.t_max) &&
              grid.t_min <= grid.t_max,
          "t_min/t_max", "must satisfy t_min <= t_max");
  require(grid.nt >= 1, "nt", "must be >= 1");
  return SimulationConfig{params, slits, grid, mode};
}

const char* to_string(PhaseMode mode) {
  return mode == PhaseMode::paper ? "paper" : "qm";
}

}  // namespace slitsim
