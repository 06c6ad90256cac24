#pragma once

#include <vector>

#include "slitsim/errors.hpp"

namespace slitsim {

// Densities below this threshold count as nodes: velocity fields defined as
// current/density return 0 there instead of dividing by a vanishing value.
inline constexpr double kNodeEpsilon = 1e-12;

// Unit system shared by every field formula.  omega enters only the
// heat-flow diagnostic (heat_flow_difference).
struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
};

// One Gaussian channel: centered at x0, drifting with velocity v, with
// initial standard deviation sigma0, plus a constant extra phase dphi.
struct SlitConfig {
  double x0 = 0.0;
  double v = 0.0;
  double sigma0 = 1.0;
  double dphi = 0.0;
};

// Uniform space-time evaluation grid; both endpoints are grid points.
struct GridSpec {
  double x_min = -15.0;
  double x_max = 15.0;
  int nx = 1501;
  double t_min = 0.0;
  double t_max = 16.0;
  int nt = 801;

  double dx() const { return (x_max - x_min) / (nx - 1); }
  // Spacing of the time grid; 0 for a single-sample grid.
  double dt() const { return nt > 1 ? (t_max - t_min) / (nt - 1) : 0.0; }
  double x(int i) const { return x_min + (x_max - x_min) * i / (nx - 1); }
  double t(int j) const {
    return nt > 1 ? t_min + (t_max - t_min) * j / (nt - 1) : t_min;
  }
};

// Phase convention used by the two-channel formulas.
//
//   paper: reduced form that drops the -m v^2 t / (2 hbar) energy term and
//          the width phase -(1/2) arctan(u0 t / sigma0) from each channel.
//          Both dropped terms are independent of x and cancel in the channel
//          phase difference whenever v1^2 = v2^2 and the two widths are
//          equal, so the reduction is exact there and only there.  Channels
//          with different sigma0 are rejected in this mode.
//   qm:    full single-packet phase, valid for any drifts and widths.
enum class PhaseMode { paper, qm };

struct SimulationConfig {
  PhysicalParams params;
  std::vector<SlitConfig> slits;  // one or two channels
  GridSpec grid;
  PhaseMode mode = PhaseMode::paper;
};

// Initial osmotic velocity scale hbar / (2 m sigma0).
// Throws invalid_config for non-positive or non-finite sigma0.
double compute_u0(const PhysicalParams& params, double sigma0);

// Checks every invariant (positive units, finite slit fields, positive
// widths, ordered grid bounds, nx >= 2, nt >= 1, one or two slits) and
// returns the assembled configuration.  Throws invalid_config naming the
// offending field.
SimulationConfig validate(const PhysicalParams& params,
                          const std::vector<SlitConfig>& slits,
                          const GridSpec& grid,
                          PhaseMode mode = PhaseMode::paper);

// "paper" or "qm".
const char* to_string(PhaseMode mode);

}  // namespace slitsim
