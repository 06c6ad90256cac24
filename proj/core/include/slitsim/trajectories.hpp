#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "slitsim/model.hpp"

namespace slitsim {

// Ordered family of averaged trajectories.  All paths share the same time
// samples (the config's time grid); seeds ascend strictly.
struct TrajectorySet {
  std::vector<double> seeds;
  std::vector<std::vector<std::pair<double, double>>> paths;  // per seed: (t, x)
  double step = 0.0;             // integration step between recorded samples
  std::uint64_t config_hash = 0;  // fingerprint of the generating config
};

// Outcome of the order-preservation check.  On failure, `t` is the first
// offending time, `first`/`second` the 1-based pair of trajectories out of
// order, and `gap` the (non-positive) separation found there.
struct CrossingReport {
  bool ok = true;
  double t = 0.0;
  int first = 0;
  int second = 0;
  double gap = 0.0;
};

// The n equal-probability-mass quantiles of p_tot(., t_min) on the config
// grid: positions q_k with cumulative trapezoid mass (k - 1/2)/n, found by
// bisection; strictly ascending.  If the grid captures less than 1 - 1e-6 of
// the total mass the grid is too small and invalid_config is raised.
std::vector<double> seed_positions(const SimulationConfig& config, int n,
                                   PhaseMode mode);

// Integrates dx/dt = v_eff(x, t) with classic fixed-step 4th-order
// Runge-Kutta, one step per time-grid interval, recording each trajectory at
// the nt grid times.  If the density at any sub-step point falls below 1e-9
// the step is halved recursively (at most 20 times, then sim_error naming
// the trajectory and time) and re-coarsened afterwards.
TrajectorySet integrate(const SimulationConfig& config,
                        const std::vector<double>& seeds, PhaseMode mode);

// Verifies that positions preserve the strict seed order at every recorded
// time.  A single trajectory passes vacuously.
CrossingReport no_crossing_check(const TrajectorySet& ts);

// First time at which the current at the probe changes sign, linearly
// interpolated between the bracketing grid times; std::nullopt if the sign
// never changes.  Samples with |J| below 1e-12 of the probe's maximum |J|
// count as zero so that an identically vanishing current (up to rounding)
// reports no reversal.  The probe must lie within the x grid.
std::optional<double> reversal_time(const SimulationConfig& config,
                                    double x_probe, PhaseMode mode);

}  // namespace slitsim
