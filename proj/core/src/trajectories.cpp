#include "slitsim/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "slitsim/interference.hpp"
#include "slitsim/io.hpp"

namespace slitsim {

namespace {

// Density threshold under which an integration sub-step counts as touching a
// node, and the cap on recursive step halvings before giving up.
constexpr double kSubstepDensityFloor = 1e-9;
constexpr int kMaxHalvings = 20;

struct Stage {
  bool ok;   // density above the sub-step floor
  double v;  // effective velocity there
};

Stage stage_velocity(const SimulationConfig& config, PhaseMode mode, double x,
                     double t) {
  const detail::PairFields f = detail::eval_point(config, x, t, mode);
  if (f.p_tot < kSubstepDensityFloor) return {false, 0.0};
  return {true, f.j.total / f.p_tot};
}

// One RK4 step of size h from (x, t); recursively halves around density
// nodes and re-coarsens afterwards (the recursion unwinds back to h).
double advance(const SimulationConfig& config, PhaseMode mode, double x,
               double t, double h, int depth, int traj_index) {
  const Stage s1 = stage_velocity(config, mode, x, t);
  if (s1.ok) {
    const Stage s2 =
        stage_velocity(config, mode, x + 0.5 * h * s1.v, t + 0.5 * h);
    if (s2.ok) {
      const Stage s3 =
          stage_velocity(config, mode, x + 0.5 * h * s2.v, t + 0.5 * h);
      if (s3.ok) {
        const Stage s4 = stage_velocity(config, mode, x + h * s3.v, t + h);
        if (s4.ok) {
          return x + h / 6.0 * (s1.v + 2.0 * s2.v + 2.0 * s3.v + s4.v);
        }
      }
    }
  }
  if (depth >= kMaxHalvings) {
    throw sim_error("node collision: trajectory " +
                    std::to_string(traj_index + 1) +
                    " ran into a density node near t = " + format_double(t) +
                    " (sub-step budget exhausted)");
  }
  const double mid = advance(config, mode, x, t, 0.5 * h, depth + 1, traj_index);
  return advance(config, mode, mid, t + 0.5 * h, 0.5 * h, depth + 1,
                 traj_index);
}

}  // namespace

std::vector<double> seed_positions(const SimulationConfig& config, int n,
                                   PhaseMode mode) {
  if (n < 1) throw invalid_config("invalid config: seed count must be >= 1");
  const GridSpec& g = config.grid;
  const double t0 = g.t_min;

  std::vector<double> p(g.nx);
  for (int i = 0; i < g.nx; ++i)
    p[i] = detail::eval_point(config, g.x(i), t0, mode).p_tot;

  // Cumulative trapezoid mass at every grid point.
  std::vector<double> cum(g.nx, 0.0);
  const double dx = g.dx();
  for (int i = 1; i < g.nx; ++i)
    cum[i] = cum[i - 1] + 0.5 * (p[i - 1] + p[i]) * dx;
  // Truncation guard.  The bound leaves room for the genuine line-mass
  // shift of order exp(-d^2/(4 sigma0^2)) that the interference term
  // contributes when the channels overlap (about 2.3e-6 for channels ten
  // widths apart in antiphase), while still rejecting grids that cut into
  // a channel.
  const double mass = cum[g.nx - 1];
  if (mass < 1.0 - 1e-5) {
    throw invalid_config(
        "invalid config: grid too small, it captures only " +
        format_double(mass) + " probability mass at t_min");
  }

  // CDF with linear density interpolation inside each cell (quadratic CDF).
  auto cdf = [&](double x) {
    if (x <= g.x_min) return 0.0;
    if (x >= g.x_max) return mass;
    const double u = (x - g.x_min) / dx;
    int i = static_cast<int>(u);
    i = std::min(i, g.nx - 2);
    const double s = x - g.x(i);
    const double px = p[i] + (p[i + 1] - p[i]) * (s / dx);
    return cum[i] + 0.5 * (p[i] + px) * s;
  };

  // Equal-mass quantiles of the distribution actually captured on the
  // grid: targets scale with the trapezoid mass so that a mirror-symmetric
  // density yields mirror-symmetric seeds even when the interference term
  // shifts the total mass away from one.
  std::vector<double> seeds(n);
  for (int k = 1; k <= n; ++k) {
    const double target = (k - 0.5) / n * mass;
    double lo = g.x_min;
    double hi = g.x_max;
    for (int iter = 0; iter < 200 && hi - lo > 1e-13 * (g.x_max - g.x_min);
         ++iter) {
      const double midpoint = 0.5 * (lo + hi);
      (cdf(midpoint) < target ? lo : hi) = midpoint;
    }
    seeds[k - 1] = 0.5 * (lo + hi);
  }
  return seeds;
}

TrajectorySet integrate(const SimulationConfig& config,
                        const std::vector<double>& seeds, PhaseMode mode) {
  if (seeds.empty())
    throw invalid_config("invalid config: need at least one seed");
  if (!std::is_sorted(seeds.begin(), seeds.end()))
    throw invalid_config("invalid config: seeds must ascend");

  const GridSpec& g = config.grid;
  TrajectorySet ts;
  ts.seeds = seeds;
  ts.step = g.dt();
  ts.config_hash = config_fingerprint(config);
  ts.paths.resize(seeds.size());

  for (std::size_t k = 0; k < seeds.size(); ++k) {
    auto& path = ts.paths[k];
    path.reserve(g.nt);
    double x = seeds[k];
    path.emplace_back(g.t(0), x);
    for (int j = 0; j + 1 < g.nt; ++j) {
      x = advance(config, mode, x, g.t(j), ts.step, 0, static_cast<int>(k));
      path.emplace_back(g.t(j + 1), x);
    }
  }
  return ts;
}

CrossingReport no_crossing_check(const TrajectorySet& ts) {
  CrossingReport report;
  if (ts.paths.size() < 2) return report;  // vacuously ordered
  const std::size_t nt = ts.paths[0].size();
  for (std::size_t j = 0; j < nt; ++j) {
    for (std::size_t k = 0; k + 1 < ts.paths.size(); ++k) {
      const double a = ts.paths[k][j].second;
      const double b = ts.paths[k + 1][j].second;
      if (!(a < b)) {
        report.ok = false;
        report.t = ts.paths[k][j].first;
        report.first = static_cast<int>(k) + 1;
        report.second = static_cast<int>(k) + 2;
        report.gap = b - a;
        return report;
      }
    }
  }
  return report;
}

std::optional<double> reversal_time(const SimulationConfig& config,
                                    double x_probe, PhaseMode mode) {
  const GridSpec& g = config.grid;
  if (!(x_probe >= g.x_min && x_probe <= g.x_max))
    throw invalid_config("invalid config: probe position outside the x grid");

  std::vector<double> j(g.nt);
  double jmax = 0.0;
  for (int k = 0; k < g.nt; ++k) {
    j[k] = detail::eval_point(config, x_probe, g.t(k), mode).j.total;
    jmax = std::max(jmax, std::abs(j[k]));
  }
  if (jmax <= 0.0) return std::nullopt;

  // Samples below the noise floor count as zero, so a current that vanishes
  // identically up to rounding reports no reversal.
  const double floor = 1e-12 * jmax;
  int last = -1;
  for (int k = 0; k < g.nt; ++k) {
    if (std::abs(j[k]) <= floor) continue;
    if (last >= 0 && std::signbit(j[k]) != std::signbit(j[last])) {
      const double t0 = g.t(last);
      const double t1 = g.t(k);
      return t0 + (t1 - t0) * j[last] / (j[last] - j[k]);
    }
    last = k;
  }
  return std::nullopt;
}

}  // namespace slitsim
