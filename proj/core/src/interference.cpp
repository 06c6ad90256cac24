#include "slitsim/interference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace slitsim {

namespace detail {

PairFields eval_pair(const SlitConfig& slit1, const SlitConfig& slit2,
                     const PhysicalParams& params, double x, double t,
                     PhaseMode mode) {
  const ChannelFieldSample c1 = sample_channel(slit1, params, x, t, mode);
  const ChannelFieldSample c2 = sample_channel(slit2, params, x, t, mode);
  const double phi = phase_difference(slit1, slit2, params, x, t, mode);
  // sqrt(P1) * sqrt(P2) instead of sqrt(P1 * P2): the product underflows in
  // the far tails long before the individual densities do.
  const double root = std::sqrt(c1.p) * std::sqrt(c2.p);
  const double c = std::cos(phi);
  const double s = std::sin(phi);

  PairFields f;
  // Channel norm 2: the far-separated initial configuration integrates to 1.
  // Exact cancellation at nodes can round to a tiny negative value; clamp.
  f.p_tot = std::max(0.0, 0.5 * (c1.p + c2.p + 2.0 * root * c));
  f.j.term_conv_1 = 0.5 * c1.p * c1.v_conv;
  f.j.term_conv_2 = 0.5 * c2.p * c2.v_conv;
  f.j.term_interf_conv = 0.5 * root * (c1.v_conv + c2.v_conv) * c;
  f.j.term_entangling = 0.5 * root * (c1.u_osm - c2.u_osm) * s;
  f.j.total = f.j.term_conv_1 + f.j.term_conv_2 + f.j.term_interf_conv +
              f.j.term_entangling;
  f.phi12 = phi;
  return f;
}

PairFields eval_single(const SlitConfig& slit, const PhysicalParams& params,
                       double x, double t, PhaseMode mode) {
  const ChannelFieldSample c = sample_channel(slit, params, x, t, mode);
  PairFields f;
  f.p_tot = c.p;
  f.j.term_conv_1 = c.p * c.v_conv;
  f.j.term_conv_2 = 0.0;
  f.j.term_interf_conv = 0.0;
  f.j.term_entangling = 0.0;
  f.j.total = f.j.term_conv_1;
  f.phi12 = 0.0;
  return f;
}

PairFields eval_point(const SimulationConfig& config, double x, double t,
                      PhaseMode mode) {
  if (config.slits.size() == 2) {
    return eval_pair(config.slits[0], config.slits[1], config.params, x, t,
                     mode);
  }
  return eval_single(config.slits[0], config.params, x, t, mode);
}

}  // namespace detail

double phase_difference(const SlitConfig& slit1, const SlitConfig& slit2,
                        const PhysicalParams& params, double x, double t,
                        PhaseMode mode) {
  if (mode == PhaseMode::qm) {
    return channel_phase(slit2, params, x, t, mode) -
           channel_phase(slit1, params, x, t, mode);
  }
  if (slit1.sigma0 != slit2.sigma0) {
    throw invalid_config(
        "invalid config: the paper phase mode requires equal sigma0 on both "
        "slits");
  }
  const double u0 = compute_u0(params, slit1.sigma0);
  const double s2 = slit1.sigma0 * slit1.sigma0 + u0 * u0 * t * t;
  const double d1 = x - slit1.x0 - slit1.v * t;
  const double d2 = x - slit2.x0 - slit2.v * t;
  const double m = params.mass;
  return (m * (slit2.v - slit1.v) * x +
          0.5 * m * u0 * u0 * (d2 * d2 - d1 * d1) * t / s2) /
             params.hbar +
         (slit2.dphi - slit1.dphi);
}

double total_density(const SlitConfig& slit1, const SlitConfig& slit2,
                     const PhysicalParams& params, double x, double t,
                     PhaseMode mode) {
  return detail::eval_pair(slit1, slit2, params, x, t, mode).p_tot;
}

CurrentDecomposition total_current(const SlitConfig& slit1,
                                   const SlitConfig& slit2,
                                   const PhysicalParams& params, double x,
                                   double t, PhaseMode mode) {
  return detail::eval_pair(slit1, slit2, params, x, t, mode).j;
}

double effective_velocity(const CurrentDecomposition& decomp, double p_tot) {
  return p_tot > kNodeEpsilon ? decomp.total / p_tot : 0.0;
}

double entangling_fraction(const FieldFrame& frame) {
  double entangling = 0.0;
  double total = 0.0;
  for (const CurrentDecomposition& d : frame.j) {  // ascending x
    entangling += std::abs(d.term_entangling);
    total += std::abs(d.total);
  }
  return total > 0.0 ? entangling / total : 0.0;
}

double heat_flow_difference(const SlitConfig& slit1, const SlitConfig& slit2,
                            const PhysicalParams& params, double x, double t) {
  const double u1 = osmotic_velocity(slit1, params, x, t);
  const double u2 = osmotic_velocity(slit2, params, x, t);
  return -2.0 * params.omega * params.mass * (u2 - u1);
}

FieldFrame evaluate_frame(const SimulationConfig& config, double t,
                          PhaseMode mode) {
  const GridSpec& g = config.grid;
  FieldFrame frame;
  frame.t = t;
  frame.x.resize(g.nx);
  frame.p_tot.resize(g.nx);
  frame.j.resize(g.nx);
  frame.phi12.resize(g.nx);
  frame.v_eff.resize(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    const double x = g.x(i);
    const detail::PairFields f = detail::eval_point(config, x, t, mode);
    frame.x[i] = x;
    frame.p_tot[i] = f.p_tot;
    frame.j[i] = f.j;
    frame.phi12[i] = f.phi12;
    frame.v_eff[i] = effective_velocity(f.j, f.p_tot);
  }
  return frame;
}

ContinuityReport continuity_residual(const SimulationConfig& config,
                                     PhaseMode mode, const GridSpec& grid) {
  if (grid.nx < 3)
    throw invalid_config(
        "invalid config: nx must be >= 3 for the continuity residual");
  if (grid.nt < 3)
    throw invalid_config(
        "invalid config: nt must be >= 3 for the continuity residual");

  SimulationConfig local = config;
  local.grid = grid;

  // Rolling window of three consecutive frames keeps refined grids cheap.
  std::vector<std::vector<double>> p(3), j(3);
  auto fill = [&](int slot, int time_index) {
    const FieldFrame f = evaluate_frame(local, grid.t(time_index), mode);
    p[slot] = f.p_tot;
    j[slot].resize(grid.nx);
    for (int i = 0; i < grid.nx; ++i) j[slot][i] = f.j[i].total;
  };
  fill(0, 0);
  fill(1, 1);

  const double dt = grid.dt();
  const double dx = grid.dx();
  double max_residual = 0.0;
  double max_dpdt = 0.0;
  for (int k = 1; k + 1 < grid.nt; ++k) {
    fill((k + 1) % 3, k + 1);
    const std::vector<double>& p_prev = p[(k - 1) % 3];
    const std::vector<double>& p_next = p[(k + 1) % 3];
    const std::vector<double>& j_mid = j[k % 3];
    for (int i = 1; i + 1 < grid.nx; ++i) {
      const double dpdt = (p_next[i] - p_prev[i]) / (2.0 * dt);
      const double djdx = (j_mid[i + 1] - j_mid[i - 1]) / (2.0 * dx);
      max_residual = std::max(max_residual, std::abs(dpdt + djdx));
      max_dpdt = std::max(max_dpdt, std::abs(dpdt));
    }
  }
  return ContinuityReport{max_residual, max_dpdt, dx, dt};
}

}  // namespace slitsim
