#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "slitsim/interference.hpp"
#include "slitsim/model.hpp"
#include "slitsim/qm_oracle.hpp"
#include "slitsim/wavepacket.hpp"

namespace {

using namespace slitsim;

SimulationConfig counter_moving_config(double v1 = 0.5, double v2 = -0.5) {
  PhysicalParams params;
  SlitConfig left;
  left.x0 = -5.0;
  left.v = v1;
  SlitConfig right;
  right.x0 = 5.0;
  right.v = v2;
  return validate(params, {left, right}, GridSpec{});
}

double max_abs_entangling(const FieldFrame& frame) {
  double m = 0.0;
  for (const auto& j : frame.j) m = std::max(m, std::abs(j.term_entangling));
  return m;
}

double max_abs_total(const FieldFrame& frame) {
  double m = 0.0;
  for (const auto& j : frame.j) m = std::max(m, std::abs(j.total));
  return m;
}

int count_strict_local_maxima(const std::vector<double>& y) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] > y[i + 1]) ++count;
  return count;
}

TEST_CASE("the phase difference at a hand-checked point is -2.2") {
  // For the counter-moving setup at x = 1, t = 4 (u0 = 1/2, so
  // sigma(4)^2 = 1 + 16/4 = 5):
  //   drift term   m (v2 - v1) x / hbar = -1
  //   spread term  (m u0^2 / 2) (d2^2 - d1^2) t / sigma^2
  //                = (1/8) (4 - 16) (4/5)   = -1.2
  // Total: -2.2.  The two modes agree because v1^2 = v2^2.
  const SimulationConfig config = counter_moving_config();
  for (const PhaseMode mode : {PhaseMode::paper, PhaseMode::qm}) {
    CHECK(phase_difference(config.slits[0], config.slits[1], config.params,
                           1.0, 4.0, mode) ==
          doctest::Approx(-2.2).epsilon(1e-12));
  }
}

TEST_CASE("both phase modes agree whenever the drift speeds are equal") {
  for (const auto [v1, v2] :
       {std::pair{0.5, -0.5}, std::pair{0.3, 0.3}, std::pair{0.0, 0.0},
        std::pair{-0.8, 0.8}}) {
    const SimulationConfig config = counter_moving_config(v1, v2);
    for (const double t : {0.0, 3.0, 10.0}) {
      for (const double x : {-6.0, -1.0, 0.5, 7.0}) {
        const double paper = phase_difference(
            config.slits[0], config.slits[1], config.params, x, t,
            PhaseMode::paper);
        const double qm = phase_difference(config.slits[0], config.slits[1],
                                           config.params, x, t, PhaseMode::qm);
        CHECK(paper == doctest::Approx(qm).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("the phase modes part company for asymmetric speeds") {
  const SimulationConfig config = counter_moving_config(0.3, -0.5);
  const double paper = phase_difference(config.slits[0], config.slits[1],
                                        config.params, 1.0, 8.0,
                                        PhaseMode::paper);
  const double qm = phase_difference(config.slits[0], config.slits[1],
                                     config.params, 1.0, 8.0, PhaseMode::qm);
  // The dropped kinetic-energy term contributes m (v2^2 - v1^2) t / (2 hbar)
  // = 0.64 here, far outside rounding.
  CHECK(std::abs(paper - qm) > 0.1);
}

TEST_CASE("the reduced phase form rejects unequal widths") {
  PhysicalParams params;
  SlitConfig a;
  a.sigma0 = 1.0;
  SlitConfig b;
  b.x0 = 5.0;
  b.sigma0 = 2.0;
  CHECK_THROWS_AS(
      phase_difference(a, b, params, 0.0, 1.0, PhaseMode::paper),
      invalid_config);
  CHECK_NOTHROW(phase_difference(a, b, params, 0.0, 1.0, PhaseMode::qm));
}

TEST_CASE("the total density recombines the channel fields") {
  const SimulationConfig config = counter_moving_config();
  for (const double t : {0.0, 6.0, 12.0}) {
    for (const double x : {-4.0, 0.0, 0.31, 5.5}) {
      const double p1 = density(config.slits[0], config.params, x, t);
      const double p2 = density(config.slits[1], config.params, x, t);
      const double phi =
          phase_difference(config.slits[0], config.slits[1], config.params, x,
                           t, PhaseMode::paper);
      const double expected =
          0.5 * (p1 + p2 + 2.0 * std::sqrt(p1) * std::sqrt(p2) * std::cos(phi));
      CHECK(total_density(config.slits[0], config.slits[1], config.params, x,
                          t, PhaseMode::paper) ==
            doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("the total density is clamped non-negative at deep nodes") {
  const SimulationConfig config = counter_moving_config();
  double min_p = 1.0;
  for (int i = 0; i < config.grid.nx; ++i) {
    const double p =
        total_density(config.slits[0], config.slits[1], config.params,
                      config.grid.x(i), 12.0, PhaseMode::paper);
    min_p = std::min(min_p, p);
  }
  CHECK(min_p >= 0.0);
}

TEST_CASE("the far-separated total density integrates to one") {
  // Channels 24 widths apart: the interference term's contribution to the
  // line mass is of order exp(-144/2), invisible at this tolerance.  (At
  // the reference separation of 10 widths it is exp(-13) ~ 2.3e-6, a real
  // normalization shift rather than an integration artifact.)
  PhysicalParams params;
  SlitConfig left;
  left.x0 = -12.0;
  left.v = 0.5;
  SlitConfig right;
  right.x0 = 12.0;
  right.v = -0.5;
  GridSpec wide;
  wide.x_min = -40.0;
  wide.x_max = 40.0;
  const SimulationConfig config = validate(params, {left, right}, wide);
  const int n = 60001;
  const double lo = -40.0;
  const double hi = 40.0;
  const double h = (hi - lo) / (n - 1);
  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    mass += w * total_density(config.slits[0], config.slits[1], config.params,
                              lo + h * i, 0.0, PhaseMode::paper);
  }
  mass *= h;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("the four current terms sum to the quantum current") {
  // Closure against the complex-packet route: an independent derivation of
  // the same physical current.
  const SimulationConfig config = counter_moving_config();
  for (const double t : {0.0, 4.0, 9.0, 14.0}) {
    double j_scale = 0.0;
    for (int i = 0; i < config.grid.nx; i += 10)
      j_scale = std::max(j_scale,
                         std::abs(quantum_current(config.slits[0],
                                                  config.slits[1],
                                                  config.params,
                                                  config.grid.x(i), t)));
    for (const double x : {-6.0, -2.5, 0.7, 3.0, 8.0}) {
      const CurrentDecomposition j =
          total_current(config.slits[0], config.slits[1], config.params, x, t,
                        PhaseMode::paper);
      const double j_ref = quantum_current(config.slits[0], config.slits[1],
                                           config.params, x, t);
      CHECK(std::abs(j.total - j_ref) <= 1e-13 * j_scale);
    }
  }
}

TEST_CASE("swapping the channels relabels the terms and flips the phase") {
  const SimulationConfig config = counter_moving_config();
  const double x = 1.3;
  const double t = 7.0;
  const auto ab = detail::eval_pair(config.slits[0], config.slits[1],
                                    config.params, x, t, PhaseMode::paper);
  const auto ba = detail::eval_pair(config.slits[1], config.slits[0],
                                    config.params, x, t, PhaseMode::paper);
  CHECK(ba.phi12 == -ab.phi12);
  CHECK(ba.p_tot == doctest::Approx(ab.p_tot).epsilon(1e-14));
  CHECK(ba.j.term_conv_1 == ab.j.term_conv_2);
  CHECK(ba.j.term_conv_2 == ab.j.term_conv_1);
  CHECK(ba.j.term_interf_conv ==
        doctest::Approx(ab.j.term_interf_conv).epsilon(1e-14));
  CHECK(ba.j.term_entangling ==
        doctest::Approx(ab.j.term_entangling).epsilon(1e-14));
  CHECK(ba.j.total == doctest::Approx(ab.j.total).epsilon(1e-14));
}

TEST_CASE("the entangling term carries the osmotic-velocity difference") {
  // term_entangling = (1 / 2 omega m) sqrt(P1 P2) grad(Q2 - Q1) sin(phi12)
  // with the same 1/2 channel normalization as the density; checked with
  // generic units so no factor collapses to one.
  PhysicalParams params;
  params.omega = 0.7;
  params.mass = 1.3;
  SlitConfig a;
  a.x0 = -5.0;
  a.v = 0.5;
  SlitConfig b;
  b.x0 = 5.0;
  b.v = -0.5;
  for (const double t : {1.0, 6.0, 13.0}) {
    for (const double x : {-3.0, 0.4, 2.2}) {
      const auto f = detail::eval_pair(a, b, params, x, t, PhaseMode::paper);
      const double root = std::sqrt(density(a, params, x, t)) *
                          std::sqrt(density(b, params, x, t));
      const double hfd = heat_flow_difference(a, b, params, x, t);
      const double rhs = 1.0 / (2.0 * params.omega * params.mass) * root *
                         hfd * std::sin(f.phi12) / 2.0;
      CHECK(f.j.term_entangling == doctest::Approx(rhs).epsilon(1e-13));
    }
  }
}

TEST_CASE("the heat-flow difference is built from the osmotic velocities") {
  PhysicalParams params;
  params.omega = 0.7;
  params.mass = 1.3;
  SlitConfig a;
  a.x0 = -5.0;
  SlitConfig b;
  b.x0 = 5.0;
  const double u1 = osmotic_velocity(a, params, 1.0, 2.0);
  const double u2 = osmotic_velocity(b, params, 1.0, 2.0);
  CHECK(heat_flow_difference(a, b, params, 1.0, 2.0) ==
        doctest::Approx(-2.0 * params.omega * params.mass * (u2 - u1))
            .epsilon(1e-15));
}

TEST_CASE("the effective velocity is guarded at nodes") {
  CurrentDecomposition j{};
  j.total = 1e-3;
  CHECK(effective_velocity(j, 0.0) == 0.0);
  CHECK(effective_velocity(j, 1e-13) == 0.0);
  CHECK(effective_velocity(j, 2e-3) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("the entangling fraction is an L1 share of the current") {
  FieldFrame frame;
  frame.x = {0.0, 1.0, 2.0};
  CurrentDecomposition a{};
  a.term_entangling = -1.0;
  a.total = 2.0;
  CurrentDecomposition b{};
  b.term_entangling = 0.5;
  b.total = -0.5;
  CurrentDecomposition c{};
  c.term_entangling = 0.0;
  c.total = 1.5;
  frame.j = {a, b, c};
  CHECK(entangling_fraction(frame) ==
        doctest::Approx(1.5 / 4.0).epsilon(1e-15));
}

TEST_CASE("the entangling fraction of a vanishing current is zero") {
  FieldFrame frame;
  frame.x = {0.0, 1.0};
  frame.j = {CurrentDecomposition{}, CurrentDecomposition{}};
  CHECK(entangling_fraction(frame) == 0.0);
}

TEST_CASE("a single channel has no interference terms at all") {
  PhysicalParams params;
  SlitConfig slit;
  slit.x0 = -2.0;
  slit.v = 0.4;
  const SimulationConfig config = validate(params, {slit}, GridSpec{});
  const FieldFrame frame = evaluate_frame(config, 5.0, PhaseMode::paper);
  for (int i = 0; i < config.grid.nx; ++i) {
    CHECK(frame.j[i].term_conv_2 == 0.0);
    CHECK(frame.j[i].term_interf_conv == 0.0);
    CHECK(frame.j[i].term_entangling == 0.0);
    CHECK(frame.phi12[i] == 0.0);
    const double p = density(slit, params, frame.x[i], 5.0);
    CHECK(frame.p_tot[i] == p);
    CHECK(frame.j[i].total == p * convective_velocity(slit, params,
                                                      frame.x[i], 5.0));
  }
}

TEST_CASE("evaluate_frame fills every array on the configured grid") {
  const SimulationConfig config = counter_moving_config();
  const FieldFrame frame = evaluate_frame(config, 12.0, PhaseMode::paper);
  CHECK(frame.t == 12.0);
  CHECK(frame.x.size() == 1501);
  CHECK(frame.p_tot.size() == 1501);
  CHECK(frame.j.size() == 1501);
  CHECK(frame.phi12.size() == 1501);
  CHECK(frame.v_eff.size() == 1501);
  CHECK(frame.x.front() == -15.0);
  CHECK(frame.x.back() == 15.0);
  CHECK(std::is_sorted(frame.x.begin(), frame.x.end()));
  for (int i = 0; i < config.grid.nx; i += 97) {
    if (frame.p_tot[i] > kNodeEpsilon)
      CHECK(frame.v_eff[i] == frame.j[i].total / frame.p_tot[i]);
  }
}

TEST_CASE("a two-point x grid is accepted") {
  PhysicalParams params;
  GridSpec grid;
  grid.nx = 2;
  SlitConfig a;
  a.x0 = -5.0;
  a.v = 0.5;
  SlitConfig b;
  b.x0 = 5.0;
  b.v = -0.5;
  const SimulationConfig config = validate(params, {a, b}, grid);
  const FieldFrame frame = evaluate_frame(config, 1.0, PhaseMode::paper);
  CHECK(frame.x.size() == 2);
}

TEST_CASE("the entangling term is negligible while the channels are apart") {
  // At t = 0 the channel overlap at five standard deviations of separation
  // suppresses sqrt(P1 P2) everywhere; at ten standard deviations it is
  // gone to rounding.
  const SimulationConfig near = counter_moving_config();
  const FieldFrame f_near = evaluate_frame(near, 0.0, PhaseMode::paper);
  CHECK(max_abs_entangling(f_near) < 5e-5 * max_abs_total(f_near));

  PhysicalParams params;
  SlitConfig a;
  a.x0 = -10.0;
  a.v = 0.5;
  SlitConfig b;
  b.x0 = 10.0;
  b.v = -0.5;
  GridSpec wide;
  wide.x_min = -20.0;
  wide.x_max = 20.0;
  const SimulationConfig far = validate(params, {a, b}, wide);
  const FieldFrame f_far = evaluate_frame(far, 0.0, PhaseMode::paper);
  CHECK(max_abs_entangling(f_far) < 1e-9 * max_abs_total(f_far));
}

TEST_CASE("the fringe count matches the complex-packet intensity") {
  const SimulationConfig config = counter_moving_config();
  const FieldFrame frame = evaluate_frame(config, 12.0, PhaseMode::paper);
  std::vector<double> p_ref(config.grid.nx);
  for (int i = 0; i < config.grid.nx; ++i)
    p_ref[i] = superposition_density(config.slits[0], config.slits[1],
                                     config.params, config.grid.x(i), 12.0);
  const int fringes = count_strict_local_maxima(frame.p_tot);
  CHECK(fringes == count_strict_local_maxima(p_ref));
  CHECK(fringes >= 5);  // a genuinely fringed pattern, not two lobes
}

TEST_CASE("the continuity residual is tiny for a nearly static packet") {
  PhysicalParams params;
  SlitConfig slit;
  slit.sigma0 = 10.0;  // u0 = 0.05: spreading is slow on this window
  GridSpec grid;
  grid.x_min = -5.0;
  grid.x_max = 5.0;
  grid.nx = 201;
  grid.t_min = 0.0;
  grid.t_max = 1.0;
  grid.nt = 21;
  const SimulationConfig config = validate(params, {slit}, grid);
  const ContinuityReport report =
      continuity_residual(config, PhaseMode::paper, grid);
  CHECK(report.max_residual < 1e-6);
}

TEST_CASE("the continuity residual vanishes in the frozen-width limit") {
  PhysicalParams params;
  SlitConfig slit;
  slit.sigma0 = 1e6;  // u0 = 5e-7: the density is frozen to rounding
  GridSpec grid;
  grid.x_min = -1.0;
  grid.x_max = 1.0;
  grid.nx = 101;
  grid.t_min = 0.0;
  grid.t_max = 1.0;
  grid.nt = 11;
  const SimulationConfig config = validate(params, {slit}, grid);
  const ContinuityReport report =
      continuity_residual(config, PhaseMode::paper, grid);
  CHECK(report.max_residual < 1e-18);
}

TEST_CASE("the continuity residual converges at second order") {
  const SimulationConfig config = counter_moving_config();
  GridSpec coarse;
  coarse.nx = 376;
  coarse.nt = 201;
  GridSpec fine;
  fine.nx = 751;
  fine.nt = 401;
  const ContinuityReport rc =
      continuity_residual(config, PhaseMode::paper, coarse);
  const ContinuityReport rf =
      continuity_residual(config, PhaseMode::paper, fine);
  const double ratio = rc.max_residual / rf.max_residual;
  CHECK(ratio > 2.8);
  CHECK(ratio < 5.2);
}

TEST_CASE("the continuity residual needs at least a 3 x 3 grid") {
  const SimulationConfig config = counter_moving_config();
  GridSpec grid;
  grid.nx = 2;
  CHECK_THROWS_AS(continuity_residual(config, PhaseMode::paper, grid),
                  invalid_config);
  grid = GridSpec{};
  grid.nt = 2;
  CHECK_THROWS_AS(continuity_residual(config, PhaseMode::paper, grid),
                  invalid_config);
}

TEST_CASE("the full-phase fields are Galilei covariant") {
  // Boosting both drifts by w and reading the fields at x + w t must give
  // the same density and a current shifted by w * density.  The reduced
  // phase form deliberately breaks this (it drops velocity-dependent
  // terms), so the full form is used.
  const double w = 0.35;
  const SimulationConfig rest = counter_moving_config();
  SimulationConfig boosted = rest;
  boosted.slits[0].v += w;
  boosted.slits[1].v += w;
  for (const double t : {0.0, 5.0, 11.0}) {
    for (const double x : {-4.0, -0.5, 2.0}) {
      const auto f0 = detail::eval_pair(rest.slits[0], rest.slits[1],
                                        rest.params, x, t, PhaseMode::qm);
      const auto fb =
          detail::eval_pair(boosted.slits[0], boosted.slits[1],
                            boosted.params, x + w * t, t, PhaseMode::qm);
      CHECK(fb.p_tot == doctest::Approx(f0.p_tot).epsilon(1e-14));
      CHECK(fb.j.total ==
            doctest::Approx(f0.j.total + w * f0.p_tot).epsilon(1e-13));
    }
  }
}

}  // namespace
