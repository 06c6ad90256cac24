#pragma once

#include <vector>

#include "slitsim/model.hpp"
#include "slitsim/wavepacket.hpp"

namespace slitsim {

// The four summands of the two-channel probability current.  All terms carry
// the same channel normalization as the total density, so
// total = term_conv_1 + term_conv_2 + term_interf_conv + term_entangling.
struct CurrentDecomposition {
  double term_conv_1;      // P1 v1 / norm
  double term_conv_2;      // P2 v2 / norm
  double term_interf_conv;  // sqrt(P1 P2) (v1 + v2) cos(phi12) / norm
  double term_entangling;   // sqrt(P1 P2) (u1 - u2) sin(phi12) / norm
  double total;
};

// Gridded snapshot of every field at one time.  All arrays have length nx;
// x ascends.
struct FieldFrame {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> p_tot;
  std::vector<CurrentDecomposition> j;
  std::vector<double> phi12;
  std::vector<double> v_eff;
};

// Residual of the continuity equation dP/dt + dJ/dx = 0, measured with
// second-order central differences over interior grid points.
struct ContinuityReport {
  double max_residual;  // max |dP/dt + dJ/dx|
  double max_dpdt;      // max |dP/dt|, the natural scale of the residual
  double dx;
  double dt;
};

// Phase difference between the channels, phi2 - phi1.
//
// PhaseMode::qm takes the difference of the full channel phases.
// PhaseMode::paper evaluates the reduced closed form
//   (1/hbar) [ m (v2 - v1) x
//              + (m u0^2 / 2) ((x - x02 - v2 t)^2 - (x - x01 - v1 t)^2)
//                * t / sigma(t)^2 ]
//   + (dphi2 - dphi1),
// which assumes a common width; slits with different sigma0 are rejected
// with invalid_config in that mode.  The two modes agree identically
// whenever v1^2 = v2^2 (the dropped energy terms cancel).
double phase_difference(const SlitConfig& slit1, const SlitConfig& slit2,
                        const PhysicalParams& params, double x, double t,
                        PhaseMode mode);

// (P1 + P2 + 2 sqrt(P1 P2) cos(phi12)) / 2.  The division by the channel
// count makes the far-separated two-channel configuration integrate to 1.
double total_density(const SlitConfig& slit1, const SlitConfig& slit2,
                     const PhysicalParams& params, double x, double t,
                     PhaseMode mode);

// Four-term decomposition of the probability current, same normalization as
// total_density.  The sum of the terms reproduces the quantum-mechanical
// current of the superposed packets (see qm_oracle).
CurrentDecomposition total_current(const SlitConfig& slit1,
                                   const SlitConfig& slit2,
                                   const PhysicalParams& params, double x,
                                   double t, PhaseMode mode);

// total / p_tot where p_tot > kNodeEpsilon, else 0 (node guard).
double effective_velocity(const CurrentDecomposition& decomp, double p_tot);

// L1 norm of the entangling term over the frame divided by the L1 norm of
// the total current, summed in ascending-x order.  Returns 0 for an
// identically vanishing total current.
double entangling_fraction(const FieldFrame& frame);

// Gradient of the heat-flow difference between the channels,
// grad(Q2 - Q1) = -2 omega m (u2 - u1); the entangling current term equals
// (1 / 2 omega m) sqrt(P1 P2) grad(Q2 - Q1) sin(phi12) / norm.
double heat_flow_difference(const SlitConfig& slit1, const SlitConfig& slit2,
                            const PhysicalParams& params, double x, double t);

// Evaluates every field on the config's x grid at time t.  Handles one- and
// two-channel configs; a single channel degenerates to p = P1,
// j = {P1 v1, 0, 0, 0} and phi12 = 0.
FieldFrame evaluate_frame(const SimulationConfig& config, double t,
                          PhaseMode mode);

// Maximum continuity residual over the interior of the given grid (which
// replaces config.grid for this evaluation).  Requires nx >= 3 and nt >= 3;
// smaller grids raise invalid_config.  The residual converges as O(dx^2,
// dt^2) under grid refinement.
ContinuityReport continuity_residual(const SimulationConfig& config,
                                     PhaseMode mode, const GridSpec& grid);

namespace detail {

// Shared two-channel point evaluation used by total_density, total_current,
// evaluate_frame and the trajectory integrator, so all of them see bitwise
// identical fields.
struct PairFields {
  double p_tot;
  CurrentDecomposition j;
  double phi12;
};

PairFields eval_pair(const SlitConfig& slit1, const SlitConfig& slit2,
                     const PhysicalParams& params, double x, double t,
                     PhaseMode mode);

// Degenerate single-channel version (p = P1, j = {P1 v1, 0, 0, 0}).
PairFields eval_single(const SlitConfig& slit, const PhysicalParams& params,
                       double x, double t, PhaseMode mode);

// Dispatch on config.slits.size().
PairFields eval_point(const SimulationConfig& config, double x, double t,
                      PhaseMode mode);

}  // namespace detail

}  // namespace slitsim
