#pragma once

#include "slitsim/model.hpp"

namespace slitsim {

// Per-channel Gaussian fields evaluated at one space-time point.
struct ChannelFieldSample {
  double p;       // probability density
  double v_conv;  // convective velocity (drift plus spreading)
  double u_osm;   // osmotic velocity
  double phase;   // channel phase, radians
};

// Width of the freely spreading Gaussian: sqrt(sigma0^2 + u0^2 t^2).
double sigma_t(double sigma0, double u0, double t);

// Center of the drifting channel: x0 + v t.
double center(const SlitConfig& slit, double t);

// Normalized Gaussian density
//   exp(-(x - center)^2 / (2 sigma(t)^2)) / sqrt(2 pi sigma(t)^2),
// which integrates to 1 over x for every t.
double density(const SlitConfig& slit, const PhysicalParams& params, double x,
               double t);

// Drift plus spreading: v + (x - center) u0^2 t / sigma(t)^2.
double convective_velocity(const SlitConfig& slit, const PhysicalParams& params,
                           double x, double t);

// u0 sigma0 (x - center) / sigma(t)^2, identically equal to
// -(hbar / 2m) d/dx ln density.
double osmotic_velocity(const SlitConfig& slit, const PhysicalParams& params,
                        double x, double t);

// Channel phase in radians.  In PhaseMode::qm this is
//   [m v (x - v t / 2) + m u0^2 t (x - center)^2 / (2 sigma(t)^2)] / hbar
//   - (1/2) arctan(u0 t / sigma0) + dphi,
// the full argument of the complex Gaussian packet.  PhaseMode::paper keeps
// the same expression minus the two x-independent terms (see PhaseMode).
double channel_phase(const SlitConfig& slit, const PhysicalParams& params,
                     double x, double t, PhaseMode mode);

// All four channel fields at once, sharing the common subexpressions.
ChannelFieldSample sample_channel(const SlitConfig& slit,
                                  const PhysicalParams& params, double x,
                                  double t, PhaseMode mode);

}  // namespace slitsim
