#include "slitsim/wavepacket.hpp"

#include <cmath>
#include <numbers>

namespace slitsim {

double sigma_t(double sigma0, double u0, double t) {
  return std::sqrt(sigma0 * sigma0 + u0 * u0 * t * t);
}

double center(const SlitConfig& slit, double t) { return slit.x0 + slit.v * t; }

double density(const SlitConfig& slit, const PhysicalParams& params, double x,
               double t) {
  const double u0 = compute_u0(params, slit.sigma0);
  const double s2 = slit.sigma0 * slit.sigma0 + u0 * u0 * t * t;
  const double d = x - center(slit, t);
  return std::exp(-d * d / (2.0 * s2)) /
         std::sqrt(2.0 * std::numbers::pi * s2);
}

double convective_velocity(const SlitConfig& slit, const PhysicalParams& params,
                           double x, double t) {
  const double u0 = compute_u0(params, slit.sigma0);
  const double s2 = slit.sigma0 * slit.sigma0 + u0 * u0 * t * t;
  const double d = x - center(slit, t);
  return slit.v + d * u0 * u0 * t / s2;
}

double osmotic_velocity(const SlitConfig& slit, const PhysicalParams& params,
                        double x, double t) {
  const double u0 = compute_u0(params, slit.sigma0);
  const double s2 = slit.sigma0 * slit.sigma0 + u0 * u0 * t * t;
  const double d = x - center(slit, t);
  return u0 * slit.sigma0 * d / s2;
}

double channel_phase(const SlitConfig& slit, const PhysicalParams& params,
                     double x, double t, PhaseMode mode) {
  const double u0 = compute_u0(params, slit.sigma0);
  const double s2 = slit.sigma0 * slit.sigma0 + u0 * u0 * t * t;
  const double d = x - center(slit, t);
  const double m = params.mass;
  const double spread_phase = m * u0 * u0 * t * d * d / (2.0 * s2 * params.hbar);
  if (mode == PhaseMode::qm) {
    return m * slit.v * (x - 0.5 * slit.v * t) / params.hbar + spread_phase -
           0.5 * std::atan(u0 * t / slit.sigma0) + slit.dphi;
  }
  return m * slit.v * x / params.hbar + spread_phase + slit.dphi;
}

ChannelFieldSample sample_channel(const SlitConfig& slit,
                                  const PhysicalParams& params, double x,
                                  double t, PhaseMode mode) {
  const double u0 = compute_u0(params, slit.sigma0);
  const double s2 = slit.sigma0 * slit.sigma0 + u0 * u0 * t * t;
  const double d = x - center(slit, t);
  const double m = params.mass;

  ChannelFieldSample s;
  s.p = std::exp(-d * d / (2.0 * s2)) / std::sqrt(2.0 * std::numbers::pi * s2);
  s.v_conv = slit.v + d * u0 * u0 * t / s2;
  s.u_osm = u0 * slit.sigma0 * d / s2;
  const double spread_phase = m * u0 * u0 * t * d * d / (2.0 * s2 * params.hbar);
  if (mode == PhaseMode::qm) {
    s.phase = m * slit.v * (x - 0.5 * slit.v * t) / params.hbar + spread_phase -
              0.5 * std::atan(u0 * t / slit.sigma0) + slit.dphi;
  } else {
    s.phase = m * slit.v * x / params.hbar + spread_phase + slit.dphi;
  }
  return s;
}

}  // namespace slitsim
