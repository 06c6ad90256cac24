// Pure quantum-mechanical reference route.  This translation unit must stay
// independent of the real-field modules: it includes only the configuration
// types, and every formula here is standard quantum calculus for free
// Gaussian packets.  The designated cross-check (compare_fields) lives in
// compare_fields.cpp.

#include "slitsim/qm_oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace slitsim {

namespace {

using cd = std::complex<double>;

struct PacketEval {
  cd psi;
  cd dpsi;
};

PacketEval eval_packet(const SlitConfig& slit, const PhysicalParams& params,
                       double x, double t) {
  const double sigma0 = slit.sigma0;
  const double u0 = params.hbar / (2.0 * params.mass * sigma0);
  const double tau = u0 * t / sigma0;
  const cd one_plus_itau(1.0, tau);
  const double d = x - slit.x0 - slit.v * t;

  const cd gauss = -d * d / (4.0 * sigma0 * sigma0 * one_plus_itau);
  const cd plane(0.0,
                 params.mass * slit.v * (x - 0.5 * slit.v * t) / params.hbar +
                     slit.dphi);
  const cd prefactor =
      std::pow(2.0 * std::numbers::pi * sigma0 * sigma0, -0.25) /
      std::sqrt(one_plus_itau);

  PacketEval e;
  e.psi = prefactor * std::exp(gauss + plane);
  const cd dlog = -d / (2.0 * sigma0 * sigma0 * one_plus_itau) +
                  cd(0.0, params.mass * slit.v / params.hbar);
  e.dpsi = e.psi * dlog;
  return e;
}

}  // namespace

ComplexAmplitude packet(const SlitConfig& slit, const PhysicalParams& params,
                        double x, double t) {
  return eval_packet(slit, params, x, t).psi;
}

ComplexAmplitude packet_dx(const SlitConfig& slit, const PhysicalParams& params,
                           double x, double t) {
  return eval_packet(slit, params, x, t).dpsi;
}

double superposition_density(const SlitConfig& slit1, const SlitConfig& slit2,
                             const PhysicalParams& params, double x, double t) {
  const cd sum = eval_packet(slit1, params, x, t).psi +
                 eval_packet(slit2, params, x, t).psi;
  return std::norm(sum) / 2.0;
}

double quantum_current(const SlitConfig& slit1, const SlitConfig& slit2,
                       const PhysicalParams& params, double x, double t) {
  const PacketEval a = eval_packet(slit1, params, x, t);
  const PacketEval b = eval_packet(slit2, params, x, t);
  const cd psi = a.psi + b.psi;
  const cd dpsi = a.dpsi + b.dpsi;
  return params.hbar / params.mass * std::imag(std::conj(psi) * dpsi) / 2.0;
}

double bohm_velocity(const SlitConfig& slit1, const SlitConfig& slit2,
                     const PhysicalParams& params, double x, double t) {
  const double p = superposition_density(slit1, slit2, params, x, t);
  if (p <= kNodeEpsilon) return 0.0;
  return quantum_current(slit1, slit2, params, x, t) / p;
}

}  // namespace slitsim
