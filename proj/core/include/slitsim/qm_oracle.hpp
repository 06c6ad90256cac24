#pragma once

#include <complex>
#include <vector>

#include "slitsim/model.hpp"

namespace slitsim {

// Independent reference implementation built on standard quantum mechanics:
// complex free Gaussian packets, analytic derivatives, probability current
// hbar/m Im(psi* dpsi/dx).  It shares only the configuration types with the
// real-field modules and deliberately duplicates no formulas from them, so
// agreement between the two routes is a genuine cross-check.
//
// packet, packet_dx, superposition_density, quantum_current and
// bohm_velocity are pure quantum calculus.  compare_fields is the designated
// cross-check: it is the one entry point that evaluates both routes, and it
// lives in its own translation unit to keep this module otherwise
// independent of the real-field code.

using ComplexAmplitude = std::complex<double>;

// Free Gaussian packet
//   psi(x,t) = (2 pi sigma0^2)^(-1/4) (1 + i u0 t / sigma0)^(-1/2)
//              exp[ -(x - x0 - v t)^2 / (4 sigma0^2 (1 + i u0 t / sigma0))
//                   + i m v (x - v t / 2) / hbar + i dphi ],
// whose modulus squared equals the channel density analytically.  The
// constant phase shift dphi multiplies the packet as a unit-modulus factor.
ComplexAmplitude packet(const SlitConfig& slit, const PhysicalParams& params,
                        double x, double t);

// Closed-form spatial derivative of packet (no numerical differencing).
ComplexAmplitude packet_dx(const SlitConfig& slit, const PhysicalParams& params,
                           double x, double t);

// |psi1 + psi2|^2 / 2, same channel normalization as total_density.
double superposition_density(const SlitConfig& slit1, const SlitConfig& slit2,
                             const PhysicalParams& params, double x, double t);

// hbar/m Im[(psi1 + psi2)* d/dx (psi1 + psi2)] / 2.
double quantum_current(const SlitConfig& slit1, const SlitConfig& slit2,
                       const PhysicalParams& params, double x, double t);

// quantum_current / superposition_density, 0 where the density is at or
// below kNodeEpsilon (same node guard as effective_velocity).
double bohm_velocity(const SlitConfig& slit1, const SlitConfig& slit2,
                     const PhysicalParams& params, double x, double t);

// Worst-case disagreement between the real-field route and this module over
// the config's x grid at the given times, with the location of each maximum.
//
// Conventions: the density error is pointwise relative and only counted
// where the reference density exceeds 1e-12; the current error is relative
// to the per-frame maximum |J| (the current passes through zero, where a
// pointwise ratio would be ill-posed); the velocity error is likewise
// relative to the per-frame maximum |v| and only counted where the reference
// density exceeds 1e-6.
struct FieldComparison {
  struct MaxError {
    double value = 0.0;
    double t = 0.0;
    double x = 0.0;
  };
  MaxError density;
  MaxError current;
  MaxError velocity;
};

FieldComparison compare_fields(const SimulationConfig& config,
                               const std::vector<double>& t_samples,
                               PhaseMode mode);

}  // namespace slitsim
