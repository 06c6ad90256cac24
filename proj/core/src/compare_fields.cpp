// The designated cross-check between the real-field route (interference /
// wavepacket) and the quantum reference route (qm_oracle).  Kept in its own
// translation unit so qm_oracle.cpp itself never touches the code it is
// meant to validate.

#include <cmath>
#include <complex>
#include <vector>

#include "slitsim/interference.hpp"
#include "slitsim/qm_oracle.hpp"

namespace slitsim {

namespace {

// Quantum-route density and current for a one- or two-channel config.
void reference_fields(const SimulationConfig& config, double x, double t,
                      double* p, double* j) {
  if (config.slits.size() == 2) {
    *p = superposition_density(config.slits[0], config.slits[1], config.params,
                               x, t);
    *j = quantum_current(config.slits[0], config.slits[1], config.params, x, t);
    return;
  }
  const std::complex<double> psi = packet(config.slits[0], config.params, x, t);
  const std::complex<double> dpsi =
      packet_dx(config.slits[0], config.params, x, t);
  *p = std::norm(psi);
  *j = config.params.hbar / config.params.mass *
       std::imag(std::conj(psi) * dpsi);
}

void track(FieldComparison::MaxError* m, double err, double t, double x) {
  if (err > m->value) {
    m->value = err;
    m->t = t;
    m->x = x;
  }
}

}  // namespace

FieldComparison compare_fields(const SimulationConfig& config,
                               const std::vector<double>& t_samples,
                               PhaseMode mode) {
  constexpr double kDensityGate = 1e-12;   // densities compared above this
  constexpr double kVelocityGate = 1e-6;   // velocities compared above this

  FieldComparison result;
  const GridSpec& g = config.grid;
  std::vector<double> ref_p(g.nx), ref_j(g.nx), ref_v(g.nx);

  for (double t : t_samples) {
    const FieldFrame frame = evaluate_frame(config, t, mode);

    double frame_jmax = 0.0;
    double frame_vmax = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      reference_fields(config, frame.x[i], t, &ref_p[i], &ref_j[i]);
      ref_v[i] = ref_p[i] > kNodeEpsilon ? ref_j[i] / ref_p[i] : 0.0;
      frame_jmax = std::max(frame_jmax, std::abs(ref_j[i]));
      if (ref_p[i] > kVelocityGate)
        frame_vmax = std::max(frame_vmax, std::abs(ref_v[i]));
    }

    for (int i = 0; i < g.nx; ++i) {
      if (ref_p[i] > kDensityGate) {
        track(&result.density, std::abs(frame.p_tot[i] - ref_p[i]) / ref_p[i],
              t, frame.x[i]);
      }
      if (frame_jmax > 0.0) {
        track(&result.current,
              std::abs(frame.j[i].total - ref_j[i]) / frame_jmax, t,
              frame.x[i]);
      }
      if (ref_p[i] > kVelocityGate && frame_vmax > 0.0) {
        track(&result.velocity,
              std::abs(frame.v_eff[i] - ref_v[i]) / frame_vmax, t, frame.x[i]);
      }
    }
  }
  return result;
}

}  // namespace slitsim
