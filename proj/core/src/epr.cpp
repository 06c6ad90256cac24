#include "slitsim/epr.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace slitsim {

namespace {

bool is_early(Detector d) { return d == Detector::D5 || d == Detector::D6; }

const char* name(Detector d) {
  switch (d) {
    case Detector::D1: return "D1";
    case Detector::D2: return "D2";
    case Detector::D3: return "D3";
    case Detector::D4: return "D4";
    case Detector::D5: return "D5";
    case Detector::D6: return "D6";
  }
  return "?";
}

}  // namespace

BeamSetup validate_setup(const BeamSetup& setup) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(finite(setup.k1) && finite(setup.k2) && finite(setup.k1p) &&
        finite(setup.k2p) && finite(setup.dk) && finite(setup.Phi1) &&
        finite(setup.Phi2)))
    throw invalid_config("invalid config: beam setup fields must be finite");
  if (!(setup.RL >= 0.0 && setup.RR >= 0.0 && setup.RLp >= 0.0 &&
        setup.RRp >= 0.0))
    throw invalid_config("invalid config: beam amplitudes must be >= 0");
  if (!(std::isfinite(setup.N) && setup.N > 0.0))
    throw invalid_config("invalid config: normalization N must be > 0");
  const double ka = setup.k1 + setup.k2;
  const double kb = setup.k1p + setup.k2p + setup.dk;
  const double scale = std::max({1.0, std::abs(ka), std::abs(kb)});
  if (std::abs(std::abs(ka) - std::abs(kb)) > 1e-12 * scale)
    throw invalid_config(
        "invalid config: momentum balance violated, |k1 + k2| must equal "
        "|k1p + k2p + dk|");
  return setup;
}

DetectorPair make_detector_pair(Detector a, Detector b) {
  if (a == b)
    throw invalid_config(std::string("invalid config: detector pair (") +
                         name(a) + ", " + name(b) +
                         ") pairs a detector with itself");
  if (is_early(a) || is_early(b)) {
    // Which-way measurement: each detection path picks up the same fixed
    // pi/2, so the conditional probability cannot depend on the shifters.
    return DetectorPair{a, b, std::numbers::pi / 2.0, true};
  }
  const bool a_left = a == Detector::D1 || a == Detector::D2;
  const bool b_left = b == Detector::D1 || b == Detector::D2;
  if (a_left == b_left)
    throw invalid_config(std::string("invalid config: detector pair (") +
                         name(a) + ", " + name(b) +
                         ") needs one detector on each arm");
  const Detector left = a_left ? a : b;
  const Detector right = a_left ? b : a;
  const bool flip = (left == Detector::D1) != (right == Detector::D3);
  return DetectorPair{left, right, flip ? std::numbers::pi : 0.0, false};
}

MomentumChannels total_average_momentum(const BeamSetup& setup,
                                        [[maybe_unused]] double x1,
                                        [[maybe_unused]] double x2) {
  MomentumChannels channels;
  channels.weight_direct = setup.RL * setup.RR;
  channels.k_direct = setup.k1 + setup.k2;
  channels.weight_shifted = setup.RLp * setup.RRp;
  channels.k_shifted = setup.k1p + setup.k2p + setup.dk;
  return channels;
}

double correlated_intensity(const BeamSetup& setup, double r) {
  const MomentumChannels ch = total_average_momentum(setup, 0.0, 0.0);
  const double w1 = ch.weight_direct;
  const double w2 = ch.weight_shifted;
  return setup.N * setup.N *
         (w1 * w1 + w2 * w2 +
          2.0 * w1 * w2 * std::cos((ch.k_direct - ch.k_shifted) * r));
}

double conditional_probability(const DetectorPair& pair, double Phi1,
                               double Phi2) {
  if (pair.which_way) {
    // The fixed pi/2 path offset gives (1/4)(2 + 2 cos(pi/2)) = 1/2,
    // returned exactly.
    return 0.5;
  }
  return 0.25 * (2.0 + 2.0 * std::cos(Phi1 - Phi2 + pair.phase_offset));
}

std::vector<std::pair<double, double>> phi_scan(const DetectorPair& pair,
                                                int n_points) {
  if (n_points < 2)
    throw invalid_config("invalid config: phi scan needs at least two points");
  std::vector<std::pair<double, double>> table(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / (n_points - 1);
    table[i] = {phi, conditional_probability(pair, phi, 0.0)};
  }
  return table;
}

}  // namespace slitsim
