#pragma once

#include <utility>
#include <vector>

#include "slitsim/model.hpp"

namespace slitsim {

// Two-particle interferometer with counter-propagating particles: one flies
// to the left detectors D1/D2, the other to the right detectors D3/D4, after
// passing adjustable phase shifters Phi1 (left) and Phi2 (right).  D5/D6 are
// early detectors that identify the path before the phase shifters act.
// Each joint two-particle channel carries a product of beam amplitudes; the
// second channel's momentum sum is offset by the spread dk.
struct BeamSetup {
  double k1 = 1.0;    // left-beam wavenumber, first channel
  double k2 = 1.0;    // right-beam wavenumber, first channel
  double k1p = 1.0;   // left-beam wavenumber, second channel
  double k2p = 1.0;   // right-beam wavenumber, second channel
  double dk = 0.0;    // momentum spread added to the second channel
  double Phi1 = 0.0;  // left phase shifter
  double Phi2 = 0.0;  // right phase shifter
  double RL = 0.5;    // amplitudes: left/right, first channel
  double RR = 0.5;
  double RLp = 0.5;   // amplitudes: left/right, second channel
  double RRp = 0.5;
  double N = 1.0;     // overall normalization
};

// Checks amplitudes >= 0, N > 0, all fields finite, and the momentum
// balance |k1 + k2| = |k1p + k2p + dk| (both interfering channels carry the
// same total momentum magnitude).  Throws invalid_config otherwise.
BeamSetup validate_setup(const BeamSetup& setup);

enum class Detector { D1, D2, D3, D4, D5, D6 };

// A joint detection pair with its interferometric phase offset.
//
// Pairing one of D1/D2 with one of D3/D4 is phase-sensitive; the offsets
//   (D2,D4): 0   (D2,D3): pi   (D1,D4): pi   (D1,D3): 0
// encode the extra pi/2 picked up per beam-splitter reflection on each
// detection path.  The (D2,D4)/(D2,D3) values follow directly from the
// detection-path bookkeeping; the (D1,*) entries are inferred from
// beam-splitter unitarity (the two exits of one splitter must be
// complementary).  Any pair involving an early detector D5/D6 is a
// which-way measurement: the path phase difference is then a fixed pi/2
// regardless of the shifters.  Early detectors may sit on either arm, so
// both slots accept them.
struct DetectorPair {
  Detector left;
  Detector right;
  double phase_offset;  // one of 0, pi/2, pi
  bool which_way;       // true iff D5 or D6 is involved
};

// Builds the pair from the offset table above; rejects combinations it does
// not define (two final detectors on the same arm, or a detector paired with
// itself).
DetectorPair make_detector_pair(Detector a, Detector b);

// The two joint channels behind the total average momentum: each with its
// amplitude weight and summed wavenumber.
struct MomentumChannels {
  double weight_direct;   // RL * RR
  double k_direct;        // k1 + k2
  double weight_shifted;  // RLp * RRp
  double k_shifted;       // k1p + k2p + dk
};

// Channel weights and momentum sums entering the weighted total average
// momentum.  The detection positions do not affect the constant-amplitude
// beams modeled here; the parameters fix the call signature.
MomentumChannels total_average_momentum(const BeamSetup& setup, double x1,
                                        double x2);

// Joint detection intensity as a function of the separation r = x1 + x2:
//   N^2 [ RL^2 RR^2 + RLp^2 RRp^2
//         + 2 RL RR RLp RRp cos((k_direct - k_shifted) r) ].
double correlated_intensity(const BeamSetup& setup, double r);

// Conditional probability of the joint detection described by the pair:
//   (1/4) (2 + 2 cos(Phi1 - Phi2 + phase_offset))
// with the equal-amplitude normalization N^2 RL^2 RR^2 = 1/4 fixed.  For a
// which-way pair the path phases are independent of the shifters and the
// probability is exactly 1/2.
double conditional_probability(const DetectorPair& pair, double Phi1,
                               double Phi2);

// (phi, probability) table with phi uniform over [0, 2 pi], n_points >= 2,
// scanning conditional_probability at Phi1 = phi, Phi2 = 0.
std::vector<std::pair<double, double>> phi_scan(const DetectorPair& pair,
                                                int n_points);

}  // namespace slitsim
