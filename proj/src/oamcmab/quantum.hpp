#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oamcmab/rng.hpp"

namespace oamcmab {

// Below this separation probability the post-selection loop would effectively
// never terminate; sampling refuses to proceed.
inline constexpr double kShutdownSeparation = 1e-9;

// One player's photon: sqrt(p_hat_n) e^{i theta_n} over OAM modes n = 1..N.
// Player 2's photon carries the modes -n; the reflection at the beam splitter
// is already folded into the closed forms below.
struct OamState {
  std::vector<double> amplitudes;
  std::vector<double> phases;

  std::size_t size() const { return amplitudes.size(); }
  std::complex<double> coefficient(std::size_t n) const {
    return std::polar(amplitudes[n], phases[n]);
  }
};

OamState make_state(std::span<const double> p_hat, std::span<const double> phases);

// Pr(n1, -n2) for player 1 observing +n1 at port 1 and player 2 observing -n2
// at port 2, stored row-major (row = player 1's arm).
struct JointOutcome {
  std::size_t n_arms = 0;
  std::vector<double> probs;
  double p_sep = 0.0;  // sum of probs

  double at(std::size_t n1, std::size_t n2) const { return probs[n1 * n_arms + n2]; }
};

// Pr(n1, -n2) = 1/4 |c1[n1] c2[n2] - c1[n2] c2[n1]|^2
JointOutcome joint_distribution(const OamState& s1, const OamState& s2);

// |<phi1|R phi2>|^2 = |sum_n sqrt(p1 p2) e^{i (theta2 - theta1)}|^2
double fidelity(const OamState& s1, const OamState& s2);

// 1/2 - fidelity / 2
double separation_probability(const OamState& s1, const OamState& s2);

// Conditional selection probabilities given separate output ports. Row
// marginal (player 1) and column marginal (player 2); these coincide for the
// interference joint but not for arbitrary matrices.
std::vector<double> output_probabilities(const JointOutcome& joint);
std::vector<double> output_probabilities_player2(const JointOutcome& joint);

struct Selection {
  std::size_t arm1 = 0;
  std::size_t arm2 = 0;
  std::uint64_t attempts = 1;  // photon pairs emitted until separation
};

Selection sample_selection(const JointOutcome& joint, Rng& rng);

}  // namespace oamcmab
