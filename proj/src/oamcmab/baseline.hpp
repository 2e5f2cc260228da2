#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oamcmab/quantum.hpp"
#include "oamcmab/rng.hpp"

namespace oamcmab {

// Pair-selection law of the attenuator-based method. Its separation
// probability is fixed at 1/2 regardless of the players' preferences.
//
// Only the uniform case, Pr(n1, n2) ~ sin^2((n2 - n1) pi / N), is documented
// for that method. Non-uniform preferences are modelled here as a product
// p1[n1] * p2[n2] modulating the sin^2 law, which is a reconstruction.
struct BaselineJoint {
  std::size_t n_arms = 0;
  std::vector<double> probs;  // row-major, sums to 1
  double p_sep = 0.5;

  double at(std::size_t n1, std::size_t n2) const { return probs[n1 * n_arms + n2]; }
};

BaselineJoint baseline_joint(std::span<const double> p1_hat, std::span<const double> p2_hat);

// Row (player 1) and column (player 2) marginals of the normalized matrix.
std::vector<double> baseline_output_probabilities(const BaselineJoint& joint, int player);

Selection baseline_sample(const BaselineJoint& joint, Rng& rng);

}  // namespace oamcmab
