#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oamcmab/quantum.hpp"

namespace oamcmab {

// Closed-form expressions written out term by term from their cosine
// expansions. They share no code with the determinant/phasor routines in
// quantum.cpp and serve as independent references.
namespace reference {

// 1/4 (p1[a] p2[b] + p1[b] p2[a] - 2 sqrt(p1[a] p1[b] p2[a] p2[b]) cos(w[b] - w[a]))
double joint_cosine(const std::vector<double>& p1, const std::vector<double>& p2,
                    const std::vector<double>& omega, std::size_t a, std::size_t b);

// sum_n p1 p2 + 2 sum_{a<b} sqrt(p1[a] p2[a] p1[b] p2[b]) cos(w[b] - w[a])
double fidelity_cosine(const std::vector<double>& p1, const std::vector<double>& p2,
                       const std::vector<double>& omega);

// q_n = (p1[n] + p2[n] - 2 sqrt(p1[n] p2[n]) sum_k sqrt(p1[k] p2[k]) cos(w[k] - w[n])) / (4 p_sep)
std::vector<double> output_closed_form(const std::vector<double>& p1, const std::vector<double>& p2,
                                       const std::vector<double>& omega, double p_sep);

// (sqrt(p1) . sqrt(p2))^2 / (|sqrt(p1)|^2 |sqrt(p2)|^2)
double squared_cosine_similarity(const std::vector<double>& p1, const std::vector<double>& p2);

}  // namespace reference

struct PropertyResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // worst residual observed
  double tolerance = 0.0;  // pass threshold on `worst`
};

struct VerifyOptions {
  std::uint64_t seed = 12345;
  std::uint32_t instances = 1000;
  // Replaces the joint distribution under test; used for fault injection.
  std::function<JointOutcome(const OamState&, const OamState&)> joint_override;
};

// Randomized invariant suite: conflict-freedom, separation-probability and
// output-probability consistency, player symmetry, fidelity bound, gradient
// check against central differences.
std::vector<PropertyResult> run_property_checks(const VerifyOptions& options);

}  // namespace oamcmab
