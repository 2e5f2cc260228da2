#include "oamcmab/quantum.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "oamcmab/error.hpp"

namespace oamcmab {

OamState make_state(std::span<const double> p_hat, std::span<const double> phases) {
  if (p_hat.size() != phases.size())
    fail(ErrorKind::Domain, "make_state: probability and phase vectors differ in length");
  if (p_hat.empty()) fail(ErrorKind::Domain, "make_state: empty state");

  double total = 0.0;
  for (std::size_t i = 0; i < p_hat.size(); ++i) {
    if (!std::isfinite(p_hat[i]) || p_hat[i] < 0.0)
      fail(ErrorKind::Domain, "make_state: probability " + std::to_string(i + 1) + " is negative");
    if (!std::isfinite(phases[i])) fail(ErrorKind::Numeric, "make_state: non-finite phase");
    total += p_hat[i];
  }
  if (std::abs(total - 1.0) > 1e-9)
    fail(ErrorKind::Domain, "make_state: probabilities sum to " + std::to_string(total));

  OamState s;
  s.amplitudes.resize(p_hat.size());
  s.phases.assign(phases.begin(), phases.end());
  const double norm = std::sqrt(total);
  for (std::size_t i = 0; i < p_hat.size(); ++i) s.amplitudes[i] = std::sqrt(p_hat[i]) / norm;
  return s;
}

namespace {

void check_same_size(const OamState& s1, const OamState& s2) {
  if (s1.size() != s2.size())
    fail(ErrorKind::Domain, "states have different numbers of modes (" +
                                std::to_string(s1.size()) + " vs " + std::to_string(s2.size()) +
                                ")");
}

}  // namespace

JointOutcome joint_distribution(const OamState& s1, const OamState& s2) {
  check_same_size(s1, s2);
  const std::size_t n = s1.size();
  std::vector<std::complex<double>> c1(n), c2(n);
  for (std::size_t i = 0; i < n; ++i) {
    c1[i] = s1.coefficient(i);
    c2[i] = s2.coefficient(i);
  }

  JointOutcome out;
  out.n_arms = n;
  out.probs.assign(n * n, 0.0);
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      // antisymmetric amplitude: |det|^2 is the same for (a,b) and (b,a)
      const double v = 0.25 * std::norm(c1[a] * c2[b] - c1[b] * c2[a]);
      out.probs[a * n + b] = v;
      out.probs[b * n + a] = v;
      total += 2.0 * v;
    }
  }
  out.p_sep = total;
  return out;
}

double fidelity(const OamState& s1, const OamState& s2) {
  check_same_size(s1, s2);
  std::complex<double> overlap{0.0, 0.0};
  for (std::size_t i = 0; i < s1.size(); ++i)
    overlap += std::polar(s1.amplitudes[i] * s2.amplitudes[i], s2.phases[i] - s1.phases[i]);
  return std::norm(overlap);
}

double separation_probability(const OamState& s1, const OamState& s2) {
  return 0.5 - 0.5 * fidelity(s1, s2);
}

namespace {

void check_separable(const JointOutcome& joint) {
  if (!(joint.p_sep > kShutdownSeparation))
    fail(ErrorKind::Degenerate,
         "separation probability " + std::to_string(joint.p_sep) + " is below the shutdown floor");
}

}  // namespace

std::vector<double> output_probabilities(const JointOutcome& joint) {
  check_separable(joint);
  const std::size_t n = joint.n_arms;
  std::vector<double> q(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    double row = 0.0;
    for (std::size_t b = 0; b < n; ++b) row += joint.at(a, b);
    q[a] = row / joint.p_sep;
  }
  return q;
}

std::vector<double> output_probabilities_player2(const JointOutcome& joint) {
  check_separable(joint);
  const std::size_t n = joint.n_arms;
  std::vector<double> q(n, 0.0);
  for (std::size_t b = 0; b < n; ++b) {
    double col = 0.0;
    for (std::size_t a = 0; a < n; ++a) col += joint.at(a, b);
    q[b] = col / joint.p_sep;
  }
  return q;
}

Selection sample_selection(const JointOutcome& joint, Rng& rng) {
  check_separable(joint);
  const std::size_t flat = rng.categorical(joint.probs, joint.p_sep);
  Selection sel;
  sel.arm1 = flat / joint.n_arms;
  sel.arm2 = flat % joint.n_arms;
  sel.attempts = rng.geometric(joint.p_sep);
  return sel;
}

}  // namespace oamcmab
