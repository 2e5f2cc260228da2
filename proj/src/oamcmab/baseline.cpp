#include "oamcmab/baseline.hpp"

#include <cmath>
#include <numbers>

#include "oamcmab/error.hpp"

namespace oamcmab {

BaselineJoint baseline_joint(std::span<const double> p1_hat, std::span<const double> p2_hat) {
  if (p1_hat.size() != p2_hat.size())
    fail(ErrorKind::Domain, "baseline_joint: preference vectors differ in length");
  const std::size_t n = p1_hat.size();
  if (n < 2) fail(ErrorKind::Domain, "baseline_joint: need at least 2 arms");

  // sin^2 depends only on the index distance
  std::vector<double> kernel(n);
  for (std::size_t d = 0; d < n; ++d) {
    const double s = std::sin(static_cast<double>(d) * std::numbers::pi / static_cast<double>(n));
    kernel[d] = s * s;
  }
  kernel[0] = 0.0;

  BaselineJoint out;
  out.n_arms = n;
  out.probs.assign(n * n, 0.0);
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const std::size_t d = a > b ? a - b : b - a;
      const double v = p1_hat[a] * p2_hat[b] * kernel[d];
      out.probs[a * n + b] = v;
      total += v;
    }
  }
  if (!(total > 0.0) || !std::isfinite(total))
    fail(ErrorKind::Degenerate, "baseline_joint: all arm pairs have zero weight");
  for (double& v : out.probs) v /= total;
  return out;
}

std::vector<double> baseline_output_probabilities(const BaselineJoint& joint, int player) {
  const std::size_t n = joint.n_arms;
  std::vector<double> q(n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) q[player == 1 ? a : b] += joint.at(a, b);
  return q;
}

Selection baseline_sample(const BaselineJoint& joint, Rng& rng) {
  const std::size_t flat = rng.categorical(joint.probs, 1.0);
  Selection sel;
  sel.arm1 = flat / joint.n_arms;
  sel.arm2 = flat % joint.n_arms;
  sel.attempts = rng.geometric(joint.p_sep);
  return sel;
}

}  // namespace oamcmab
