#include "oamcmab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oamcmab/phaseopt.hpp"
#include "oamcmab/rng.hpp"

namespace oamcmab {

namespace reference {

double joint_cosine(const std::vector<double>& p1, const std::vector<double>& p2,
                    const std::vector<double>& omega, std::size_t a, std::size_t b) {
  const double cross = std::sqrt(p1[a] * p1[b] * p2[a] * p2[b]) * std::cos(omega[b] - omega[a]);
  return 0.25 * (p1[a] * p2[b] + p1[b] * p2[a] - 2.0 * cross);
}

double fidelity_cosine(const std::vector<double>& p1, const std::vector<double>& p2,
                       const std::vector<double>& omega) {
  double f = 0.0;
  for (std::size_t n = 0; n < p1.size(); ++n) f += p1[n] * p2[n];
  for (std::size_t a = 0; a < p1.size(); ++a)
    for (std::size_t b = a + 1; b < p1.size(); ++b)
      f += 2.0 * std::sqrt(p1[a] * p2[a] * p1[b] * p2[b]) * std::cos(omega[b] - omega[a]);
  return f;
}

std::vector<double> output_closed_form(const std::vector<double>& p1, const std::vector<double>& p2,
                                       const std::vector<double>& omega, double p_sep) {
  std::vector<double> q(p1.size());
  for (std::size_t n = 0; n < p1.size(); ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k < p1.size(); ++k)
      s += std::sqrt(p1[k] * p2[k]) * std::cos(omega[k] - omega[n]);
    q[n] = (p1[n] + p2[n] - 2.0 * std::sqrt(p1[n] * p2[n]) * s) / (4.0 * p_sep);
  }
  return q;
}

double squared_cosine_similarity(const std::vector<double>& p1, const std::vector<double>& p2) {
  double dot = 0.0, n1 = 0.0, n2 = 0.0;
  for (std::size_t n = 0; n < p1.size(); ++n) {
    dot += std::sqrt(p1[n] * p2[n]);
    n1 += p1[n];
    n2 += p2[n];
  }
  return dot * dot / (n1 * n2);
}

}  // namespace reference

namespace {

struct Instance {
  std::vector<double> p1, p2, theta1, theta2, omega;
};

std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double total = 0.0;
  // Occasionally zero out arms to exercise sparse supports.
  const bool sparse = rng.uniform() < 0.2;
  for (auto& x : p) {
    x = -std::log1p(-rng.uniform());
    if (sparse && rng.uniform() < 0.4) x = 0.0;
    total += x;
  }
  if (total <= 0.0) {
    p[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : p) x /= total;
  return p;
}

Instance random_instance(Rng& rng) {
  const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 9.0);
  Instance in;
  in.p1 = random_simplex(rng, n);
  // a third of the time the players share preferences, as in late exploitation
  in.p2 = rng.uniform() < 1.0 / 3.0 ? in.p1 : random_simplex(rng, n);
  in.theta1.resize(n);
  in.theta2.resize(n);
  in.omega.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.theta1[i] = 2.0 * std::numbers::pi * rng.uniform();
    in.theta2[i] = 2.0 * std::numbers::pi * rng.uniform();
    in.omega[i] = in.theta2[i] - in.theta1[i];
  }
  return in;
}

class Tracker {
 public:
  Tracker(std::string name, double tolerance) : r_{std::move(name), true, 0.0, tolerance} {}
  void observe(double residual) {
    if (!std::isfinite(residual)) residual = INFINITY;
    r_.worst = std::max(r_.worst, residual);
  }
  PropertyResult result() {
    r_.passed = r_.worst <= r_.tolerance;
    return r_;
  }

 private:
  PropertyResult r_;
};

}  // namespace

std::vector<PropertyResult> run_property_checks(const VerifyOptions& options) {
  Rng rng(options.seed);
  const auto joint_of = [&](const OamState& a, const OamState& b) {
    return options.joint_override ? options.joint_override(a, b) : joint_distribution(a, b);
  };

  Tracker conflict("conflict_freedom (max diagonal probability)", 1e-12);
  Tracker sampled("sampled_same_arm (count)", 0.0);
  Tracker cosine_form("joint_matches_cosine_form", 1e-12);
  Tracker psep("psep_consistency (matrix sum vs 1/2 - F/2)", 1e-10);
  Tracker output("output_probabilities_closed_form", 1e-10);
  Tracker symmetry("player_symmetry (q1 vs q2)", 1e-12);
  Tracker bound("fidelity_bound (F - cos^2)", 1e-12);
  Tracker fid_forms("fidelity_phasor_vs_cosine", 1e-12);
  Tracker gradient("objective_gradient_vs_central_difference", 1e-5);
  Tracker monotone("optimizer_never_worse_than_start", 1e-12);

  OptimizerSettings settings;
  for (std::uint32_t i = 0; i < options.instances; ++i) {
    const Instance in = random_instance(rng);
    const std::size_t n = in.p1.size();
    const OamState s1 = make_state(in.p1, in.theta1);
    const OamState s2 = make_state(in.p2, in.theta2);
    const JointOutcome joint = joint_of(s1, s2);

    double diag = 0.0, sum = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      diag = std::max(diag, joint.at(a, a));
      for (std::size_t b = 0; b < n; ++b) {
        sum += joint.at(a, b);
        cosine_form.observe(std::abs(joint.at(a, b) - reference::joint_cosine(in.p1, in.p2, in.omega, a, b)));
      }
    }
    conflict.observe(diag);

    const double f = fidelity(s1, s2);
    psep.observe(std::abs(sum - (0.5 - 0.5 * f)));
    psep.observe(std::abs(joint.p_sep - sum));
    fid_forms.observe(std::abs(f - reference::fidelity_cosine(in.p1, in.p2, in.omega)));
    bound.observe(f - reference::squared_cosine_similarity(in.p1, in.p2));

    // Conditional quantities are undefined at (near) total bunching.
    if (sum > 1e-6) {
      JointOutcome conditioned = joint;
      conditioned.p_sep = sum;
      std::vector<double> q1(n, 0.0), q2(n, 0.0);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          q1[a] += joint.at(a, b) / sum;
          q2[b] += joint.at(a, b) / sum;
        }
      const auto closed = reference::output_closed_form(in.p1, in.p2, in.omega, 0.5 - 0.5 * f);
      for (std::size_t a = 0; a < n; ++a) {
        output.observe(std::abs(q1[a] - closed[a]));
        symmetry.observe(std::abs(q1[a] - q2[a]));
      }
      const Selection sel = sample_selection(conditioned, rng);
      sampled.observe(sel.arm1 == sel.arm2 ? 1.0 : 0.0);
    }

    std::vector<double> grad(n), wp(in.omega), wm(in.omega);
    objective_with_gradient(in.p1, in.omega, grad);
    constexpr double h = 1e-6;
    for (std::size_t k = 0; k < n; ++k) {
      wp[k] += h;
      wm[k] -= h;
      const double fd = (objective(in.p1, wp) - objective(in.p1, wm)) / (2.0 * h);
      gradient.observe(std::abs(fd - grad[k]));
      wp[k] = wm[k] = in.omega[k];
    }

    const double start = objective(in.p1, spiral_initialization(n));
    monotone.observe(optimize(in.p1, settings).objective_value - start);
  }

  return {conflict.result(), sampled.result(), cosine_form.result(), psep.result(),
          output.result(),   symmetry.result(), bound.result(),       fid_forms.result(),
          gradient.result(), monotone.result()};
}

}  // namespace oamcmab
