#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical routines.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

// Cosine expansion of the post-selected joint probability.
inline double joint_cosine(const std::vector<double>& p1, const std::vector<double>& p2,
                           const std::vector<double>& omega, std::size_t a, std::size_t b) {
  return 0.25 * (p1[a] * p2[b] + p1[b] * p2[a] -
                 2.0 * std::sqrt(p1[a] * p1[b] * p2[a] * p2[b]) * std::cos(omega[b] - omega[a]));
}

inline double fidelity_cosine(const std::vector<double>& p1, const std::vector<double>& p2,
                              const std::vector<double>& omega) {
  double f = 0.0;
  for (std::size_t n = 0; n < p1.size(); ++n) f += p1[n] * p2[n];
  for (std::size_t a = 0; a < p1.size(); ++a)
    for (std::size_t b = a + 1; b < p1.size(); ++b)
      f += 2.0 * std::sqrt(p1[a] * p2[a] * p1[b] * p2[b]) * std::cos(omega[b] - omega[a]);
  return f;
}

inline std::vector<double> output_closed_form(const std::vector<double>& p1,
                                              const std::vector<double>& p2,
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

// Surrogate objective written as the double sum over arm pairs.
inline double objective_pairs(const std::vector<double>& p, const std::vector<double>& omega) {
  double f = 0.0;
  for (double x : p) f += x * x;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      f += 2.0 * p[a] * p[b] * std::cos(omega[b] - omega[a]);
  return f;
}

// Direct (unstabilized) evaluation of the generalized softmax. Cancels badly in
// total - e[j] once one arm dominates, so only usable for small beta.
inline std::vector<double> desired_naive(const std::vector<double>& mu, double beta) {
  const std::size_t n = mu.size();
  std::vector<double> e(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += (e[i] = std::exp(beta * mu[i]));
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 1.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) acc += e[j] / (total - e[j]);
    p[i] = 0.5 * e[i] / total * acc;
  }
  return p;
}

inline std::vector<double> random_simplex(std::mt19937_64& gen, std::size_t n) {
  std::exponential_distribution<double> d(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) total += (x = d(gen));
  for (auto& x : p) x /= total;
  return p;
}

inline std::vector<double> random_phases(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> d(0.0, 2.0 * std::numbers::pi);
  std::vector<double> w(n);
  for (auto& x : w) x = d(gen);
  return w;
}

}  // namespace oracle
