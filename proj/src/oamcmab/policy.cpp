#include "oamcmab/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oamcmab/error.hpp"

namespace oamcmab {

bool PlayerState::all_arms_pulled() const {
  for (std::size_t i = 0; i < wins_.size(); ++i)
    if (wins_[i] + losses_[i] == 0) return false;
  return true;
}

void PlayerState::record(std::size_t arm, double reward) {
  if (reward > 0.0)
    ++wins_.at(arm);
  else
    ++losses_.at(arm);
}

void PlayerState::set_counts(std::size_t arm, std::uint64_t wins, std::uint64_t losses) {
  wins_.at(arm) = wins;
  losses_.at(arm) = losses;
}

std::vector<double> empirical_means(const PlayerState& state) {
  std::vector<double> mu(state.n_arms(), 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto pulls = state.pulls(i);
    if (pulls > 0) mu[i] = static_cast<double>(state.wins(i)) / static_cast<double>(pulls);
  }
  return mu;
}

double effective_beta(const PlayerState& state, const BetaSchedule& schedule, std::uint64_t t) {
  if (!state.all_arms_pulled()) return 0.0;
  return schedule.lambda * static_cast<double>(t);
}

namespace {

// log(sum_i e^{y_i}) over i != skip
double log_sum_exp(std::span<const double> y, std::size_t skip) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y.size(); ++i)
    if (i != skip) m = std::max(m, y[i]);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (i != skip) s += std::exp(y[i] - m);
  return m + std::log(s);
}

}  // namespace

std::vector<double> desired_probabilities(std::span<const double> mu_hat, double beta) {
  const std::size_t n = mu_hat.size();
  if (n < 2) fail(ErrorKind::Domain, "desired_probabilities needs at least 2 arms");
  if (!std::isfinite(beta) || beta < 0.0)
    fail(ErrorKind::Numeric, "inverse temperature must be finite and nonnegative");

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(mu_hat[i])) fail(ErrorKind::Numeric, "non-finite empirical mean");
    y[i] = beta * mu_hat[i];
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const double lse_all = log_sum_exp(y, kNone);
  std::vector<double> lse_without(n);
  for (std::size_t j = 0; j < n; ++j) lse_without[j] = log_sum_exp(y, j);

  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double log_first = y[i] - lse_all;
    double acc = std::exp(log_first);
    // P(j first, i second) = s_i * e^{y_j} / sum_{k != j} e^{y_k}
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) acc += std::exp(log_first + y[j] - lse_without[j]);
    p[i] = 0.5 * acc;
  }
  return p;
}

}  // namespace oamcmab
