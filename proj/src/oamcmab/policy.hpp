#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace oamcmab {

// Win/loss history of one player.
class PlayerState {
 public:
  explicit PlayerState(std::size_t n_arms) : wins_(n_arms, 0), losses_(n_arms, 0) {}

  std::size_t n_arms() const { return wins_.size(); }
  std::uint64_t wins(std::size_t arm) const { return wins_.at(arm); }
  std::uint64_t losses(std::size_t arm) const { return losses_.at(arm); }
  std::uint64_t pulls(std::size_t arm) const { return wins_.at(arm) + losses_.at(arm); }
  bool all_arms_pulled() const;

  // Any positive reward (including a split 1/2) counts as a win.
  void record(std::size_t arm, double reward);

  // Directly set counters; mostly for tests.
  void set_counts(std::size_t arm, std::uint64_t wins, std::uint64_t losses);

 private:
  std::vector<std::uint64_t> wins_;
  std::vector<std::uint64_t> losses_;
};

// beta(t) = lambda * t
struct BetaSchedule {
  double lambda = 0.1;
};

// wins / pulls, or 0 for arms never pulled.
std::vector<double> empirical_means(const PlayerState& state);

// 0 until every arm has been pulled at least once, then lambda * t.
double effective_beta(const PlayerState& state, const BetaSchedule& schedule, std::uint64_t t);

// Generalized softmax over the top two arms: half the probability that arm n
// ranks first or second when each arm's value is Gumbel(mu_hat_n, 1/beta).
//
//   p_n = 1/2 * s_n * (1 + sum_{n' != n} e^{b mu_n'} / sum_{k != n'} e^{b mu_k})
//
// with s_n the ordinary softmax. Evaluated entirely in the log domain so that
// beta * mu_hat in the thousands neither overflows nor cancels.
std::vector<double> desired_probabilities(std::span<const double> mu_hat, double beta);

}  // namespace oamcmab
