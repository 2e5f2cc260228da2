#include "oamcmab/env.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "oamcmab/error.hpp"

namespace oamcmab {

Environment::Environment(std::vector<double> reward_probs, std::string name)
    : probs_(std::move(reward_probs)), name_(std::move(name)) {
  if (probs_.size() < 2) fail(ErrorKind::Config, "environment needs at least 2 arms");
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double mu = probs_[i];
    if (!std::isfinite(mu) || mu < 0.0 || mu > 1.0)
      fail(ErrorKind::Config,
           "reward probability of arm " + std::to_string(i + 1) + " is outside [0, 1]");
  }
}

double Environment::best_pair_sum() const {
  std::vector<double> sorted = probs_;
  std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end(), std::greater<>());
  return sorted[0] + sorted[1];
}

namespace {

// mu_n = 1 - n / (N + 1), n = 1..N
std::vector<double> descending_probs(std::size_t n_arms) {
  std::vector<double> probs(n_arms);
  for (std::size_t n = 1; n <= n_arms; ++n)
    probs[n - 1] = static_cast<double>(n_arms + 1 - n) / static_cast<double>(n_arms + 1);
  return probs;
}

void swap_arms(std::vector<double>& probs, std::size_t a, std::size_t b) {
  std::swap(probs[a - 1], probs[b - 1]);
}

}  // namespace

const std::vector<std::string>& named_env_names() {
  static const std::vector<std::string> names{"Env1-1", "Env1-2", "Env2-1", "Env2-2", "Env2-3"};
  return names;
}

Environment make_named_env(std::string_view name) {
  std::vector<double> probs;
  if (name == "Env1-1") {
    probs = descending_probs(5);
  } else if (name == "Env1-2") {
    probs = descending_probs(5);
    swap_arms(probs, 2, 3);
  } else if (name == "Env2-1") {
    probs = descending_probs(10);
  } else if (name == "Env2-2") {
    probs = descending_probs(10);
    swap_arms(probs, 3, 6);
  } else if (name == "Env2-3") {
    probs = descending_probs(10);
    swap_arms(probs, 2, 3);
    swap_arms(probs, 3, 6);
  } else {
    fail(ErrorKind::Config, "env.name: unknown environment '" + std::string(name) +
                                "' (expected Env1-1, Env1-2, Env2-1, Env2-2 or Env2-3)");
  }
  return Environment(std::move(probs), std::string(name));
}

std::pair<RewardOutcome, RewardOutcome> draw_rewards(const Environment& env, std::size_t arm1,
                                                     std::size_t arm2, Rng& rng) {
  if (arm1 >= env.n_arms() || arm2 >= env.n_arms())
    fail(ErrorKind::Domain, "arm index out of range");

  RewardOutcome r1, r2;
  if (arm1 == arm2) {
    const bool success = rng.bernoulli(env.reward_prob(arm1));
    r1 = r2 = RewardOutcome{success ? 0.5 : 0.0, true, 2};
    return {r1, r2};
  }
  r1.reward = rng.bernoulli(env.reward_prob(arm1)) ? 1.0 : 0.0;
  r2.reward = rng.bernoulli(env.reward_prob(arm2)) ? 1.0 : 0.0;
  return {r1, r2};
}

}  // namespace oamcmab
