#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oamcmab/rng.hpp"

namespace oamcmab {

// Bernoulli bandit with N >= 2 arms. Arm indices are zero-based in code and
// one-based in every file or message a user sees.
class Environment {
 public:
  Environment(std::vector<double> reward_probs, std::string name = {});

  std::size_t n_arms() const { return probs_.size(); }
  const std::vector<double>& reward_probs() const { return probs_; }
  double reward_prob(std::size_t arm) const { return probs_.at(arm); }
  const std::string& name() const { return name_; }

  // mu* + mu**: the best achievable expected reward per step for two players.
  double best_pair_sum() const;

 private:
  std::vector<double> probs_;
  std::string name_;
};

// Env1-1, Env1-2, Env2-1, Env2-2, Env2-3.
Environment make_named_env(std::string_view name);
const std::vector<std::string>& named_env_names();

struct RewardOutcome {
  double reward = 0.0;  // 0, 1, or 1/gamma
  bool conflict = false;
  int gamma = 1;  // players on the drawn arm
};

// Draws one step of rewards. A shared arm gets a single Bernoulli draw whose
// unit reward is split between the two players.
std::pair<RewardOutcome, RewardOutcome> draw_rewards(const Environment& env, std::size_t arm1,
                                                     std::size_t arm2, Rng& rng);

}  // namespace oamcmab
