#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oamcmab {

struct OptimizerSettings {
  double tol_grad = 1e-8;  // stop when the gradient infinity-norm falls below this
  double tol_f = 1e-12;    // or when an accepted step changes the objective less than this
  int max_iter = 500;
  bool warm_start = false;  // start from the previous step's solution instead of the spiral
};

struct PhaseSolution {
  std::vector<double> omega_hat;  // in [0, 2pi)
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Surrogate fidelity a player minimizes when assuming the opponent encodes the
// same desired probabilities: |sum_n p_n e^{i omega_n}|^2.
double objective(std::span<const double> p_hat, std::span<const double> omega);

// Same value; writes d/d omega_n = 2 p_n Im(e^{-i omega_n} sum_k p_k e^{i omega_k}).
double objective_with_gradient(std::span<const double> p_hat, std::span<const double> omega,
                               std::span<double> grad);

// omega_n = 2 (n - 1) pi / N
std::vector<double> spiral_initialization(std::size_t n_arms);

// Steepest descent with Armijo backtracking on the phase differences,
// finishing with shifted Newton steps on the exact Hessian if it has not
// converged after a fixed number of iterations. omega_1 is held at its starting value since the objective only
// depends on differences. With an empty `start` the spiral initialization is
// used.
PhaseSolution optimize(std::span<const double> p_hat, const OptimizerSettings& settings,
                       std::span<const double> start = {});

// theta_{m,n} = (-1)^m omega_hat_n / 2 for player m in {1, 2}.
std::vector<double> assign_phases(int player, std::span<const double> omega_hat);

}  // namespace oamcmab
