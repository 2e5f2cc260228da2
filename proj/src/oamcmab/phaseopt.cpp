#include "oamcmab/phaseopt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "oamcmab/error.hpp"

namespace oamcmab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Steepest-descent iterations before switching to Newton steps on the exact
// Hessian.
constexpr int kNewtonAfter = 50;

double wrap_phase(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::complex<double> weighted_phasor_sum(std::span<const double> p, std::span<const double> omega) {
  std::complex<double> z{0.0, 0.0};
  for (std::size_t n = 0; n < p.size(); ++n) z += std::polar(p[n], omega[n]);
  return z;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void check_sizes(std::span<const double> p_hat, std::span<const double> omega) {
  if (p_hat.size() != omega.size())
    fail(ErrorKind::Domain, "phase vector length does not match the number of arms");
}

}  // namespace

double objective(std::span<const double> p_hat, std::span<const double> omega) {
  check_sizes(p_hat, omega);
  return std::norm(weighted_phasor_sum(p_hat, omega));
}

double objective_with_gradient(std::span<const double> p_hat, std::span<const double> omega,
                               std::span<double> grad) {
  check_sizes(p_hat, omega);
  const std::complex<double> z = weighted_phasor_sum(p_hat, omega);
  for (std::size_t n = 0; n < p_hat.size(); ++n)
    grad[n] = 2.0 * p_hat[n] * (z * std::polar(1.0, -omega[n])).imag();
  return std::norm(z);
}

std::vector<double> spiral_initialization(std::size_t n_arms) {
  std::vector<double> omega(n_arms);
  for (std::size_t n = 0; n < n_arms; ++n)
    omega[n] = kTwoPi * static_cast<double>(n) / static_cast<double>(n_arms);
  return omega;
}

PhaseSolution optimize(std::span<const double> p_hat, const OptimizerSettings& settings,
                       std::span<const double> start) {
  const std::size_t n = p_hat.size();
  if (n == 0) fail(ErrorKind::Domain, "optimize: empty probability vector");

  std::vector<double> omega = start.empty() ? spiral_initialization(n)
                                            : std::vector<double>(start.begin(), start.end());
  check_sizes(p_hat, omega);

  // Free variables are omega[1..n-1]; the first phase is the gauge.
  const std::size_t dim = n - 1;
  std::vector<double> grad_full(n), grad(dim), grad_new(dim), dir(dim), trial(n);
  std::vector<double> hess(dim * dim), chol(dim * dim);

  auto eval = [&](std::span<const double> w, std::span<double> g) {
    const double f = objective_with_gradient(p_hat, w, grad_full);
    if (!std::isfinite(f)) fail(ErrorKind::Numeric, "optimize: non-finite objective");
    std::copy(grad_full.begin() + 1, grad_full.end(), g.begin());
    return f;
  };

  // d2L/dw_a dw_b = 2 p_a p_b cos(w_a - w_b) off the diagonal,
  // -2 p_a (Re(e^{-i w_a} z) - p_a) on it.
  auto hessian = [&] {
    const std::complex<double> z = weighted_phasor_sum(p_hat, omega);
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t a = i + 1;
      for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t b = j + 1;
        hess[i * dim + j] =
            a == b ? -2.0 * p_hat[a] * ((z * std::polar(1.0, -omega[a])).real() - p_hat[a])
                   : 2.0 * p_hat[a] * p_hat[b] * std::cos(omega[a] - omega[b]);
      }
    }
  };

  // Cholesky of hess + shift * I into chol; false if not positive definite.
  auto factor = [&](double shift) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double v = hess[i * dim + j] + (i == j ? shift : 0.0);
        for (std::size_t k = 0; k < j; ++k) v -= chol[i * dim + k] * chol[j * dim + k];
        if (i == j) {
          if (!(v > 0.0)) return false;
          chol[i * dim + i] = std::sqrt(v);
        } else {
          chol[i * dim + j] = v / chol[j * dim + j];
        }
      }
    }
    return true;
  };

  // Newton direction on the shifted Hessian; the shift grows until the
  // factorization succeeds. Returns the directional derivative, or 0 on failure.
  auto newton_direction = [&] {
    hessian();
    double scale = 0.0;
    for (std::size_t i = 0; i < dim; ++i) scale = std::max(scale, std::abs(hess[i * dim + i]));
    double shift = 0.0;
    bool factored = factor(shift);
    for (int k = 0; !factored && k < 60; ++k) {
      shift = shift == 0.0 ? std::max(1e-12, 1e-8 * scale) : 4.0 * shift;
      factored = factor(shift);
    }
    if (!factored) return 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double v = -grad[i];
      for (std::size_t k = 0; k < i; ++k) v -= chol[i * dim + k] * dir[k];
      dir[i] = v / chol[i * dim + i];
    }
    for (std::size_t i = dim; i-- > 0;) {
      double v = dir[i];
      for (std::size_t k = i + 1; k < dim; ++k) v -= chol[k * dim + i] * dir[k];
      dir[i] = v / chol[i * dim + i];
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < dim; ++i) slope += dir[i] * grad[i];
    return slope;
  };

  PhaseSolution sol;
  double f = eval(omega, grad);

  auto finish = [&](bool converged) {
    for (double& w : omega) w = wrap_phase(w);
    sol.omega_hat = std::move(omega);
    // recompute after wrapping so the reported value matches omega_hat exactly
    sol.objective_value = objective(p_hat, sol.omega_hat);
    sol.converged = converged;
    return sol;
  };

  if (dim == 0 || inf_norm(grad) < settings.tol_grad) return finish(true);

  for (int iter = 1; iter <= settings.max_iter; ++iter) {
    sol.iterations = iter;

    double slope = iter > kNewtonAfter ? newton_direction() : 0.0;
    if (!(slope < 0.0)) {
      for (std::size_t i = 0; i < dim; ++i) {
        dir[i] = -grad[i];
        slope -= grad[i] * grad[i];
      }
    }

    // Armijo backtracking
    constexpr double kArmijo = 1e-4;
    double step = 1.0;
    double f_new = f;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      trial[0] = omega[0];
      for (std::size_t i = 0; i < dim; ++i) trial[i + 1] = omega[i + 1] + step * dir[i];
      f_new = eval(trial, grad_new);
      if (f_new <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return finish(inf_norm(grad) < std::sqrt(settings.tol_grad));

    const double f_change = std::abs(f - f_new);
    omega.swap(trial);
    grad.swap(grad_new);
    f = f_new;

    if (inf_norm(grad) < settings.tol_grad || f_change < settings.tol_f) return finish(true);
  }
  return finish(false);
}

std::vector<double> assign_phases(int player, std::span<const double> omega_hat) {
  if (player != 1 && player != 2) fail(ErrorKind::Domain, "player index must be 1 or 2");
  const double sign = player == 1 ? -1.0 : 1.0;
  std::vector<double> theta(omega_hat.size());
  for (std::size_t n = 0; n < theta.size(); ++n) theta[n] = sign * 0.5 * omega_hat[n];
  return theta;
}

}  // namespace oamcmab
