#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "oamcmab/error.hpp"
#include "oamcmab/quantum.hpp"
#include "oracles.hpp"

using namespace oamcmab;
constexpr double kPi = std::numbers::pi;

TEST_CASE("make_state takes square roots and validates input") {
  const auto s = make_state(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 0.0});
  CHECK(s.amplitudes[0] == 1.0);
  CHECK(s.amplitudes[1] == 0.0);

  const auto u = make_state(std::vector<double>{0.5, 0.5}, std::vector<double>{0.0, kPi});
  CHECK(u.amplitudes[0] == doctest::Approx(std::sqrt(0.5)));
  CHECK(u.amplitudes[1] == doctest::Approx(std::sqrt(0.5)));

  const auto t = make_state(std::vector<double>{0.2, 0.3, 0.5}, std::vector<double>{0, 0, 0});
  double norm = 0.0;
  for (double a : t.amplitudes) norm += a * a;
  CHECK(std::abs(norm - 1.0) < 1e-12);
  CHECK(t.amplitudes[2] == doctest::Approx(std::sqrt(0.5)));

  CHECK_THROWS_AS(make_state(std::vector<double>{1.2, -0.2}, std::vector<double>{0, 0}), Error);
  CHECK_THROWS_AS(make_state(std::vector<double>{0.5, 0.4}, std::vector<double>{0, 0}), Error);
  CHECK_THROWS_AS(make_state(std::vector<double>{0.5, 0.5}, std::vector<double>{0}), Error);
}

TEST_CASE("identical states always bunch") {
  const std::vector<double> p{0.1, 0.6, 0.3};
  const std::vector<double> th{0.4, 1.0, -2.0};
  const auto s = make_state(p, th);
  const auto j = joint_distribution(s, s);
  for (double v : j.probs) CHECK(std::abs(v) < 1e-15);
  CHECK(j.p_sep < 1e-15);
  CHECK(separation_probability(s, s) == doctest::Approx(0.0));
  CHECK(fidelity(s, s) == doctest::Approx(1.0));
  CHECK_THROWS_AS(output_probabilities(j), Error);
  Rng rng(1);
  try {
    sample_selection(j, rng);
    FAIL("expected degenerate-state error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Degenerate);
  }
}

TEST_CASE("two arms in antiphase separate half the time") {
  // same desired probabilities, omega = theta2 - theta1 = (0, pi)
  const std::vector<double> p{0.5, 0.5};
  const auto s1 = make_state(p, std::vector<double>{0.0, 0.0});
  const auto s2 = make_state(p, std::vector<double>{0.0, kPi});
  const auto j = joint_distribution(s1, s2);
  CHECK(j.at(0, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(j.at(1, 0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(j.at(0, 0) == 0.0);
  CHECK(j.p_sep == doctest::Approx(0.5).epsilon(1e-14));
  const auto q = output_probabilities(j);
  CHECK(q[0] == doctest::Approx(0.5));
  CHECK(q[1] == doctest::Approx(0.5));
}

TEST_CASE("disjoint supports never bunch") {
  const auto s1 = make_state(std::vector<double>{1.0, 0.0}, std::vector<double>{0, 0});
  const auto s2 = make_state(std::vector<double>{0.0, 1.0}, std::vector<double>{0, 0});
  CHECK(fidelity(s1, s2) == 0.0);
  CHECK(separation_probability(s1, s2) == 0.5);
  CHECK(joint_distribution(s1, s2).p_sep == doctest::Approx(0.5));
}

TEST_CASE("third roots of unity give zero fidelity") {
  const std::vector<double> p(3, 1.0 / 3.0);
  const auto s1 = make_state(p, std::vector<double>{0, 0, 0});
  const auto s2 = make_state(p, std::vector<double>{0, 2 * kPi / 3, 4 * kPi / 3});
  CHECK(std::abs(fidelity(s1, s2)) < 1e-15);
  CHECK(std::abs(oracle::fidelity_cosine(p, p, {0, 2 * kPi / 3, 4 * kPi / 3})) < 1e-15);
}

TEST_CASE("dimension mismatch is a domain error") {
  const auto a = make_state(std::vector<double>{0.5, 0.5}, std::vector<double>{0, 0});
  const auto b = make_state(std::vector<double>{0.2, 0.3, 0.5}, std::vector<double>{0, 0, 0});
  CHECK_THROWS_AS(joint_distribution(a, b), Error);
  CHECK_THROWS_AS(fidelity(a, b), Error);
}

TEST_CASE("randomized consistency against cosine forms") {
  std::mt19937_64 gen(2718);
  double worst_diag = 0.0, worst_psep = 0.0, worst_q = 0.0, worst_sym = 0.0, worst_entry = 0.0;
  double worst_bound = -1.0, worst_fid = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + gen() % 9;
    const auto p1 = oracle::random_simplex(gen, n);
    const auto p2 = (i % 3 == 0) ? p1 : oracle::random_simplex(gen, n);
    const auto th1 = oracle::random_phases(gen, n);
    const auto th2 = oracle::random_phases(gen, n);
    std::vector<double> omega(n);
    for (std::size_t k = 0; k < n; ++k) omega[k] = th2[k] - th1[k];

    const auto s1 = make_state(p1, th1);
    const auto s2 = make_state(p2, th2);
    const auto j = joint_distribution(s1, s2);

    double sum = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      worst_diag = std::max(worst_diag, j.at(a, a));
      for (std::size_t b = 0; b < n; ++b) {
        sum += j.at(a, b);
        CHECK(j.at(a, b) >= 0.0);
        worst_entry = std::max(worst_entry, std::abs(j.at(a, b) - oracle::joint_cosine(p1, p2, omega, a, b)));
      }
    }
    worst_psep = std::max(worst_psep, std::abs(sum - separation_probability(s1, s2)));
    worst_psep = std::max(worst_psep, std::abs(j.p_sep - sum));
    worst_fid = std::max(worst_fid, std::abs(fidelity(s1, s2) - oracle::fidelity_cosine(p1, p2, omega)));

    double dot = 0.0;
    for (std::size_t k = 0; k < n; ++k) dot += std::sqrt(p1[k] * p2[k]);
    worst_bound = std::max(worst_bound, fidelity(s1, s2) - dot * dot);

    if (j.p_sep > 1e-6) {
      const auto q1 = output_probabilities(j);
      const auto q2 = output_probabilities_player2(j);
      const auto closed = oracle::output_closed_form(p1, p2, omega, j.p_sep);
      double qsum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        worst_q = std::max(worst_q, std::abs(q1[k] - closed[k]));
        worst_sym = std::max(worst_sym, std::abs(q1[k] - q2[k]));
        qsum += q1[k];
      }
      CHECK(std::abs(qsum - 1.0) < 1e-12);
    }

    // swapping roles transposes the matrix
    const auto swapped = joint_distribution(s2, s1);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) CHECK(std::abs(swapped.at(a, b) - j.at(b, a)) < 1e-15);

    // global phase shift of one player changes nothing
    auto th1_shift = th1;
    for (auto& t : th1_shift) t += 0.77;
    const auto shifted = joint_distribution(make_state(p1, th1_shift), s2);
    for (std::size_t k = 0; k < n * n; ++k) CHECK(std::abs(shifted.probs[k] - j.probs[k]) < 1e-14);
  }
  CHECK(worst_diag <= 1e-12);
  CHECK(worst_entry <= 1e-12);
  CHECK(worst_psep <= 1e-10);
  CHECK(worst_fid <= 1e-12);
  CHECK(worst_q <= 1e-10);
  CHECK(worst_sym <= 1e-12);
  CHECK(worst_bound <= 1e-12);
}

TEST_CASE("sampling follows the conditional distribution and never conflicts") {
  const std::vector<double> p{0.5, 0.5};
  const auto j = joint_distribution(make_state(p, std::vector<double>{0.0, 0.0}),
                                    make_state(p, std::vector<double>{0.0, kPi}));
  Rng rng(31);
  const int draws = 100000;
  int first = 0;
  double attempts = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto sel = sample_selection(j, rng);
    REQUIRE(sel.arm1 != sel.arm2);
    if (sel.arm1 == 0) ++first;
    attempts += static_cast<double>(sel.attempts);
  }
  // exact conditional probability of (1, 2) is 1/2
  CHECK(std::abs(first / double(draws) - 0.5) < 3.0 * std::sqrt(0.25 / draws));
  // geometric mean number of attempts is 1 / p_sep = 2, variance (1 - p) / p^2 = 2
  CHECK(std::abs(attempts / draws - 2.0) < 4.0 * std::sqrt(2.0 / draws));
}

TEST_CASE("single-entry joint is sampled deterministically") {
  JointOutcome j;
  j.n_arms = 3;
  j.probs.assign(9, 0.0);
  j.probs[0 * 3 + 1] = 0.2;
  j.p_sep = 0.2;
  Rng rng(3);
  double attempts = 0.0;
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) {
    const auto sel = sample_selection(j, rng);
    CHECK(sel.arm1 == 0);
    CHECK(sel.arm2 == 1);
    CHECK(sel.attempts >= 1);
    attempts += static_cast<double>(sel.attempts);
  }
  // mean 1/p = 5, variance (1-p)/p^2 = 20
  CHECK(std::abs(attempts / draws - 5.0) < 4.0 * std::sqrt(20.0 / draws));
}

TEST_CASE("sampled frequencies of a random joint match its probabilities") {
  std::mt19937_64 gen(8);
  const std::size_t n = 4;
  const auto j = joint_distribution(
      make_state(oracle::random_simplex(gen, n), oracle::random_phases(gen, n)),
      make_state(oracle::random_simplex(gen, n), oracle::random_phases(gen, n)));
  Rng rng(19);
  const int draws = 200000;
  std::map<std::pair<std::size_t, std::size_t>, int> counts;
  for (int i = 0; i < draws; ++i) {
    const auto sel = sample_selection(j, rng);
    ++counts[{sel.arm1, sel.arm2}];
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double p = j.at(a, b) / j.p_sep;
      const double f = counts[{a, b}] / double(draws);
      CHECK(std::abs(f - p) <= 4.0 * std::sqrt(p * (1 - p) / draws) + 1e-12);
    }
}
