#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <string>

#include "oamcmab/verify.hpp"

using namespace oamcmab;

namespace {

std::map<std::string, PropertyResult> by_name(const std::vector<PropertyResult>& results) {
  std::map<std::string, PropertyResult> m;
  for (const auto& r : results) m[r.name.substr(0, r.name.find(' '))] = r;
  return m;
}

// Joint law with the interference sign flipped: amplitudes add instead of
// cancelling, so the diagonal is populated.
JointOutcome bosonic_joint(const OamState& s1, const OamState& s2) {
  const std::size_t n = s1.amplitudes.size();
  JointOutcome j;
  j.n_arms = n;
  j.probs.assign(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto c = s1.coefficient(a) * s2.coefficient(b) + s1.coefficient(b) * s2.coefficient(a);
      j.probs[a * n + b] = 0.25 * std::norm(c);
    }
  j.p_sep = 0.0;
  for (double v : j.probs) j.p_sep += v;
  return j;
}

}  // namespace

TEST_CASE("reference forms") {
  const std::vector<double> p{0.5, 0.5};
  CHECK(reference::joint_cosine(p, p, {0.0, 3.141592653589793}, 0, 1) == doctest::Approx(0.25));
  CHECK(reference::fidelity_cosine(p, p, {0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(reference::squared_cosine_similarity(p, p) == doctest::Approx(1.0));
  CHECK(reference::squared_cosine_similarity({1.0, 0.0}, {0.0, 1.0}) == 0.0);
}

TEST_CASE("all properties hold for the library") {
  VerifyOptions opts;
  opts.instances = 1000;
  const auto results = run_property_checks(opts);
  CHECK(results.size() >= 9);
  for (const auto& r : results) {
    INFO(r.name << " worst " << r.worst << " tolerance " << r.tolerance);
    CHECK(r.passed);
    CHECK(r.worst <= r.tolerance);
  }
  const auto m = by_name(results);
  CHECK(m.count("conflict_freedom"));
  CHECK(m.count("fidelity_bound"));
  CHECK(m.count("objective_gradient_vs_central_difference"));
}

TEST_CASE("verification detects a wrong interference sign") {
  VerifyOptions opts;
  opts.instances = 200;
  opts.joint_override = bosonic_joint;
  const auto m = by_name(run_property_checks(opts));
  CHECK_FALSE(m.at("conflict_freedom").passed);
  CHECK_FALSE(m.at("joint_matches_cosine_form").passed);
}

TEST_CASE("results are reproducible for a seed") {
  VerifyOptions opts;
  opts.instances = 100;
  opts.seed = 5;
  const auto a = run_property_checks(opts);
  const auto b = run_property_checks(opts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].worst == b[i].worst);
}
