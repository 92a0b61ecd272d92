#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oltr/unbiasedness.hpp"

using namespace oltr;

namespace {

OracleInstance two_doc_instance(std::vector<double> scores,
                                std::vector<int> grades,
                                const ClickModelSpec& model) {
  OracleInstance instance;
  instance.scores = std::move(scores);
  instance.grades = std::move(grades);
  instance.display_k = 2;
  instance.click_model = model;
  instance.max_grade = 4;
  return instance;
}

}  // namespace

TEST_CASE("the builtin cascade models are admissible") {
  CHECK(is_admissible_click_model(builtin_click_model("perfect")));
  CHECK(is_admissible_click_model(builtin_click_model("navigational")));
  CHECK(is_admissible_click_model(builtin_click_model("informational")));
}

TEST_CASE("non-monotone tables are rejected as inadmissible") {
  ClickModelSpec flat = builtin_click_model("perfect");
  flat.click_prob = {0.2, 0.2, 0.4, 0.8, 1.0};  // not strictly increasing
  CHECK_FALSE(is_admissible_click_model(flat));

  ClickModelSpec dropping = builtin_click_model("navigational");
  dropping.stop_prob = {0.5, 0.3, 0.5, 0.7, 0.9};  // decreasing step
  CHECK_FALSE(is_admissible_click_model(dropping));
}

TEST_CASE("equal documents produce an exactly zero pair weight") {
  const PairCoefficients coefficients = enumerate_expected_gradient(
      two_doc_instance({0.3, 0.3}, {2, 2}, builtin_click_model("perfect")));
  CHECK(std::abs(coefficients.alpha(0, 1)) <= 1e-12);
}

TEST_CASE("equal documents with unequal scores still cancel exactly") {
  RandomStream rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const double a = 4.0 * rng.uniform01() - 2.0;
    const double b = 4.0 * rng.uniform01() - 2.0;
    const int grade = static_cast<int>(rng.uniform_below(5));
    for (const char* name : {"perfect", "navigational", "informational"}) {
      const PairCoefficients coefficients = enumerate_expected_gradient(
          two_doc_instance({a, b}, {grade, grade}, builtin_click_model(name)));
      CHECK(std::abs(coefficients.alpha(0, 1)) <= 1e-12);
    }
  }
}

TEST_CASE("a strictly better document always wins the expected update") {
  RandomStream rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const double a = 4.0 * rng.uniform01() - 2.0;
    const double b = 4.0 * rng.uniform01() - 2.0;
    for (const char* name : {"perfect", "navigational", "informational"}) {
      const PairCoefficients coefficients = enumerate_expected_gradient(
          two_doc_instance({a, b}, {1, 0}, builtin_click_model(name)));
      CHECK(coefficients.alpha(0, 1) > 0.0);
      CHECK(coefficients.alpha(1, 0) == -coefficients.alpha(0, 1));
    }
  }
}

TEST_CASE("the three-document grade ladder orients every pair") {
  RandomStream rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    OracleInstance instance;
    instance.scores = {3.0 * rng.uniform01() - 1.5,
                       3.0 * rng.uniform01() - 1.5,
                       3.0 * rng.uniform01() - 1.5};
    instance.grades = {2, 1, 0};
    instance.display_k = 3;
    instance.click_model = builtin_click_model("perfect");
    instance.max_grade = 2;
    const PairCoefficients coefficients =
        enumerate_expected_gradient(instance);
    CHECK(coefficients.alpha(0, 1) > 0.0);
    CHECK(coefficients.alpha(0, 2) > 0.0);
    CHECK(coefficients.alpha(1, 2) > 0.0);
    const SignCheckResult check =
        check_sign_conditions(instance, coefficients);
    CHECK(check.pass);
    CHECK(check.violations == 0);
  }
}

TEST_CASE("sign conditions hold on random admissible instances") {
  RandomStream rng(2718);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(3));
    const int k = 2 + static_cast<int>(rng.uniform_below(n - 1));
    const OracleInstance instance = random_admissible_instance(n, k, rng);
    REQUIRE(is_admissible_click_model(instance.click_model));
    const SignCheckResult check = check_sign_conditions(
        instance, enumerate_expected_gradient(instance));
    INFO("violations: ", check.detail);
    CHECK(check.pass);
  }
}

TEST_CASE("truncated display prefixes keep the guarantees") {
  // k < n exercises the selection-bias part: undisplayed documents simply
  // contribute nothing.
  OracleInstance instance;
  instance.scores = {0.8, -0.3, 0.1, 0.5};
  instance.grades = {3, 0, 3, 1};
  instance.display_k = 2;
  instance.click_model = builtin_click_model("informational");
  const SignCheckResult check = check_sign_conditions(
      instance, enumerate_expected_gradient(instance));
  CHECK(check.pass);
}

TEST_CASE("oversized instances are refused with the size bound") {
  OracleInstance instance;
  instance.scores.assign(6, 0.0);
  instance.grades.assign(6, 0);
  instance.display_k = 3;
  instance.click_model = builtin_click_model("perfect");
  CHECK_THROWS_WITH_AS(enumerate_expected_gradient(instance),
                       doctest::Contains("5"), std::invalid_argument);
}

TEST_CASE("monte-carlo agrees with enumeration and shrinks like root n") {
  OracleInstance instance;
  instance.scores = {0.6, -0.2, 0.3};
  instance.grades = {2, 1, 0};
  instance.display_k = 3;
  instance.click_model = builtin_click_model("informational");
  instance.max_grade = 2;
  const PairCoefficients exact = enumerate_expected_gradient(instance);

  double previous_error = 1e300;
  for (long samples : {10000L, 100000L, 1000000L}) {
    RandomStream rng(31);
    const PairCoefficients estimate =
        empirical_expected_gradient(instance, samples, rng);
    double max_diff = 0.0;
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = a + 1; b < 3; ++b) {
        max_diff = std::max(max_diff,
                            std::abs(estimate.alpha(a, b) - exact.alpha(a, b)));
      }
    }
    // Error envelope ~ 1/sqrt(N).
    CHECK(max_diff <= 1.0 / std::sqrt(static_cast<double>(samples)));
    CHECK(max_diff <= previous_error + 1e-4);
    previous_error = max_diff;
    if (samples == 1000000L) CHECK(max_diff <= 0.005);
  }
}

TEST_CASE("monte-carlo is unbiased for an indifferent pair") {
  OracleInstance instance =
      two_doc_instance({0.4, -0.1}, {3, 3}, builtin_click_model("navigational"));
  RandomStream rng(99);
  const PairCoefficients estimate =
      empirical_expected_gradient(instance, 1000000, rng);
  // Within a few standard errors of zero.
  CHECK(std::abs(estimate.alpha(0, 1)) <= 1e-3);
}

TEST_CASE("monte-carlo estimates are reproducible per seed") {
  const OracleInstance instance =
      two_doc_instance({0.2, 0.5}, {4, 1}, builtin_click_model("perfect"));
  RandomStream rng_a(7);
  RandomStream rng_b(7);
  const PairCoefficients first =
      empirical_expected_gradient(instance, 50000, rng_a);
  const PairCoefficients second =
      empirical_expected_gradient(instance, 50000, rng_b);
  CHECK(first.alpha(0, 1) == second.alpha(0, 1));
}
