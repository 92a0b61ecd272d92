#ifndef OLTR_UNBIASEDNESS_HPP_
#define OLTR_UNBIASEDNESS_HPP_

#include <string>
#include <vector>

#include "oltr/click_models.hpp"
#include "oltr/random.hpp"

namespace oltr {

// A tiny synthetic world, small enough to enumerate every displayed ranking
// and every click realization exactly: abstract document scores (no feature
// vectors needed, since the per-pair weight factors out of the gradient),
// a grade per document, and a cascade click model.
struct OracleInstance {
  std::vector<double> scores;
  std::vector<int> grades;
  int display_k = 0;
  ClickModelSpec click_model;
  int max_grade = 4;
};

// The expected update decomposed per document pair. alpha(k, l) is the net
// expected weight pushing document k's score above document l's;
// antisymmetric by construction.
class PairCoefficients {
 public:
  explicit PairCoefficients(std::size_t n_docs)
      : n_(n_docs), values_(n_docs * n_docs, 0.0) {}

  double alpha(std::size_t k, std::size_t l) const {
    return values_[k * n_ + l];
  }
  void accumulate(std::size_t preferred, std::size_t dominated, double w) {
    values_[preferred * n_ + dominated] += w;
    values_[dominated * n_ + preferred] -= w;
  }
  std::size_t n_docs() const { return n_; }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

// Sufficient conditions, within the cascade family, for the user-behavior
// assumptions behind the sign guarantees: click probability strictly
// increasing with grade, stop probability non-decreasing.
bool is_admissible_click_model(const ClickModelSpec& spec);

// Exact expected per-pair update weights, by enumerating every length-k
// ranking prefix and every cascade click outcome. Throws when the instance
// has more than 5 documents, and std::logic_error if the enumerated
// probabilities fail to sum to 1 within 1e-9.
PairCoefficients enumerate_expected_gradient(const OracleInstance& instance);

// Monte-Carlo estimate of the same quantity through the production sampling
// and preference-inference path. Converges to the enumerated values.
PairCoefficients empirical_expected_gradient(const OracleInstance& instance,
                                             long samples, RandomStream& rng);

struct SignCheckResult {
  bool pass = true;
  // Largest |alpha| observed over equal-grade pairs (should be ~0).
  double max_equal_grade_alpha = 0.0;
  int violations = 0;
  std::string detail;
};

// Checks the per-pair sign conditions: equal grades give alpha within
// equal_tolerance of zero, a strictly higher grade gives strictly positive
// alpha toward the better document.
SignCheckResult check_sign_conditions(const OracleInstance& instance,
                                      const PairCoefficients& coefficients,
                                      double equal_tolerance = 1e-12);

// Random test instance with an admissible cascade model, moderate scores,
// and grades drawn over the five-grade scale.
OracleInstance random_admissible_instance(int n_docs, int k,
                                          RandomStream& rng);

}  // namespace oltr

#endif  // OLTR_UNBIASEDNESS_HPP_
