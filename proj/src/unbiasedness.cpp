#include "oltr/unbiasedness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "oltr/pdgd.hpp"
#include "oltr/plackett_luce.hpp"

namespace oltr {

namespace {

constexpr double kProbabilityTolerance = 1e-9;

// Symmetric log-sum-exp of two values: bitwise identical under argument
// swap, which lets the mirrored-ranking weights cancel exactly for
// equal-grade pairs.
double log_sum_exp2(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

void validate_instance(const OracleInstance& instance) {
  const std::size_t n = instance.scores.size();
  if (n == 0 || n > 5) {
    throw std::invalid_argument(
        "oracle instances must have between 1 and 5 documents (got " +
        std::to_string(n) + "); larger sets are not enumerable");
  }
  if (instance.grades.size() != n) {
    throw std::invalid_argument("instance grades not aligned with scores");
  }
  if (instance.display_k < 1 ||
      static_cast<std::size_t>(instance.display_k) > n) {
    throw std::invalid_argument("display_k must be in [1, n_docs]");
  }
}

// Encodes a ranking prefix as an integer key (documents are base-6 digits).
int prefix_key(const std::vector<int>& prefix) {
  int key = 1;
  for (int doc : prefix) key = key * 6 + doc;
  return key;
}

void enumerate_prefixes(std::size_t n, std::size_t k, std::vector<int>& prefix,
                        std::vector<bool>& used,
                        const std::function<void(const std::vector<int>&)>& fn) {
  if (prefix.size() == k) {
    fn(prefix);
    return;
  }
  for (std::size_t doc = 0; doc < n; ++doc) {
    if (used[doc]) continue;
    used[doc] = true;
    prefix.push_back(static_cast<int>(doc));
    enumerate_prefixes(n, k, prefix, used, fn);
    prefix.pop_back();
    used[doc] = false;
  }
}

}  // namespace

bool is_admissible_click_model(const ClickModelSpec& spec) {
  for (int i = 0; i < 5; ++i) {
    if (spec.click_prob[i] < 0.0 || spec.click_prob[i] > 1.0 ||
        spec.stop_prob[i] < 0.0 || spec.stop_prob[i] > 1.0) {
      return false;
    }
  }
  for (int i = 1; i < 5; ++i) {
    if (!(spec.click_prob[i] > spec.click_prob[i - 1])) return false;
    if (spec.stop_prob[i] < spec.stop_prob[i - 1]) return false;
  }
  return true;
}

PairCoefficients enumerate_expected_gradient(const OracleInstance& instance) {
  validate_instance(instance);
  const std::size_t n = instance.scores.size();
  const std::size_t k = static_cast<std::size_t>(instance.display_k);

  // Log-probability of every length-k prefix, computed once so that a
  // ranking and its pair-reversed twin always see identical values.
  std::unordered_map<int, double> log_prob;
  std::vector<std::vector<int>> prefixes;
  {
    std::vector<int> prefix;
    std::vector<bool> used(n, false);
    enumerate_prefixes(n, k, prefix, used,
                       [&](const std::vector<int>& p) { prefixes.push_back(p); });
  }
  RankedList ranking;
  ranking.scores = instance.scores;
  long double total_ranking_prob = 0.0L;
  for (const auto& prefix : prefixes) {
    ranking.doc_indices = prefix;
    const double lp = log_ranking_probability(instance.scores, ranking);
    log_prob[prefix_key(prefix)] = lp;
    total_ranking_prob += std::exp(lp);
  }
  if (std::abs(static_cast<double>(total_ranking_prob) - 1.0) >
      kProbabilityTolerance) {
    throw std::logic_error("enumerated ranking probabilities do not sum to 1");
  }

  // Long-double accumulation keeps the equal-grade cancellations well below
  // the 1e-12 acceptance tolerance.
  std::vector<long double> accumulator(n * n, 0.0L);

  std::vector<bool> clicked(k, false);
  ClickRealization realization;
  for (const auto& prefix : prefixes) {
    ranking.doc_indices = prefix;
    const double lp = log_prob[prefix_key(prefix)];

    long double click_prob_total = 0.0L;
    // Branch over the cascade's latent decisions: no click / click-and-stop
    // (rest of the list unseen) / click-and-continue.
    auto process_leaf = [&](double path_prob) {
      click_prob_total += path_prob;
      realization.clicked.assign(clicked.begin(), clicked.end());
      const std::vector<PreferencePair> pairs =
          infer_preferences(ranking, realization);
      for (const PreferencePair& pair : pairs) {
        const RankedList swapped =
            reverse_pair(ranking, pair.preferred, pair.dominated);
        const double lp_swapped = log_prob[prefix_key(swapped.doc_indices)];
        // P(R) * rho(R) in one symmetric expression.
        const double omega =
            std::exp(lp + lp_swapped - log_sum_exp2(lp, lp_swapped));
        const double scale = pair_gradient_scale(
            instance.scores[static_cast<std::size_t>(pair.preferred)],
            instance.scores[static_cast<std::size_t>(pair.dominated)]);
        const double weight = omega * path_prob * scale;
        accumulator[static_cast<std::size_t>(pair.preferred) * n +
                    static_cast<std::size_t>(pair.dominated)] += weight;
        accumulator[static_cast<std::size_t>(pair.dominated) * n +
                    static_cast<std::size_t>(pair.preferred)] -= weight;
      }
    };

    std::function<void(std::size_t, double)> branch = [&](std::size_t pos,
                                                          double path_prob) {
      if (path_prob == 0.0) return;
      if (pos == k) {
        process_leaf(path_prob);
        return;
      }
      const int doc = ranking.doc_indices[pos];
      const int column = grade_to_column(
          instance.grades[static_cast<std::size_t>(doc)], instance.max_grade);
      const double p_click =
          instance.click_model.click_prob[static_cast<std::size_t>(column)];
      const double p_stop =
          instance.click_model.stop_prob[static_cast<std::size_t>(column)];

      clicked[pos] = false;
      branch(pos + 1, path_prob * (1.0 - p_click));

      clicked[pos] = true;
      if (p_click * p_stop > 0.0) {
        for (std::size_t rest = pos + 1; rest < k; ++rest) {
          clicked[rest] = false;
        }
        process_leaf(path_prob * p_click * p_stop);
      }
      branch(pos + 1, path_prob * p_click * (1.0 - p_stop));
      clicked[pos] = false;
    };
    branch(0, 1.0);

    if (std::abs(static_cast<double>(click_prob_total) - 1.0) >
        kProbabilityTolerance) {
      throw std::logic_error(
          "enumerated click probabilities do not sum to 1 for a ranking");
    }
  }

  PairCoefficients coefficients(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const double value = static_cast<double>(accumulator[a * n + b]);
      if (a < b) coefficients.accumulate(a, b, value);
    }
  }
  return coefficients;
}

PairCoefficients empirical_expected_gradient(const OracleInstance& instance,
                                             long samples, RandomStream& rng) {
  validate_instance(instance);
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const std::size_t n = instance.scores.size();

  std::vector<long double> accumulator(n * n, 0.0L);
  std::vector<int> grades(static_cast<std::size_t>(instance.display_k));
  for (long s = 0; s < samples; ++s) {
    const RankedList ranking =
        sample_ranking(instance.scores, instance.display_k, rng);
    for (std::size_t pos = 0; pos < ranking.size(); ++pos) {
      grades[pos] =
          instance.grades[static_cast<std::size_t>(ranking.doc_indices[pos])];
    }
    const ClickRealization clicks = simulate_clicks(
        instance.click_model, ranking, grades, instance.max_grade, rng);
    for (const PreferencePair& pair : infer_preferences(ranking, clicks)) {
      const double weight =
          pair_weight_rho(instance.scores, ranking, pair) *
          pair_gradient_scale(
              instance.scores[static_cast<std::size_t>(pair.preferred)],
              instance.scores[static_cast<std::size_t>(pair.dominated)]);
      accumulator[static_cast<std::size_t>(pair.preferred) * n +
                  static_cast<std::size_t>(pair.dominated)] += weight;
      accumulator[static_cast<std::size_t>(pair.dominated) * n +
                  static_cast<std::size_t>(pair.preferred)] -= weight;
    }
  }

  PairCoefficients coefficients(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      coefficients.accumulate(
          a, b,
          static_cast<double>(accumulator[a * n + b] /
                              static_cast<long double>(samples)));
    }
  }
  return coefficients;
}

SignCheckResult check_sign_conditions(const OracleInstance& instance,
                                      const PairCoefficients& coefficients,
                                      double equal_tolerance) {
  SignCheckResult result;
  std::ostringstream detail;
  const std::size_t n = instance.scores.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double alpha = coefficients.alpha(a, b);
      const int grade_a = instance.grades[a];
      const int grade_b = instance.grades[b];
      bool ok = true;
      if (grade_a == grade_b) {
        result.max_equal_grade_alpha =
            std::max(result.max_equal_grade_alpha, std::abs(alpha));
        ok = std::abs(alpha) <= equal_tolerance;
      } else if (grade_a > grade_b) {
        ok = alpha > 0.0;
      } else {
        ok = alpha < 0.0;
      }
      if (!ok) {
        ++result.violations;
        result.pass = false;
        detail << "pair (" << a << "," << b << ") grades (" << grade_a << ","
               << grade_b << ") alpha " << alpha << "; ";
      }
    }
  }
  result.detail = detail.str();
  return result;
}

OracleInstance random_admissible_instance(int n_docs, int k,
                                          RandomStream& rng) {
  if (n_docs < 2 || n_docs > 5 || k < 1 || k > n_docs) {
    throw std::invalid_argument("instance size out of range");
  }
  OracleInstance instance;
  instance.display_k = k;
  instance.max_grade = 4;
  instance.scores.resize(static_cast<std::size_t>(n_docs));
  instance.grades.resize(static_cast<std::size_t>(n_docs));
  for (int i = 0; i < n_docs; ++i) {
    instance.scores[static_cast<std::size_t>(i)] =
        3.0 * rng.uniform01() - 1.5;
    instance.grades[static_cast<std::size_t>(i)] =
        static_cast<int>(rng.uniform_below(5));
  }

  // Strictly increasing click curve between random endpoints.
  ClickModelSpec model;
  model.name = "random-admissible";
  const double click_lo = 0.2 * rng.uniform01();
  const double click_hi = click_lo + 0.3 + (1.0 - click_lo - 0.3) * rng.uniform01();
  double increments[4];
  double increment_total = 0.0;
  for (double& inc : increments) {
    inc = 0.05 + rng.uniform01();
    increment_total += inc;
  }
  model.click_prob[0] = click_lo;
  double cumulative = 0.0;
  for (int i = 1; i < 5; ++i) {
    cumulative += increments[i - 1] / increment_total;
    model.click_prob[static_cast<std::size_t>(i)] =
        click_lo + (click_hi - click_lo) * cumulative;
  }
  // Non-decreasing stop curve.
  model.stop_prob[0] = 0.3 * rng.uniform01();
  for (int i = 1; i < 5; ++i) {
    model.stop_prob[static_cast<std::size_t>(i)] =
        std::min(0.95, model.stop_prob[static_cast<std::size_t>(i - 1)] +
                           0.15 * rng.uniform01());
  }
  instance.click_model = model;
  return instance;
}

}  // namespace oltr
