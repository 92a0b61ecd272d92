#ifndef OLTR_METRICS_HPP_
#define OLTR_METRICS_HPP_

#include <span>
#include <vector>

#include "oltr/dataset.hpp"
#include "oltr/scorer.hpp"

namespace oltr {

enum class GainKind { kExponential, kLinear };

struct MetricsConfig {
  int cutoff = 10;
  double discount_gamma = 0.9995;
  GainKind gain = GainKind::kExponential;
  // When true, queries without any relevant document are left out of the
  // offline mean instead of contributing zero.
  bool skip_no_relevant = false;
};

// NDCG of a displayed prefix. `ranking_grades` are the grades of the
// displayed documents in display order; `all_grades` covers the query's
// full candidate set and defines the ideal DCG. A query with no relevant
// documents scores 0.
double ndcg_at_k(std::span<const int> ranking_grades,
                 std::span<const int> all_grades, int k,
                 GainKind gain = GainKind::kExponential);

// The deterministic ranking a model produces for evaluation: indices sorted
// by descending score, ties broken by ascending document index.
std::vector<int> deterministic_ranking(std::span<const double> scores);

// Mean NDCG@cutoff of the deterministic ranking over held-out queries.
double offline_performance(const ScorerSpec& spec,
                           std::span<const double> params,
                           const std::vector<Query>& test_queries,
                           const MetricsConfig& config);

// Discounted cumulative quality of the lists actually shown:
// sum_t ndcg_t * gamma^(t-1).
double online_performance(std::span<const double> impression_ndcgs,
                          double gamma);

}  // namespace oltr

#endif  // OLTR_METRICS_HPP_
