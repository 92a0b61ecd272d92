#include "oltr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oltr {

namespace {

double gain_of(int grade, GainKind gain) {
  if (gain == GainKind::kLinear) return static_cast<double>(grade);
  return std::exp2(static_cast<double>(grade)) - 1.0;
}

double dcg(std::span<const int> grades, int k, GainKind gain) {
  const std::size_t n = std::min(grades.size(), static_cast<std::size_t>(k));
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += gain_of(grades[i], gain) / std::log2(static_cast<double>(i) + 2.0);
  }
  return sum;
}

}  // namespace

double ndcg_at_k(std::span<const int> ranking_grades,
                 std::span<const int> all_grades, int k, GainKind gain) {
  if (k < 1) throw std::invalid_argument("ndcg cutoff must be >= 1");
  std::vector<int> ideal(all_grades.begin(), all_grades.end());
  std::sort(ideal.begin(), ideal.end(), std::greater<int>());
  const double ideal_dcg = dcg(ideal, k, gain);
  if (ideal_dcg == 0.0) return 0.0;
  return dcg(ranking_grades, k, gain) / ideal_dcg;
}

std::vector<int> deterministic_ranking(std::span<const double> scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double sa = scores[static_cast<std::size_t>(a)];
    const double sb = scores[static_cast<std::size_t>(b)];
    if (sa != sb) return sa > sb;
    return a < b;
  });
  return order;
}

double offline_performance(const ScorerSpec& spec,
                           std::span<const double> params,
                           const std::vector<Query>& test_queries,
                           const MetricsConfig& config) {
  if (test_queries.empty()) {
    throw std::invalid_argument("offline_performance over an empty test set");
  }
  double sum = 0.0;
  std::size_t counted = 0;
  std::vector<double> scores;
  std::vector<int> displayed_grades;
  std::vector<int> all_grades;
  for (const Query& query : test_queries) {
    scores.resize(query.documents.size());
    all_grades.resize(query.documents.size());
    for (std::size_t i = 0; i < query.documents.size(); ++i) {
      scores[i] = score(spec, params, query.documents[i].features);
      all_grades[i] = query.documents[i].relevance;
    }
    if (config.skip_no_relevant &&
        std::all_of(all_grades.begin(), all_grades.end(),
                    [](int g) { return g == 0; })) {
      continue;
    }
    const std::vector<int> order = deterministic_ranking(scores);
    displayed_grades.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      displayed_grades[i] = all_grades[static_cast<std::size_t>(order[i])];
    }
    sum += ndcg_at_k(displayed_grades, all_grades, config.cutoff, config.gain);
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

double online_performance(std::span<const double> impression_ndcgs,
                          double gamma) {
  if (gamma <= 0.0 || gamma >= 1.0) {
    throw std::invalid_argument("discount factor must be in (0, 1)");
  }
  double sum = 0.0;
  double weight = 1.0;
  for (double ndcg : impression_ndcgs) {
    sum += ndcg * weight;
    weight *= gamma;
  }
  return sum;
}

}  // namespace oltr
