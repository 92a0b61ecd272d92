#include "oltr/pdgd.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace oltr {

namespace {

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

std::vector<PreferencePair> infer_preferences(const RankedList& ranking,
                                              const ClickRealization& clicks) {
  if (clicks.clicked.size() != ranking.size()) {
    throw std::invalid_argument("clicks not aligned with displayed ranking");
  }
  std::vector<PreferencePair> pairs;
  std::size_t last_click = 0;
  bool any_click = false;
  for (std::size_t pos = 0; pos < clicks.clicked.size(); ++pos) {
    if (clicks.clicked[pos]) {
      last_click = pos;
      any_click = true;
    }
  }
  if (!any_click) return pairs;

  // Everything up to the first unclicked document after the last click is
  // treated as observed.
  const std::size_t observed = std::min(last_click + 2, ranking.size());
  for (std::size_t i = 0; i < observed; ++i) {
    if (!clicks.clicked[i]) continue;
    for (std::size_t j = 0; j < observed; ++j) {
      if (clicks.clicked[j]) continue;
      pairs.push_back(
          PreferencePair{ranking.doc_indices[i], ranking.doc_indices[j]});
    }
  }
  return pairs;
}

double pair_weight_rho(std::span<const double> scores,
                       const RankedList& ranking, const PreferencePair& pair) {
  const double log_p = log_ranking_probability(scores, ranking);
  const RankedList swapped =
      reverse_pair(ranking, pair.preferred, pair.dominated);
  const double log_p_swapped = log_ranking_probability(scores, swapped);
  return logistic(log_p_swapped - log_p);
}

double pair_gradient_scale(double score_k, double score_l) {
  return logistic(score_k - score_l) * logistic(score_l - score_k);
}

std::vector<double> compute_gradient(const ScorerSpec& spec,
                                     std::span<const double> params,
                                     const Query& query,
                                     const RankedList& ranking,
                                     const ClickRealization& clicks) {
  std::vector<double> gradient(spec.parameter_count(), 0.0);
  const std::vector<PreferencePair> pairs = infer_preferences(ranking, clicks);
  if (pairs.empty()) return gradient;

  const double log_p = log_ranking_probability(ranking.scores, ranking);

  // Each document's score-gradient enters many pairs; fold the pair weights
  // into one coefficient per document first.
  std::unordered_map<int, double> doc_coefficient;
  for (const PreferencePair& pair : pairs) {
    const RankedList swapped =
        reverse_pair(ranking, pair.preferred, pair.dominated);
    const double rho =
        logistic(log_ranking_probability(ranking.scores, swapped) - log_p);
    const double scale = pair_gradient_scale(
        ranking.scores[static_cast<std::size_t>(pair.preferred)],
        ranking.scores[static_cast<std::size_t>(pair.dominated)]);
    doc_coefficient[pair.preferred] += rho * scale;
    doc_coefficient[pair.dominated] -= rho * scale;
  }

  std::vector<double> doc_grad;
  for (int doc : ranking.doc_indices) {
    const auto it = doc_coefficient.find(doc);
    if (it == doc_coefficient.end() || it->second == 0.0) continue;
    score_gradient_into(spec, params,
                        query.documents[static_cast<std::size_t>(doc)].features,
                        doc_grad);
    for (std::size_t i = 0; i < gradient.size(); ++i) {
      gradient[i] += it->second * doc_grad[i];
    }
  }
  return gradient;
}

ImpressionResult pdgd_impression(const ScorerSpec& spec,
                                 std::vector<double>& params,
                                 const Query& query, const PdgdConfig& config,
                                 const ClickModelSpec& click_model,
                                 int max_grade, RandomStream& rng) {
  std::vector<double> scores(query.documents.size());
  for (std::size_t i = 0; i < query.documents.size(); ++i) {
    scores[i] = score(spec, params, query.documents[i].features);
  }

  ImpressionResult result;
  result.displayed = sample_ranking(scores, config.display_k, rng);

  std::vector<int> grades(result.displayed.size());
  for (std::size_t pos = 0; pos < result.displayed.size(); ++pos) {
    const int doc = result.displayed.doc_indices[pos];
    grades[pos] = query.documents[static_cast<std::size_t>(doc)].relevance;
  }
  result.clicks =
      simulate_clicks(click_model, result.displayed, grades, max_grade, rng);

  const std::vector<double> gradient =
      compute_gradient(spec, params, query, result.displayed, result.clicks);
  apply_update_in_place(params, gradient, config.learning_rate);
  return result;
}

}  // namespace oltr
