#include "oltr/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "oltr/metrics.hpp"

namespace oltr {

std::vector<double> sample_unit_sphere(int dim, double radius,
                                       RandomStream& rng) {
  if (dim < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  std::vector<double> direction(static_cast<std::size_t>(dim));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : direction) {
      x = rng.gaussian();
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& x : direction) x *= radius / norm;
  return direction;
}

InterleaveResult team_draft_interleave(const std::vector<int>& ranking_a,
                                       const std::vector<int>& ranking_b,
                                       int k, RandomStream& rng) {
  if (k < 1) throw std::invalid_argument("interleave length must be >= 1");
  InterleaveResult result;
  const std::size_t limit =
      std::min(static_cast<std::size_t>(k),
               std::max(ranking_a.size(), ranking_b.size()));

  std::unordered_map<int, bool> placed;
  std::size_t next_a = 0;
  std::size_t next_b = 0;
  auto draft = [&](const std::vector<int>& ranking, std::size_t& next,
                   Team team) {
    while (next < ranking.size() && placed.count(ranking[next])) ++next;
    if (next >= ranking.size() || result.doc_indices.size() >= limit) return;
    placed[ranking[next]] = true;
    result.doc_indices.push_back(ranking[next]);
    result.team_of.push_back(team);
  };

  while (result.doc_indices.size() < limit) {
    const std::size_t before = result.doc_indices.size();
    if (rng.bernoulli(0.5)) {
      draft(ranking_a, next_a, Team::kA);
      draft(ranking_b, next_b, Team::kB);
    } else {
      draft(ranking_b, next_b, Team::kB);
      draft(ranking_a, next_a, Team::kA);
    }
    if (result.doc_indices.size() == before) break;  // both lists exhausted
  }
  return result;
}

namespace {

std::vector<double> score_all(const ScorerSpec& spec,
                              std::span<const double> params,
                              const Query& query) {
  std::vector<double> scores(query.documents.size());
  for (std::size_t i = 0; i < query.documents.size(); ++i) {
    scores[i] = score(spec, params, query.documents[i].features);
  }
  return scores;
}

ClickRealization simulate_on(const ClickModelSpec& click_model,
                             const RankedList& displayed, const Query& query,
                             int max_grade, RandomStream& rng) {
  std::vector<int> grades(displayed.size());
  for (std::size_t pos = 0; pos < displayed.size(); ++pos) {
    grades[pos] =
        query.documents[static_cast<std::size_t>(displayed.doc_indices[pos])]
            .relevance;
  }
  return simulate_clicks(click_model, displayed, grades, max_grade, rng);
}

}  // namespace

ImpressionResult dbgd_impression(const ScorerSpec& spec,
                                 std::vector<double>& params,
                                 const Query& query, const DbgdConfig& config,
                                 const ClickModelSpec& click_model,
                                 int max_grade, RandomStream& rng) {
  const std::vector<double> direction = sample_unit_sphere(
      static_cast<int>(params.size()), config.perturbation_radius, rng);
  std::vector<double> candidate(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    candidate[i] = params[i] + direction[i];
  }

  const std::vector<double> scores = score_all(spec, params, query);
  const std::vector<double> candidate_scores =
      score_all(spec, candidate, query);
  const InterleaveResult interleaved =
      team_draft_interleave(deterministic_ranking(scores),
                            deterministic_ranking(candidate_scores),
                            config.display_k, rng);

  ImpressionResult result;
  result.displayed.doc_indices = interleaved.doc_indices;
  result.displayed.scores = scores;
  result.clicks =
      simulate_on(click_model, result.displayed, query, max_grade, rng);

  int current_clicks = 0;
  int candidate_clicks = 0;
  for (std::size_t pos = 0; pos < result.clicks.clicked.size(); ++pos) {
    if (!result.clicks.clicked[pos]) continue;
    if (interleaved.team_of[pos] == Team::kA) {
      ++current_clicks;
    } else {
      ++candidate_clicks;
    }
  }

  if (candidate_clicks > current_clicks) {
    // Unit step toward the winning candidate: (candidate - params) / radius.
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i] += config.learning_rate * direction[i] /
                   config.perturbation_radius;
    }
  }
  return result;
}

ImpressionResult pairwise_baseline_impression(
    const ScorerSpec& spec, std::vector<double>& params, const Query& query,
    const PairwiseBaselineConfig& config, const ClickModelSpec& click_model,
    int max_grade, RandomStream& rng) {
  const std::vector<double> scores = score_all(spec, params, query);

  std::vector<int> remaining(query.documents.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    remaining[i] = static_cast<int>(i);
  }

  ImpressionResult result;
  result.displayed.scores = scores;
  const std::size_t length =
      std::min(static_cast<std::size_t>(config.display_k), remaining.size());
  for (std::size_t pos = 0; pos < length; ++pos) {
    std::size_t pick = 0;
    if (rng.bernoulli(config.exploration_epsilon)) {
      pick = static_cast<std::size_t>(
          rng.uniform_below(static_cast<std::int64_t>(remaining.size())));
    } else {
      for (std::size_t i = 1; i < remaining.size(); ++i) {
        const double best = scores[static_cast<std::size_t>(remaining[pick])];
        const double cur = scores[static_cast<std::size_t>(remaining[i])];
        if (cur > best || (cur == best && remaining[i] < remaining[pick])) {
          pick = i;
        }
      }
    }
    result.displayed.doc_indices.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  result.clicks =
      simulate_on(click_model, result.displayed, query, max_grade, rng);

  // Plain pairwise update on the observed-prefix preferences; the absence
  // of the reversed-pair weight is the point of this baseline.
  const std::vector<PreferencePair> pairs =
      infer_preferences(result.displayed, result.clicks);
  if (!pairs.empty()) {
    std::unordered_map<int, double> doc_coefficient;
    for (const PreferencePair& pair : pairs) {
      const double scale = pair_gradient_scale(
          scores[static_cast<std::size_t>(pair.preferred)],
          scores[static_cast<std::size_t>(pair.dominated)]);
      doc_coefficient[pair.preferred] += scale;
      doc_coefficient[pair.dominated] -= scale;
    }
    std::vector<double> gradient(params.size(), 0.0);
    std::vector<double> doc_grad;
    for (int doc : result.displayed.doc_indices) {
      const auto it = doc_coefficient.find(doc);
      if (it == doc_coefficient.end() || it->second == 0.0) continue;
      score_gradient_into(
          spec, params, query.documents[static_cast<std::size_t>(doc)].features,
          doc_grad);
      for (std::size_t i = 0; i < gradient.size(); ++i) {
        gradient[i] += it->second * doc_grad[i];
      }
    }
    apply_update_in_place(params, gradient, config.learning_rate);
  }
  return result;
}

}  // namespace oltr
