#ifndef OLTR_PDGD_HPP_
#define OLTR_PDGD_HPP_

#include <vector>

#include "oltr/click_models.hpp"
#include "oltr/dataset.hpp"
#include "oltr/plackett_luce.hpp"
#include "oltr/scorer.hpp"

namespace oltr {

// One click-derived preference: the clicked document over an unclicked one,
// both inside the observed prefix of the displayed list.
struct PreferencePair {
  int preferred = 0;
  int dominated = 0;
};

struct PdgdConfig {
  double learning_rate = 0.1;
  int display_k = 10;
};

// What an impression hands back to the harness: the updated parameters plus
// the displayed list and clicks, from which the per-impression metrics are
// computed.
struct ImpressionResult {
  RankedList displayed;
  ClickRealization clicks;
};

// Click preferences under the observed-prefix assumption: every position up
// to one past the last click counts as observed; each clicked document is
// preferred over each unclicked document in that prefix. No clicks, no
// pairs.
std::vector<PreferencePair> infer_preferences(const RankedList& ranking,
                                              const ClickRealization& clicks);

// Debiasing weight for one preference pair: with R* the displayed ranking
// with the pair's positions swapped,
//   weight = P(R*) / (P(R) + P(R*)),
// evaluated as logistic(log P(R*) - log P(R)) over the displayed prefix.
double pair_weight_rho(std::span<const double> scores,
                       const RankedList& ranking, const PreferencePair& pair);

// The pairwise-probability derivative factor
// exp(s_k) exp(s_l) / (exp(s_k) + exp(s_l))^2, computed as
// logistic(s_k - s_l) * logistic(s_l - s_k). Symmetric, in (0, 0.25].
double pair_gradient_scale(double score_k, double score_l);

// Full update direction for one impression: the sum over inferred pairs of
// weight * scale * (grad f(d_preferred) - grad f(d_dominated)). The pair
// weight is treated as a constant; no gradient flows through it.
std::vector<double> compute_gradient(const ScorerSpec& spec,
                                     std::span<const double> params,
                                     const Query& query,
                                     const RankedList& ranking,
                                     const ClickRealization& clicks);

// One full online round: score the candidates, sample the displayed list,
// simulate clicks, and take a gradient step. Mutates `params`.
ImpressionResult pdgd_impression(const ScorerSpec& spec,
                                 std::vector<double>& params,
                                 const Query& query, const PdgdConfig& config,
                                 const ClickModelSpec& click_model,
                                 int max_grade, RandomStream& rng);

}  // namespace oltr

#endif  // OLTR_PDGD_HPP_
