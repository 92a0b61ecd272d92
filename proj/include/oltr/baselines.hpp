#ifndef OLTR_BASELINES_HPP_
#define OLTR_BASELINES_HPP_

#include <vector>

#include "oltr/click_models.hpp"
#include "oltr/dataset.hpp"
#include "oltr/pdgd.hpp"
#include "oltr/scorer.hpp"

namespace oltr {

struct DbgdConfig {
  double learning_rate = 0.01;
  double perturbation_radius = 1.0;
  int display_k = 10;
};

struct PairwiseBaselineConfig {
  double learning_rate = 0.01;
  double exploration_epsilon = 0.8;
  int display_k = 10;
};

enum class Team : char { kA, kB };

struct InterleaveResult {
  std::vector<int> doc_indices;
  std::vector<Team> team_of;
};

// A uniformly random direction with Euclidean norm exactly `radius`.
std::vector<double> sample_unit_sphere(int dim, double radius,
                                       RandomStream& rng);

// Team-draft interleaving of two rankings over the same candidate set:
// each round a coin flip picks which team drafts first, then both teams
// append their highest-ranked document that is not yet placed.
InterleaveResult team_draft_interleave(const std::vector<int>& ranking_a,
                                       const std::vector<int>& ranking_b,
                                       int k, RandomStream& rng);

// One dueling-bandit round: perturb the model on the sphere, interleave the
// two deterministic rankings, credit clicks per team, and step toward the
// candidate only when it wins strictly. Mutates `params`.
ImpressionResult dbgd_impression(const ScorerSpec& spec,
                                 std::vector<double>& params,
                                 const Query& query, const DbgdConfig& config,
                                 const ClickModelSpec& click_model,
                                 int max_grade, RandomStream& rng);

// The epsilon-exploration pairwise baseline: build the list greedily by
// score but with probability epsilon insert a uniformly drawn remaining
// document; update on clicked-over-unclicked pairs without any pair
// reweighting. Mutates `params`.
ImpressionResult pairwise_baseline_impression(
    const ScorerSpec& spec, std::vector<double>& params, const Query& query,
    const PairwiseBaselineConfig& config, const ClickModelSpec& click_model,
    int max_grade, RandomStream& rng);

}  // namespace oltr

#endif  // OLTR_BASELINES_HPP_
