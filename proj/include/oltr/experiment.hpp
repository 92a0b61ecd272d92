#ifndef OLTR_EXPERIMENT_HPP_
#define OLTR_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "oltr/baselines.hpp"
#include "oltr/click_models.hpp"
#include "oltr/dataset.hpp"
#include "oltr/metrics.hpp"
#include "oltr/pdgd.hpp"
#include "oltr/scorer.hpp"

namespace oltr {

enum class Algorithm { kPdgd, kDbgd, kPairwise };

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm algo);

// One optimizer setup: which update rule, which model family, and the
// hyperparameters that apply to it.
struct AlgoSetup {
  Algorithm algorithm = Algorithm::kPdgd;
  ScorerSpec scorer;
  double learning_rate = 0.1;
  double perturbation_radius = 1.0;  // dbgd only
  double exploration_epsilon = 0.8;  // pairwise only

  std::string label() const;
};

struct RunConfig {
  AlgoSetup algo;
  ClickModelSpec click_model;
  int impressions = 10000;
  int display_k = 10;
  int eval_interval = 100;
  int repeats = 25;
  std::uint64_t base_seed = 1;
  int jobs = 1;
  MetricsConfig metrics;
};

struct EvalPoint {
  int t = 0;
  double offline_ndcg = 0.0;
  double cumulative_online = 0.0;
};

// Everything recorded about a single simulated deployment.
struct RunRecord {
  std::string algorithm;
  int fold = 0;
  std::uint64_t seed = 0;
  std::vector<double> impression_ndcg;  // NDCG of each displayed list
  std::vector<int> impression_query;    // index into the fold's train list
  std::vector<EvalPoint> eval_points;   // periodic evals plus a final one
  double final_offline = 0.0;
  double final_online = 0.0;
  std::vector<double> final_params;
};

struct ExperimentResult {
  std::string label;
  RunConfig config;
  std::vector<RunRecord> runs;
  double mean_offline = 0.0;
  double sd_offline = 0.0;
  double mean_online = 0.0;
  double sd_online = 0.0;
};

struct TTestResult {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
};

// Two-sample two-tailed Student's t-test with pooled variance.
TTestResult student_t_test(std::span<const double> a,
                           std::span<const double> b);

// One deployment: T impressions of uniformly sampled training queries,
// with periodic offline evaluation on the fold's test set. Deterministic
// given (config, fold, seed).
RunRecord run_single(const QueryDataset& dataset, const RunConfig& config,
                     int fold, std::uint64_t seed);

// `repeats` independent runs with seeds base_seed .. base_seed+repeats-1,
// assigned to folds round-robin, optionally in parallel. Aggregates the
// final offline/online metrics.
ExperimentResult run_experiment(const QueryDataset& dataset,
                                const RunConfig& config);

// Writes summary.json (config echo, aggregate statistics, pairwise t-tests
// between experiments) and curves.csv (one row per run per eval point)
// under out_dir.
void emit_results(const std::vector<ExperimentResult>& experiments,
                  const std::string& out_dir);

std::string curves_csv(const std::vector<ExperimentResult>& experiments);

}  // namespace oltr

#endif  // OLTR_EXPERIMENT_HPP_
