#include "oltr/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

namespace oltr {

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "pdgd") return Algorithm::kPdgd;
  if (name == "dbgd") return Algorithm::kDbgd;
  if (name == "pairwise") return Algorithm::kPairwise;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kPdgd: return "pdgd";
    case Algorithm::kDbgd: return "dbgd";
    case Algorithm::kPairwise: return "pairwise";
  }
  return "?";
}

std::string AlgoSetup::label() const {
  return algorithm_name(algorithm) + "-" +
         (scorer.kind == ScorerKind::kLinear ? "linear" : "neural");
}

TTestResult student_t_test(std::span<const double> a,
                           std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("t-test requires at least two values per side");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double mean_a = 0.0, mean_b = 0.0;
  for (double x : a) mean_a += x;
  for (double x : b) mean_b += x;
  mean_a /= na;
  mean_b /= nb;
  double var_a = 0.0, var_b = 0.0;
  for (double x : a) var_a += (x - mean_a) * (x - mean_a);
  for (double x : b) var_b += (x - mean_b) * (x - mean_b);
  var_a /= na - 1.0;
  var_b /= nb - 1.0;

  TTestResult result;
  result.degrees_of_freedom = na + nb - 2.0;
  const double pooled =
      ((na - 1.0) * var_a + (nb - 1.0) * var_b) / result.degrees_of_freedom;
  const double denom = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  if (denom == 0.0) {
    result.t_statistic = mean_a == mean_b ? 0.0
                         : (mean_a > mean_b
                                ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity());
    result.p_value = mean_a == mean_b ? 1.0 : 0.0;
    return result;
  }
  result.t_statistic = (mean_a - mean_b) / denom;
  boost::math::students_t dist(result.degrees_of_freedom);
  result.p_value =
      2.0 * boost::math::cdf(dist, -std::abs(result.t_statistic));
  return result;
}

RunRecord run_single(const QueryDataset& dataset, const RunConfig& config,
                     int fold, std::uint64_t seed) {
  if (fold < 0 || static_cast<std::size_t>(fold) >= dataset.folds.size()) {
    throw std::invalid_argument("fold index out of range");
  }
  const std::vector<Query>& train = dataset.folds[static_cast<std::size_t>(fold)].train;
  const std::vector<Query>& test = dataset.folds[static_cast<std::size_t>(fold)].test;
  if (train.empty() || test.empty()) {
    throw std::invalid_argument("fold has an empty train or test partition");
  }

  RunRecord record;
  record.algorithm = config.algo.label();
  record.fold = fold;
  record.seed = seed;
  record.impression_ndcg.reserve(static_cast<std::size_t>(config.impressions));

  // Separate derived streams for initialization and simulation, so the two
  // never interleave.
  std::vector<double> params =
      initialize_parameters(config.algo.scorer, derive_seed(seed, 1));
  RandomStream rng(derive_seed(seed, 0));

  const PdgdConfig pdgd_config{config.algo.learning_rate, config.display_k};
  const DbgdConfig dbgd_config{config.algo.learning_rate,
                               config.algo.perturbation_radius,
                               config.display_k};
  const PairwiseBaselineConfig pairwise_config{
      config.algo.learning_rate, config.algo.exploration_epsilon,
      config.display_k};

  std::vector<int> displayed_grades;
  std::vector<int> all_grades;
  double cumulative_online = 0.0;
  double discount = 1.0;

  for (int t = 1; t <= config.impressions; ++t) {
    const int query_index = static_cast<int>(
        rng.uniform_below(static_cast<std::int64_t>(train.size())));
    const Query& query = train[static_cast<std::size_t>(query_index)];
    record.impression_query.push_back(query_index);

    ImpressionResult impression;
    switch (config.algo.algorithm) {
      case Algorithm::kPdgd:
        impression = pdgd_impression(config.algo.scorer, params, query,
                                     pdgd_config, config.click_model,
                                     dataset.max_grade, rng);
        break;
      case Algorithm::kDbgd:
        impression = dbgd_impression(config.algo.scorer, params, query,
                                     dbgd_config, config.click_model,
                                     dataset.max_grade, rng);
        break;
      case Algorithm::kPairwise:
        impression = pairwise_baseline_impression(
            config.algo.scorer, params, query, pairwise_config,
            config.click_model, dataset.max_grade, rng);
        break;
    }

    displayed_grades.resize(impression.displayed.size());
    for (std::size_t pos = 0; pos < impression.displayed.size(); ++pos) {
      displayed_grades[pos] =
          query.documents[static_cast<std::size_t>(
                              impression.displayed.doc_indices[pos])]
              .relevance;
    }
    all_grades.resize(query.documents.size());
    for (std::size_t i = 0; i < query.documents.size(); ++i) {
      all_grades[i] = query.documents[i].relevance;
    }
    const double displayed_ndcg =
        ndcg_at_k(displayed_grades, all_grades, config.metrics.cutoff,
                  config.metrics.gain);
    record.impression_ndcg.push_back(displayed_ndcg);
    cumulative_online += displayed_ndcg * discount;
    discount *= config.metrics.discount_gamma;

    if (config.eval_interval > 0 && t % config.eval_interval == 0) {
      record.eval_points.push_back(
          EvalPoint{t,
                    offline_performance(config.algo.scorer, params, test,
                                        config.metrics),
                    cumulative_online});
    }
  }

  // Always close the record with an evaluation at t = T, even when the last
  // periodic point already landed there.
  record.eval_points.push_back(
      EvalPoint{config.impressions,
                offline_performance(config.algo.scorer, params, test,
                                    config.metrics),
                cumulative_online});
  record.final_offline = record.eval_points.back().offline_ndcg;
  record.final_online = cumulative_online;
  record.final_params = std::move(params);
  return record;
}

ExperimentResult run_experiment(const QueryDataset& dataset,
                                const RunConfig& config) {
  if (config.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  ExperimentResult result;
  result.label = config.algo.label() + "-" + config.click_model.name;
  result.config = config;
  result.runs.resize(static_cast<std::size_t>(config.repeats));

  const int folds = static_cast<int>(dataset.folds.size());
  std::atomic<int> next_run{0};
  auto worker = [&]() {
    for (;;) {
      const int run = next_run.fetch_add(1);
      if (run >= config.repeats) return;
      result.runs[static_cast<std::size_t>(run)] =
          run_single(dataset, config, run % folds,
                     config.base_seed + static_cast<std::uint64_t>(run));
    }
  };

  const int jobs = std::max(1, std::min(config.jobs, config.repeats));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
  }

  const double n = static_cast<double>(config.repeats);
  for (const RunRecord& run : result.runs) {
    result.mean_offline += run.final_offline;
    result.mean_online += run.final_online;
  }
  result.mean_offline /= n;
  result.mean_online /= n;
  if (config.repeats > 1) {
    for (const RunRecord& run : result.runs) {
      result.sd_offline += (run.final_offline - result.mean_offline) *
                           (run.final_offline - result.mean_offline);
      result.sd_online += (run.final_online - result.mean_online) *
                          (run.final_online - result.mean_online);
    }
    result.sd_offline = std::sqrt(result.sd_offline / (n - 1.0));
    result.sd_online = std::sqrt(result.sd_online / (n - 1.0));
  }
  return result;
}

namespace {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

nlohmann::json experiment_json(const ExperimentResult& experiment) {
  nlohmann::json doc;
  doc["label"] = experiment.label;
  doc["algorithm"] = experiment.config.algo.label();
  doc["click_model"] = experiment.config.click_model.name;
  doc["impressions"] = experiment.config.impressions;
  doc["display_k"] = experiment.config.display_k;
  doc["eval_interval"] = experiment.config.eval_interval;
  doc["repeats"] = experiment.config.repeats;
  doc["base_seed"] = experiment.config.base_seed;
  doc["learning_rate"] = experiment.config.algo.learning_rate;
  doc["discount_gamma"] = experiment.config.metrics.discount_gamma;
  doc["ndcg_cutoff"] = experiment.config.metrics.cutoff;
  doc["mean_offline"] = experiment.mean_offline;
  doc["sd_offline"] = experiment.sd_offline;
  doc["mean_online"] = experiment.mean_online;
  doc["sd_online"] = experiment.sd_online;
  nlohmann::json runs = nlohmann::json::array();
  for (const RunRecord& run : experiment.runs) {
    runs.push_back({{"fold", run.fold},
                    {"seed", run.seed},
                    {"offline", run.final_offline},
                    {"online", run.final_online}});
  }
  doc["runs"] = runs;
  return doc;
}

}  // namespace

std::string curves_csv(const std::vector<ExperimentResult>& experiments) {
  std::string csv = "algorithm,fold,seed,t,offline_ndcg,cumulative_online\n";
  for (const ExperimentResult& experiment : experiments) {
    for (const RunRecord& run : experiment.runs) {
      for (const EvalPoint& point : run.eval_points) {
        csv += run.algorithm;
        csv += ',';
        csv += std::to_string(run.fold);
        csv += ',';
        csv += std::to_string(run.seed);
        csv += ',';
        csv += std::to_string(point.t);
        csv += ',';
        csv += format_double(point.offline_ndcg);
        csv += ',';
        csv += format_double(point.cumulative_online);
        csv += '\n';
      }
    }
  }
  return csv;
}

void emit_results(const std::vector<ExperimentResult>& experiments,
                  const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  nlohmann::json summary;
  summary["experiments"] = nlohmann::json::array();
  for (const ExperimentResult& experiment : experiments) {
    summary["experiments"].push_back(experiment_json(experiment));
  }

  nlohmann::json tests = nlohmann::json::array();
  for (std::size_t i = 0; i < experiments.size(); ++i) {
    for (std::size_t j = i + 1; j < experiments.size(); ++j) {
      for (const char* metric : {"offline", "online"}) {
        std::vector<double> a, b;
        const bool offline = std::string(metric) == "offline";
        for (const RunRecord& run : experiments[i].runs) {
          a.push_back(offline ? run.final_offline : run.final_online);
        }
        for (const RunRecord& run : experiments[j].runs) {
          b.push_back(offline ? run.final_offline : run.final_online);
        }
        if (a.size() < 2 || b.size() < 2) continue;
        const TTestResult test = student_t_test(a, b);
        tests.push_back({{"a", experiments[i].label},
                         {"b", experiments[j].label},
                         {"metric", metric},
                         {"t", test.t_statistic},
                         {"df", test.degrees_of_freedom},
                         {"p", test.p_value}});
      }
    }
  }
  summary["t_tests"] = tests;

  {
    std::ofstream out(dir / "summary.json");
    if (!out) {
      throw std::runtime_error("cannot write " + (dir / "summary.json").string());
    }
    out << summary.dump(2) << '\n';
  }
  {
    std::ofstream out(dir / "curves.csv", std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write " + (dir / "curves.csv").string());
    }
    out << curves_csv(experiments);
  }
}

}  // namespace oltr
