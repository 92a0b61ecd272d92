// Command-line front end: `run` simulates online learning-to-rank
// experiments, `verify-theorem` checks the expected-gradient sign
// conditions by enumeration, `evaluate` scores a saved model checkpoint.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oltr/dataset.hpp"
#include "oltr/experiment.hpp"
#include "oltr/unbiasedness.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

struct RunOptions {
  std::string dataset = "MQ2008";
  std::string data_root = "data";
  std::string algos = "pdgd";
  std::string model = "linear";
  std::string click = "perfect";
  std::string click_table;
  std::string init = "auto";
  std::string gain = "exponential";
  std::string out_dir = "results";
  int impressions = 10000;
  int repeats = 25;
  std::uint64_t seed = 1;
  int display_k = 10;
  double learning_rate = -1.0;  // <0: per-algorithm default
  double gamma = 0.9995;
  int eval_interval = 100;
  int hidden_units = 64;
  double delta = 1.0;
  double epsilon = 0.8;
  int jobs = 1;
  bool no_normalize = false;
  bool skip_no_relevant = false;
  int feature_dim = 0;  // >0 overrides the builtin descriptor
  int max_grade = 0;
  int folds = 0;
};

void apply_config_file(const std::string& path, RunOptions& opt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  opt.dataset = doc.value("dataset", opt.dataset);
  opt.data_root = doc.value("data_root", opt.data_root);
  opt.algos = doc.value("algo", opt.algos);
  opt.model = doc.value("model", opt.model);
  opt.click = doc.value("click", opt.click);
  opt.click_table = doc.value("click_table", opt.click_table);
  opt.init = doc.value("init", opt.init);
  opt.gain = doc.value("gain", opt.gain);
  opt.out_dir = doc.value("out", opt.out_dir);
  opt.impressions = doc.value("impressions", opt.impressions);
  opt.repeats = doc.value("repeats", opt.repeats);
  opt.seed = doc.value("seed", opt.seed);
  opt.display_k = doc.value("k", opt.display_k);
  opt.learning_rate = doc.value("lr", opt.learning_rate);
  opt.gamma = doc.value("gamma", opt.gamma);
  opt.eval_interval = doc.value("eval_interval", opt.eval_interval);
  opt.hidden_units = doc.value("hidden_units", opt.hidden_units);
  opt.delta = doc.value("delta", opt.delta);
  opt.epsilon = doc.value("epsilon", opt.epsilon);
  opt.jobs = doc.value("jobs", opt.jobs);
  opt.no_normalize = doc.value("no_normalize", opt.no_normalize);
  opt.skip_no_relevant = doc.value("skip_no_relevant", opt.skip_no_relevant);
  opt.feature_dim = doc.value("feature_dim", opt.feature_dim);
  opt.max_grade = doc.value("max_grade", opt.max_grade);
  opt.folds = doc.value("folds", opt.folds);
}

oltr::DatasetInfo resolve_dataset_info(const RunOptions& opt) {
  oltr::DatasetInfo info;
  try {
    info = oltr::builtin_dataset_info(opt.dataset);
  } catch (const std::invalid_argument&) {
    if (opt.feature_dim <= 0 || opt.max_grade <= 0 || opt.folds <= 0) {
      throw std::runtime_error(
          "dataset '" + opt.dataset +
          "' is not builtin; pass --feature-dim, --max-grade and --folds");
    }
    info.name = opt.dataset;
  }
  if (opt.feature_dim > 0) info.feature_dim = opt.feature_dim;
  if (opt.max_grade > 0) info.max_grade = opt.max_grade;
  if (opt.folds > 0) info.num_folds = opt.folds;
  info.normalize = !opt.no_normalize;
  return info;
}

double default_learning_rate(oltr::Algorithm algo) {
  return algo == oltr::Algorithm::kPdgd ? 0.1 : 0.01;
}

int command_run(const RunOptions& opt) {
  const oltr::DatasetInfo info = resolve_dataset_info(opt);
  std::cerr << "loading " << info.name << " from " << opt.data_root << "...\n";
  const oltr::QueryDataset dataset = oltr::load_dataset(opt.data_root, info);

  oltr::ClickModelSpec click_model =
      opt.click_table.empty() ? oltr::builtin_click_model(opt.click)
                              : oltr::load_click_model(opt.click_table);

  std::vector<oltr::ExperimentResult> results;
  for (const std::string& algo_name : split_csv(opt.algos)) {
    oltr::RunConfig config;
    config.algo.algorithm = oltr::algorithm_from_name(algo_name);
    config.algo.scorer.kind = oltr::scorer_kind_from_name(opt.model);
    config.algo.scorer.feature_dim = dataset.feature_dim;
    config.algo.scorer.hidden_units =
        config.algo.scorer.kind == oltr::ScorerKind::kNeural ? opt.hidden_units
                                                             : 0;
    if (opt.init == "auto") {
      config.algo.scorer.init = config.algo.scorer.kind ==
                                        oltr::ScorerKind::kNeural
                                    ? oltr::InitScheme::kXavier
                                    : oltr::InitScheme::kZeros;
    } else if (opt.init == "zeros") {
      config.algo.scorer.init = oltr::InitScheme::kZeros;
    } else if (opt.init == "xavier") {
      config.algo.scorer.init = oltr::InitScheme::kXavier;
    } else {
      throw std::runtime_error("unknown init scheme: " + opt.init);
    }
    config.algo.learning_rate = opt.learning_rate > 0.0
                                    ? opt.learning_rate
                                    : default_learning_rate(
                                          config.algo.algorithm);
    config.algo.perturbation_radius = opt.delta;
    config.algo.exploration_epsilon = opt.epsilon;
    config.click_model = click_model;
    config.impressions = opt.impressions;
    config.display_k = opt.display_k;
    config.eval_interval = opt.eval_interval;
    config.repeats = opt.repeats;
    config.base_seed = opt.seed;
    config.jobs = opt.jobs;
    config.metrics.discount_gamma = opt.gamma;
    config.metrics.gain = opt.gain == "linear" ? oltr::GainKind::kLinear
                                               : oltr::GainKind::kExponential;
    config.metrics.skip_no_relevant = opt.skip_no_relevant;

    std::cerr << "running " << config.algo.label() << " / "
              << click_model.name << " (" << config.repeats << " x "
              << config.impressions << " impressions)...\n";
    results.push_back(oltr::run_experiment(dataset, config));
    const oltr::ExperimentResult& r = results.back();
    std::printf("%-18s offline %.4f (%.4f)   online %.1f (%.1f)\n",
                r.label.c_str(), r.mean_offline, r.sd_offline, r.mean_online,
                r.sd_online);
  }

  oltr::emit_results(results, opt.out_dir);
  std::cerr << "wrote " << opt.out_dir << "/summary.json and curves.csv\n";
  return 0;
}

int command_verify(const std::string& out_path, int instances,
                   std::uint64_t seed, long mc_samples) {
  oltr::RandomStream rng(oltr::derive_seed(seed, 7));
  nlohmann::json report;
  report["instances"] = nlohmann::json::array();
  bool all_pass = true;

  for (int i = 0; i < instances; ++i) {
    const int n_docs = 2 + static_cast<int>(rng.uniform_below(3));
    const int k = 1 + static_cast<int>(rng.uniform_below(n_docs));
    const oltr::OracleInstance instance =
        oltr::random_admissible_instance(n_docs, std::max(2, k), rng);
    const oltr::PairCoefficients enumerated =
        oltr::enumerate_expected_gradient(instance);
    const oltr::SignCheckResult signs =
        oltr::check_sign_conditions(instance, enumerated);

    double mc_max_diff = 0.0;
    if (mc_samples > 0) {
      oltr::RandomStream mc_rng(oltr::derive_seed(seed, 1000 + i));
      const oltr::PairCoefficients sampled =
          oltr::empirical_expected_gradient(instance, mc_samples, mc_rng);
      for (std::size_t a = 0; a < instance.scores.size(); ++a) {
        for (std::size_t b = a + 1; b < instance.scores.size(); ++b) {
          mc_max_diff = std::max(
              mc_max_diff, std::abs(sampled.alpha(a, b) - enumerated.alpha(a, b)));
        }
      }
    }

    nlohmann::json entry;
    entry["n_docs"] = n_docs;
    entry["display_k"] = instance.display_k;
    entry["grades"] = instance.grades;
    entry["scores"] = instance.scores;
    entry["click_prob"] = instance.click_model.click_prob;
    entry["stop_prob"] = instance.click_model.stop_prob;
    nlohmann::json alpha = nlohmann::json::array();
    for (std::size_t a = 0; a < instance.scores.size(); ++a) {
      for (std::size_t b = a + 1; b < instance.scores.size(); ++b) {
        alpha.push_back({{"pair", {a, b}},
                         {"alpha", enumerated.alpha(a, b)}});
      }
    }
    entry["alpha"] = alpha;
    entry["sign_conditions_pass"] = signs.pass;
    entry["max_equal_grade_alpha"] = signs.max_equal_grade_alpha;
    if (!signs.detail.empty()) entry["violations"] = signs.detail;
    if (mc_samples > 0) entry["mc_max_diff"] = mc_max_diff;
    report["instances"].push_back(entry);
    all_pass = all_pass && signs.pass;
  }
  report["all_pass"] = all_pass;

  if (out_path.empty() || out_path == "-") {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write report: " + out_path);
    out << report.dump(2) << '\n';
    std::cerr << "wrote " << out_path << '\n';
  }
  std::cout << (all_pass ? "sign conditions hold on all instances\n"
                         : "sign condition violations found\n");
  return all_pass ? 0 : 1;
}

int command_evaluate(const std::string& params_path, const RunOptions& opt,
                     int fold) {
  const auto [spec, params] = oltr::load_parameters(params_path);
  const oltr::DatasetInfo info = resolve_dataset_info(opt);
  const oltr::QueryDataset dataset = oltr::load_dataset(opt.data_root, info);
  if (spec.feature_dim != dataset.feature_dim) {
    throw std::runtime_error("checkpoint feature_dim does not match dataset");
  }
  oltr::MetricsConfig metrics;
  metrics.skip_no_relevant = opt.skip_no_relevant;
  metrics.gain = opt.gain == "linear" ? oltr::GainKind::kLinear
                                      : oltr::GainKind::kExponential;

  double total = 0.0;
  int counted = 0;
  for (int f = 0; f < static_cast<int>(dataset.folds.size()); ++f) {
    if (fold >= 0 && f != fold) continue;
    const double ndcg = oltr::offline_performance(
        spec, params, dataset.folds[static_cast<std::size_t>(f)].test, metrics);
    std::printf("fold %d offline NDCG@%d: %.4f\n", f + 1, metrics.cutoff, ndcg);
    total += ndcg;
    ++counted;
  }
  if (counted > 1) {
    std::printf("mean offline NDCG@%d: %.4f\n", metrics.cutoff,
                total / counted);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online learning-to-rank simulation lab"};
  app.require_subcommand(1);

  RunOptions opt;
  std::string config_path;

  // The config file only provides defaults; explicit flags win. Apply it
  // before CLI11 parses the remaining arguments.
  for (int i = 1; i < argc - 1; ++i) {
    if (std::string(argv[i]) == "--config") {
      config_path = argv[i + 1];
    }
  }
  if (!config_path.empty()) apply_config_file(config_path, opt);

  CLI::App* run = app.add_subcommand("run", "simulate online learning runs");
  run->add_option("--config", config_path, "JSON config file (defaults)");
  run->add_option("--dataset", opt.dataset, "dataset name");
  run->add_option("--data-root", opt.data_root, "dataset root directory");
  run->add_option("--algo", opt.algos,
                  "algorithm(s), comma separated: pdgd,dbgd,pairwise");
  run->add_option("--model", opt.model, "scorer: linear|neural");
  run->add_option("--click", opt.click,
                  "click model: perfect|navigational|informational");
  run->add_option("--click-table", opt.click_table,
                  "JSON file with custom click/stop tables");
  run->add_option("--init", opt.init, "init scheme: auto|zeros|xavier");
  run->add_option("--impressions", opt.impressions, "impressions per run");
  run->add_option("--repeats", opt.repeats, "independent runs");
  run->add_option("--seed", opt.seed, "base seed");
  run->add_option("--out", opt.out_dir, "output directory");
  run->add_option("--k", opt.display_k, "displayed documents per impression");
  run->add_option("--lr", opt.learning_rate,
                  "learning rate (default: 0.1 pdgd, 0.01 baselines)");
  run->add_option("--gamma", opt.gamma, "online metric discount");
  run->add_option("--eval-interval", opt.eval_interval,
                  "impressions between offline evals");
  run->add_option("--hidden-units", opt.hidden_units, "neural hidden units");
  run->add_option("--delta", opt.delta, "dbgd perturbation radius");
  run->add_option("--epsilon", opt.epsilon, "pairwise exploration rate");
  run->add_option("--jobs", opt.jobs, "parallel runs");
  run->add_flag("--no-normalize", opt.no_normalize,
                "disable per-query feature normalization");
  run->add_flag("--ndcg-skip-empty", opt.skip_no_relevant,
                "skip queries with no relevant documents in offline NDCG");
  run->add_option("--gain", opt.gain, "NDCG gain: exponential|linear");
  run->add_option("--feature-dim", opt.feature_dim,
                  "feature count (custom datasets)");
  run->add_option("--max-grade", opt.max_grade,
                  "maximum relevance grade (custom datasets)");
  run->add_option("--folds", opt.folds, "fold count (custom datasets)");

  std::string verify_out = "-";
  int verify_instances = 24;
  std::uint64_t verify_seed = 1;
  long verify_mc_samples = 1000000;
  CLI::App* verify = app.add_subcommand(
      "verify-theorem",
      "enumerate expected-gradient pair weights on small instances and check "
      "their signs against the document grades");
  verify->add_option("--out", verify_out, "report path ('-' for stdout)");
  verify->add_option("--instances", verify_instances, "instance count");
  verify->add_option("--seed", verify_seed, "generator seed");
  verify->add_option("--mc-samples", verify_mc_samples,
                     "Monte-Carlo samples per instance (0 disables)");

  std::string eval_params;
  int eval_fold = -1;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "offline NDCG of a saved checkpoint");
  evaluate->add_option("--params", eval_params, "checkpoint JSON file")
      ->required();
  evaluate->add_option("--config", config_path, "JSON config file (defaults)");
  evaluate->add_option("--dataset", opt.dataset, "dataset name");
  evaluate->add_option("--data-root", opt.data_root, "dataset root directory");
  evaluate->add_option("--fold", eval_fold, "fold (1-based; default all)");
  evaluate->add_option("--gain", opt.gain, "NDCG gain: exponential|linear");
  evaluate->add_flag("--ndcg-skip-empty", opt.skip_no_relevant,
                     "skip queries with no relevant documents");
  evaluate->add_option("--feature-dim", opt.feature_dim,
                       "feature count (custom datasets)");
  evaluate->add_option("--max-grade", opt.max_grade,
                       "maximum relevance grade (custom datasets)");
  evaluate->add_option("--folds", opt.folds, "fold count (custom datasets)");
  evaluate->add_flag("--no-normalize", opt.no_normalize,
                     "disable per-query feature normalization");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return command_run(opt);
    if (verify->parsed()) {
      return command_verify(verify_out, verify_instances, verify_seed,
                            verify_mc_samples);
    }
    if (evaluate->parsed()) {
      return command_evaluate(eval_params, opt, eval_fold - 1);
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  }
  return 0;
}
