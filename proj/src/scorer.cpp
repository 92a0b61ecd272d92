#include "oltr/scorer.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace oltr {

namespace {

double sigmoid(double x) {
  // Evaluate through exp of a negative argument only.
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void check_dims(const ScorerSpec& spec, std::span<const double> params,
                std::span<const double> features) {
  if (params.size() != spec.parameter_count()) {
    throw std::invalid_argument("parameter vector length " +
                                std::to_string(params.size()) +
                                " does not match scorer spec");
  }
  if (features.size() != static_cast<std::size_t>(spec.feature_dim)) {
    throw std::invalid_argument("feature vector length " +
                                std::to_string(features.size()) +
                                " does not match scorer spec");
  }
}

}  // namespace

std::size_t ScorerSpec::parameter_count() const {
  if (kind == ScorerKind::kLinear) {
    return static_cast<std::size_t>(feature_dim);
  }
  const std::size_t d = static_cast<std::size_t>(feature_dim);
  const std::size_t h = static_cast<std::size_t>(hidden_units);
  return d * h + h + h;
}

ScorerKind scorer_kind_from_name(const std::string& name) {
  if (name == "linear") return ScorerKind::kLinear;
  if (name == "neural") return ScorerKind::kNeural;
  throw std::invalid_argument("unknown scorer kind: " + name);
}

double score(const ScorerSpec& spec, std::span<const double> params,
             std::span<const double> features) {
  check_dims(spec, params, features);
  const std::size_t d = static_cast<std::size_t>(spec.feature_dim);

  if (spec.kind == ScorerKind::kLinear) {
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) sum += params[i] * features[i];
    return sum;
  }

  const std::size_t h = static_cast<std::size_t>(spec.hidden_units);
  const double* weights = params.data();
  const double* biases = params.data() + d * h;
  const double* output = biases + h;
  double sum = 0.0;
  for (std::size_t j = 0; j < h; ++j) {
    double z = biases[j];
    const double* row = weights + j * d;
    for (std::size_t i = 0; i < d; ++i) z += row[i] * features[i];
    sum += output[j] * sigmoid(z);
  }
  return sum;
}

void score_gradient_into(const ScorerSpec& spec,
                         std::span<const double> params,
                         std::span<const double> features,
                         std::vector<double>& out) {
  check_dims(spec, params, features);
  const std::size_t d = static_cast<std::size_t>(spec.feature_dim);
  out.assign(spec.parameter_count(), 0.0);

  if (spec.kind == ScorerKind::kLinear) {
    for (std::size_t i = 0; i < d; ++i) out[i] = features[i];
    return;
  }

  const std::size_t h = static_cast<std::size_t>(spec.hidden_units);
  const double* weights = params.data();
  const double* biases = params.data() + d * h;
  const double* output = biases + h;
  double* grad_weights = out.data();
  double* grad_biases = out.data() + d * h;
  double* grad_output = grad_biases + h;

  for (std::size_t j = 0; j < h; ++j) {
    double z = biases[j];
    const double* row = weights + j * d;
    for (std::size_t i = 0; i < d; ++i) z += row[i] * features[i];
    const double a = sigmoid(z);
    const double back = output[j] * a * (1.0 - a);
    grad_output[j] = a;
    grad_biases[j] = back;
    double* grad_row = grad_weights + j * d;
    for (std::size_t i = 0; i < d; ++i) grad_row[i] = back * features[i];
  }
}

std::vector<double> score_gradient(const ScorerSpec& spec,
                                   std::span<const double> params,
                                   std::span<const double> features) {
  std::vector<double> out;
  score_gradient_into(spec, params, features, out);
  return out;
}

std::vector<double> initialize_parameters(const ScorerSpec& spec,
                                          std::uint64_t seed) {
  std::vector<double> params(spec.parameter_count(), 0.0);
  if (spec.init == InitScheme::kZeros) return params;

  RandomStream rng(seed);
  auto glorot = [&](double* begin, std::size_t count, std::size_t fan_in,
                    std::size_t fan_out) {
    const double bound =
        std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (std::size_t i = 0; i < count; ++i) {
      begin[i] = (2.0 * rng.uniform01() - 1.0) * bound;
    }
  };

  const std::size_t d = static_cast<std::size_t>(spec.feature_dim);
  if (spec.kind == ScorerKind::kLinear) {
    glorot(params.data(), d, d, 1);
    return params;
  }
  const std::size_t h = static_cast<std::size_t>(spec.hidden_units);
  glorot(params.data(), d * h, d, h);  // hidden weights; biases stay 0
  glorot(params.data() + d * h + h, h, h, 1);  // output weights
  return params;
}

std::vector<double> apply_update(std::span<const double> params,
                                 std::span<const double> gradient,
                                 double step) {
  std::vector<double> result(params.begin(), params.end());
  apply_update_in_place(result, gradient, step);
  return result;
}

void apply_update_in_place(std::vector<double>& params,
                           std::span<const double> gradient, double step) {
  if (params.size() != gradient.size()) {
    throw std::invalid_argument("parameter/gradient length mismatch");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    params[i] += step * gradient[i];
  }
}

void save_parameters(const std::string& path, const ScorerSpec& spec,
                     std::span<const double> params) {
  nlohmann::json doc;
  doc["kind"] = spec.kind == ScorerKind::kLinear ? "linear" : "neural";
  doc["feature_dim"] = spec.feature_dim;
  doc["hidden_units"] = spec.hidden_units;
  doc["values"] = std::vector<double>(params.begin(), params.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write parameter file: " + path);
  out << doc.dump(2) << '\n';
}

std::pair<ScorerSpec, std::vector<double>> load_parameters(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read parameter file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  ScorerSpec spec;
  spec.kind = scorer_kind_from_name(doc.at("kind").get<std::string>());
  spec.feature_dim = doc.at("feature_dim").get<int>();
  spec.hidden_units = doc.value("hidden_units", 0);
  auto values = doc.at("values").get<std::vector<double>>();
  if (values.size() != spec.parameter_count()) {
    throw std::runtime_error("parameter file " + path +
                             " has wrong value count");
  }
  return {spec, std::move(values)};
}

}  // namespace oltr
