#ifndef OLTR_SCORER_HPP_
#define OLTR_SCORER_HPP_

#include <span>
#include <string>
#include <vector>

#include "oltr/random.hpp"

namespace oltr {

enum class ScorerKind { kLinear, kNeural };
enum class InitScheme { kZeros, kXavier };

// Architecture of a differentiable scoring model. The neural variant is a
// single sigmoid hidden layer with biases feeding one linear output unit
// without bias (an output bias shifts every score equally and can never
// change a ranking). Parameters are kept as one flat vector so the update
// rules stay architecture-agnostic; the neural layout is
// [hidden weights row-major (h x d), hidden biases (h), output weights (h)].
struct ScorerSpec {
  ScorerKind kind = ScorerKind::kLinear;
  int feature_dim = 0;
  int hidden_units = 0;
  InitScheme init = InitScheme::kZeros;

  std::size_t parameter_count() const;
};

ScorerKind scorer_kind_from_name(const std::string& name);

// f(d) for one document. Throws std::invalid_argument on dimension mismatch.
double score(const ScorerSpec& spec, std::span<const double> params,
             std::span<const double> features);

// df/dparams as a flat vector aligned with the parameter layout.
std::vector<double> score_gradient(const ScorerSpec& spec,
                                   std::span<const double> params,
                                   std::span<const double> features);

// Writes the gradient into `out` (resized to parameter_count).
void score_gradient_into(const ScorerSpec& spec,
                         std::span<const double> params,
                         std::span<const double> features,
                         std::vector<double>& out);

// Fresh parameters: zeros, or Glorot-uniform weights with zero biases.
// Deterministic given the seed.
std::vector<double> initialize_parameters(const ScorerSpec& spec,
                                          std::uint64_t seed);

// params + step * gradient, elementwise. Lengths must match.
std::vector<double> apply_update(std::span<const double> params,
                                 std::span<const double> gradient,
                                 double step);

void apply_update_in_place(std::vector<double>& params,
                           std::span<const double> gradient, double step);

// Checkpoint format: a small JSON object {kind, feature_dim, hidden_units,
// values}. Used by the CLI for saving and re-evaluating trained models.
void save_parameters(const std::string& path, const ScorerSpec& spec,
                     std::span<const double> params);
std::pair<ScorerSpec, std::vector<double>> load_parameters(
    const std::string& path);

}  // namespace oltr

#endif  // OLTR_SCORER_HPP_
