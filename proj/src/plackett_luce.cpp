#include "oltr/plackett_luce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oltr {

std::vector<double> doc_distribution(std::span<const double> scores) {
  if (scores.empty()) {
    throw std::invalid_argument("doc_distribution over an empty score vector");
  }
  const double peak = *std::max_element(scores.begin(), scores.end());
  std::vector<double> probs(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    probs[i] = std::exp(scores[i] - peak);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

RankedList sample_ranking(std::span<const double> scores, int k,
                          RandomStream& rng) {
  if (scores.empty()) {
    throw std::invalid_argument("sample_ranking over an empty score vector");
  }
  if (k < 1) throw std::invalid_argument("sample_ranking requires k >= 1");

  const std::size_t length =
      std::min(static_cast<std::size_t>(k), scores.size());
  std::vector<int> remaining(scores.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    remaining[i] = static_cast<int>(i);
  }

  RankedList ranking;
  ranking.scores.assign(scores.begin(), scores.end());
  ranking.doc_indices.reserve(length);

  std::vector<double> weights(scores.size());
  for (std::size_t step = 0; step < length; ++step) {
    double peak = scores[static_cast<std::size_t>(remaining[0])];
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      peak = std::max(peak, scores[static_cast<std::size_t>(remaining[i])]);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      weights[i] = std::exp(scores[static_cast<std::size_t>(remaining[i])] - peak);
      total += weights[i];
    }
    const double target = rng.uniform01() * total;
    double running = 0.0;
    std::size_t chosen = remaining.size() - 1;  // guard against rounding
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      running += weights[i];
      if (target < running) {
        chosen = i;
        break;
      }
    }
    ranking.doc_indices.push_back(remaining[chosen]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(chosen));
  }
  return ranking;
}

double log_ranking_probability(std::span<const double> scores,
                               const RankedList& ranking) {
  std::vector<bool> placed(scores.size(), false);
  for (int doc : ranking.doc_indices) {
    if (doc < 0 || static_cast<std::size_t>(doc) >= scores.size() ||
        placed[static_cast<std::size_t>(doc)]) {
      throw std::invalid_argument("ranking is not valid for the score vector");
    }
    placed[static_cast<std::size_t>(doc)] = true;
  }

  std::vector<bool> available(scores.size(), true);
  double log_prob = 0.0;
  for (int doc : ranking.doc_indices) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (available[i]) peak = std::max(peak, scores[i]);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (available[i]) total += std::exp(scores[i] - peak);
    }
    log_prob += scores[static_cast<std::size_t>(doc)] - peak - std::log(total);
    available[static_cast<std::size_t>(doc)] = false;
  }
  return log_prob;
}

RankedList reverse_pair(const RankedList& ranking, int doc_a, int doc_b) {
  const auto find_pos = [&](int doc) {
    const auto it = std::find(ranking.doc_indices.begin(),
                              ranking.doc_indices.end(), doc);
    if (it == ranking.doc_indices.end()) {
      throw std::invalid_argument("document " + std::to_string(doc) +
                                  " is not in the displayed ranking");
    }
    return static_cast<std::size_t>(it - ranking.doc_indices.begin());
  };
  const std::size_t pos_a = find_pos(doc_a);
  const std::size_t pos_b = find_pos(doc_b);
  RankedList swapped = ranking;
  std::swap(swapped.doc_indices[pos_a], swapped.doc_indices[pos_b]);
  return swapped;
}

}  // namespace oltr
