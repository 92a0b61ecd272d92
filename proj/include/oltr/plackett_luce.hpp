#ifndef OLTR_PLACKETT_LUCE_HPP_
#define OLTR_PLACKETT_LUCE_HPP_

#include <span>
#include <vector>

#include "oltr/random.hpp"

namespace oltr {

// A displayed ranking: the ordered document indices of the shown prefix,
// plus the full candidate score vector it was sampled from. All ranking
// probabilities in this project are taken over the displayed prefix only,
// so a ranking carries everything needed to evaluate its own probability.
struct RankedList {
  std::vector<int> doc_indices;
  std::vector<double> scores;

  std::size_t size() const { return doc_indices.size(); }
};

// Softmax over scores, computed with max-subtraction. Sums to 1 within 1e-9.
std::vector<double> doc_distribution(std::span<const double> scores);

// Draws a ranking of length min(k, |scores|) by repeatedly sampling from
// the softmax over the not-yet-placed documents.
RankedList sample_ranking(std::span<const double> scores, int k,
                          RandomStream& rng);

// log P(ranking): sum over displayed positions of
// score(placed) - logsumexp(scores of documents still available).
double log_ranking_probability(std::span<const double> scores,
                               const RankedList& ranking);

// The same ranking with the positions of the two documents exchanged.
// Both must appear in the displayed list. An involution; swapping a
// document with itself returns the ranking unchanged.
RankedList reverse_pair(const RankedList& ranking, int doc_a, int doc_b);

}  // namespace oltr

#endif  // OLTR_PLACKETT_LUCE_HPP_
