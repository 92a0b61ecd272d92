#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

#include "oltr/plackett_luce.hpp"
#include "oltr/random.hpp"

using namespace oltr;

namespace {

// Independent probability of a full ordering: product of renormalized
// weight fractions, no logs, no shared code with the implementation.
double exact_ordering_probability(std::vector<double> weights,
                                  const std::vector<int>& ordering) {
  double prob = 1.0;
  for (int doc : ordering) {
    double total = 0.0;
    for (double w : weights) total += w;
    prob *= weights[static_cast<std::size_t>(doc)] / total;
    weights[static_cast<std::size_t>(doc)] = 0.0;
  }
  return prob;
}

std::vector<std::vector<int>> all_orderings(int n) {
  std::vector<int> base(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> result;
  do {
    result.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return result;
}

}  // namespace

TEST_CASE("doc_distribution matches the closed softmax forms") {
  const std::vector<double> thirds =
      doc_distribution(std::vector<double>{0.0, 0.0, 0.0});
  for (double p : thirds) CHECK(p == doctest::Approx(1.0 / 3.0));

  const std::vector<double> two_one =
      doc_distribution(std::vector<double>{std::log(2.0), 0.0});
  CHECK(two_one[0] == doctest::Approx(2.0 / 3.0));
  CHECK(two_one[1] == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(doc_distribution(std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("doc_distribution survives huge score gaps") {
  const std::vector<double> probs =
      doc_distribution(std::vector<double>{1000.0, 0.0});
  CHECK(std::isfinite(probs[0]));
  CHECK(probs[0] == doctest::Approx(1.0));
  CHECK(probs[1] >= 0.0);
  CHECK(probs[1] <= 1e-300);
}

TEST_CASE("doc_distribution is a shift-invariant probability vector") {
  RandomStream rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> scores(1 + rng.uniform_below(7));
    for (double& s : scores) s = 10.0 * rng.uniform01() - 5.0;
    const std::vector<double> probs = doc_distribution(scores);
    double total = 0.0;
    for (double p : probs) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(std::abs(total - 1.0) <= 1e-9);

    const double shift = 20.0 * rng.uniform01() - 10.0;
    std::vector<double> shifted = scores;
    for (double& s : shifted) s += shift;
    const std::vector<double> shifted_probs = doc_distribution(shifted);
    for (std::size_t i = 0; i < probs.size(); ++i) {
      CHECK(shifted_probs[i] == doctest::Approx(probs[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("two equal documents are sampled first equally often") {
  RandomStream rng(13);
  const std::vector<double> scores{1.0, 1.0};
  int first_count = 0;
  const int samples = 10000;
  for (int s = 0; s < samples; ++s) {
    if (sample_ranking(scores, 2, rng).doc_indices[0] == 0) ++first_count;
  }
  CHECK(std::abs(first_count / double(samples) - 0.5) <= 0.02);
}

TEST_CASE("three-document sampling frequencies match the exact products") {
  const std::vector<double> scores{std::log(4.0), std::log(2.0), 0.0};
  const std::vector<double> weights{4.0, 2.0, 1.0};
  RandomStream rng(29);
  std::map<std::vector<int>, int> counts;
  const int samples = 50000;
  for (int s = 0; s < samples; ++s) {
    ++counts[sample_ranking(scores, 3, rng).doc_indices];
  }
  // The top ordering has probability (4/7)*(2/3) = 8/21.
  CHECK(exact_ordering_probability(weights, {0, 1, 2}) ==
        doctest::Approx(8.0 / 21.0));
  for (const auto& ordering : all_orderings(3)) {
    const double expected = exact_ordering_probability(weights, ordering);
    const double observed = counts[ordering] / double(samples);
    CHECK(std::abs(observed - expected) <= 0.015);
  }
}

TEST_CASE("k=1 reduces to a single softmax draw") {
  const std::vector<double> scores{std::log(3.0), 0.0};
  RandomStream rng(41);
  int top = 0;
  const int samples = 20000;
  for (int s = 0; s < samples; ++s) {
    const RankedList ranking = sample_ranking(scores, 1, rng);
    REQUIRE(ranking.size() == 1);
    if (ranking.doc_indices[0] == 0) ++top;
  }
  CHECK(std::abs(top / double(samples) - 0.75) <= 0.01);
}

TEST_CASE("k larger than the candidate set truncates") {
  RandomStream rng(1);
  const RankedList ranking =
      sample_ranking(std::vector<double>{0.0, 1.0}, 10, rng);
  CHECK(ranking.size() == 2);
}

TEST_CASE("log_ranking_probability equals hand-computed values") {
  RankedList ranking;
  ranking.scores = {0.5, 0.5};
  ranking.doc_indices = {1, 0};
  CHECK(log_ranking_probability(ranking.scores, ranking) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-12));

  RankedList three;
  three.scores = {std::log(4.0), std::log(2.0), 0.0};
  three.doc_indices = {0, 1, 2};
  CHECK(log_ranking_probability(three.scores, three) ==
        doctest::Approx(std::log(8.0 / 21.0)).epsilon(1e-12));
}

TEST_CASE("full-ranking probabilities sum to one for up to 5 documents") {
  RandomStream rng(37);
  for (int n = 2; n <= 5; ++n) {
    std::vector<double> scores(static_cast<std::size_t>(n));
    for (double& s : scores) s = 6.0 * rng.uniform01() - 3.0;
    double total = 0.0;
    RankedList ranking;
    ranking.scores = scores;
    for (const auto& ordering : all_orderings(n)) {
      ranking.doc_indices = ordering;
      total += std::exp(log_ranking_probability(scores, ranking));
    }
    CHECK(std::abs(total - 1.0) <= 1e-9);
  }
}

TEST_CASE("log_ranking_probability rejects duplicate placements") {
  RankedList bad;
  bad.scores = {0.0, 1.0};
  bad.doc_indices = {1, 1};
  CHECK_THROWS_AS(log_ranking_probability(bad.scores, bad),
                  std::invalid_argument);
}

TEST_CASE("reverse_pair swaps exactly the two positions") {
  RankedList ranking;
  ranking.scores = {0.0, 0.0, 0.0, 0.0};
  ranking.doc_indices = {1, 2, 3, 0};

  const RankedList swapped = reverse_pair(ranking, 1, 3);
  CHECK(swapped.doc_indices == std::vector<int>{3, 2, 1, 0});

  SUBCASE("involution") {
    const RankedList twice = reverse_pair(swapped, 1, 3);
    CHECK(twice.doc_indices == ranking.doc_indices);
  }
  SUBCASE("self swap is the identity") {
    CHECK(reverse_pair(ranking, 2, 2).doc_indices == ranking.doc_indices);
  }
  SUBCASE("multiset of displayed documents is preserved") {
    auto a = ranking.doc_indices;
    auto b = swapped.doc_indices;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
  SUBCASE("undisplayed documents are rejected") {
    ranking.doc_indices = {1, 2};
    CHECK_THROWS_AS(reverse_pair(ranking, 1, 3), std::invalid_argument);
  }
}

TEST_CASE("sampler passes a chi-square test against the exact distribution") {
  const std::vector<double> scores{0.9, -0.4, 0.1, 0.5};
  std::vector<double> weights;
  for (double s : scores) weights.push_back(std::exp(s));

  RandomStream rng(2024);
  std::map<std::vector<int>, int> counts;
  const int samples = 100000;
  for (int s = 0; s < samples; ++s) {
    ++counts[sample_ranking(scores, 4, rng).doc_indices];
  }

  double statistic = 0.0;
  for (const auto& ordering : all_orderings(4)) {
    const double expected =
        samples * exact_ordering_probability(weights, ordering);
    const double observed = counts[ordering];
    statistic += (observed - expected) * (observed - expected) / expected;
  }
  boost::math::chi_squared dist(24 - 1);
  const double p_value = 1.0 - boost::math::cdf(dist, statistic);
  CHECK(p_value > 0.001);
}
