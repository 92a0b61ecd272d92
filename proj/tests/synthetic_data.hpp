#ifndef OLTR_TESTS_SYNTHETIC_DATA_HPP_
#define OLTR_TESTS_SYNTHETIC_DATA_HPP_

#include <string>
#include <vector>

#include "oltr/dataset.hpp"

namespace oltr::testing {

struct SyntheticSpec {
  int n_queries = 60;
  int min_docs = 12;
  int max_docs = 24;
  int feature_dim = 20;
  int max_grade = 2;
  int folds = 2;
  std::uint64_t seed = 42;
};

// Generates a small LETOR-format dataset on disk whose informative features
// correlate linearly with the relevance grades, so that linear models can
// learn it quickly. Fold partitions rotate over equal query blocks. Returns
// the matching descriptor.
DatasetInfo write_synthetic_dataset(const std::string& root,
                                    const SyntheticSpec& spec);

// Convenience: generate into a fresh directory under the system temp dir.
std::string make_temp_dir(const std::string& prefix);

// In-memory query with the given grades; features are one-hot-ish vectors
// so tests can control scores precisely.
Query make_query(const std::string& id, const std::vector<int>& grades,
                 int feature_dim);

}  // namespace oltr::testing

#endif  // OLTR_TESTS_SYNTHETIC_DATA_HPP_
