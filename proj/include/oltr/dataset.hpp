#ifndef OLTR_DATASET_HPP_
#define OLTR_DATASET_HPP_

#include <string>
#include <vector>

namespace oltr {

// One judged query-document pair: normalized feature vector plus graded
// relevance. doc_index is the position of the document within its query's
// candidate list and is the identifier used by rankings.
struct Document {
  std::vector<double> features;
  int relevance = 0;
  int doc_index = 0;
};

struct Query {
  std::string query_id;
  std::vector<Document> documents;
};

struct Fold {
  std::vector<Query> train;
  std::vector<Query> validation;
  std::vector<Query> test;
};

struct QueryDataset {
  std::string name;
  int feature_dim = 0;
  int max_grade = 0;
  std::vector<Fold> folds;
};

// Descriptor of an on-disk dataset. Multi-fold datasets live in
// <root>/Fold<i>/{train,vali,test}.txt; single-fold ones keep the three
// files directly under <root>.
struct DatasetInfo {
  std::string name;
  int feature_dim = 0;
  int max_grade = 2;
  int num_folds = 1;
  bool normalize = true;
};

// Returns the descriptor for a known dataset name (MQ2007, MQ2008,
// MSLR-WEB10K, MSLR-WEB30K, Yahoo, Istella). Throws for unknown names.
DatasetInfo builtin_dataset_info(const std::string& name);

// Parses a LETOR/SVMlight ranking file: `<grade> qid:<id> <fid>:<val> ...`
// with optional `# comment`. Feature ids are 1-based; ids absent from a
// line default to 0.0. Queries are grouped by qid in order of first
// appearance. Malformed lines and out-of-range feature ids raise a
// std::runtime_error naming the offending line.
std::vector<Query> parse_letor_file(const std::string& path, int feature_dim);

// Same grammar, applied to an in-memory string (used by tests and by the
// round-trip serializer below). `origin` is used in error messages.
std::vector<Query> parse_letor_lines(const std::string& text, int feature_dim,
                                     const std::string& origin);

// Writes a query back out as LETOR lines, skipping zero-valued features.
std::string serialize_query_letor(const Query& query);

// Min-max scales each feature dimension to [0,1] within the query.
// Dimensions that are constant across the query's documents map to 0.0.
Query normalize_per_query(const Query& query);

// Loads all folds of a dataset, normalizing per query when the descriptor
// asks for it. Missing files raise a std::runtime_error naming the path;
// a train/validation/test overlap within a fold is also an error.
QueryDataset load_dataset(const std::string& root, const DatasetInfo& info);

}  // namespace oltr

#endif  // OLTR_DATASET_HPP_
