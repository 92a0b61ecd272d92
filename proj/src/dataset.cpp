#include "oltr/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace oltr {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, int line_no,
                             const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                           ": " + what);
}

}  // namespace

DatasetInfo builtin_dataset_info(const std::string& name) {
  if (name == "MQ2007") return {"MQ2007", 46, 2, 5, true};
  if (name == "MQ2008") return {"MQ2008", 46, 2, 5, true};
  if (name == "MSLR-WEB10K") return {"MSLR-WEB10K", 136, 4, 5, true};
  if (name == "MSLR-WEB30K") return {"MSLR-WEB30K", 136, 4, 5, true};
  if (name == "Yahoo") return {"Yahoo", 700, 4, 1, true};
  if (name == "Istella") return {"Istella", 220, 4, 1, true};
  throw std::invalid_argument("unknown dataset name: " + name);
}

std::vector<Query> parse_letor_lines(const std::string& text, int feature_dim,
                                     const std::string& origin) {
  if (feature_dim <= 0) throw std::invalid_argument("feature_dim must be > 0");

  std::vector<Query> queries;
  std::unordered_map<std::string, std::size_t> query_pos;

  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    // Strip trailing comment and whitespace.
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    if (line.empty()) continue;

    std::istringstream tokens(line);
    int grade;
    if (!(tokens >> grade) || grade < 0) {
      parse_fail(origin, line_no, "expected a nonnegative integer grade");
    }

    std::string qid_token;
    if (!(tokens >> qid_token) || qid_token.rfind("qid:", 0) != 0 ||
        qid_token.size() == 4) {
      parse_fail(origin, line_no, "expected qid:<id> after the grade");
    }
    const std::string qid = qid_token.substr(4);

    Document doc;
    doc.features.assign(static_cast<std::size_t>(feature_dim), 0.0);
    doc.relevance = grade;

    std::string pair;
    while (tokens >> pair) {
      const auto colon = pair.find(':');
      if (colon == std::string::npos || colon == 0 ||
          colon + 1 == pair.size()) {
        parse_fail(origin, line_no, "malformed feature token '" + pair + "'");
      }
      int fid;
      double value;
      try {
        std::size_t idx = 0;
        fid = std::stoi(pair.substr(0, colon), &idx);
        if (idx != colon) throw std::invalid_argument("");
        value = std::stod(pair.substr(colon + 1), &idx);
        if (idx != pair.size() - colon - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        parse_fail(origin, line_no, "malformed feature token '" + pair + "'");
      }
      if (fid < 1 || fid > feature_dim) {
        parse_fail(origin, line_no,
                   "feature id " + std::to_string(fid) +
                       " outside [1, " + std::to_string(feature_dim) + "]");
      }
      doc.features[static_cast<std::size_t>(fid - 1)] = value;
    }

    auto it = query_pos.find(qid);
    if (it == query_pos.end()) {
      query_pos.emplace(qid, queries.size());
      queries.push_back(Query{qid, {}});
      it = query_pos.find(qid);
    }
    Query& query = queries[it->second];
    doc.doc_index = static_cast<int>(query.documents.size());
    query.documents.push_back(std::move(doc));
  }
  return queries;
}

std::vector<Query> parse_letor_file(const std::string& path, int feature_dim) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open LETOR file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_letor_lines(buffer.str(), feature_dim, path);
}

std::string serialize_query_letor(const Query& query) {
  std::ostringstream out;
  char buf[64];
  for (const Document& doc : query.documents) {
    out << doc.relevance << " qid:" << query.query_id;
    for (std::size_t i = 0; i < doc.features.size(); ++i) {
      if (doc.features[i] == 0.0) continue;
      std::snprintf(buf, sizeof(buf), "%.17g", doc.features[i]);
      out << ' ' << (i + 1) << ':' << buf;
    }
    out << '\n';
  }
  return out.str();
}

Query normalize_per_query(const Query& query) {
  if (query.documents.empty()) {
    throw std::invalid_argument("cannot normalize an empty query");
  }
  const std::size_t dim = query.documents.front().features.size();
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (const Document& doc : query.documents) {
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = std::min(lo[i], doc.features[i]);
      hi[i] = std::max(hi[i], doc.features[i]);
    }
  }
  Query result = query;
  for (Document& doc : result.documents) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double range = hi[i] - lo[i];
      doc.features[i] = range > 0.0 ? (doc.features[i] - lo[i]) / range : 0.0;
    }
  }
  return result;
}

namespace {

std::vector<Query> load_partition(const std::string& path,
                                  const DatasetInfo& info) {
  if (!std::filesystem::exists(path)) {
    throw std::runtime_error("dataset file not found: " + path);
  }
  std::vector<Query> queries = parse_letor_file(path, info.feature_dim);
  for (Query& query : queries) {
    for (const Document& doc : query.documents) {
      if (doc.relevance > info.max_grade) {
        throw std::runtime_error("grade " + std::to_string(doc.relevance) +
                                 " above max_grade in " + path +
                                 " (query " + query.query_id + ")");
      }
    }
    if (info.normalize) query = normalize_per_query(query);
  }
  return queries;
}

void check_disjoint(const Fold& fold, int fold_no) {
  std::unordered_set<std::string> seen;
  auto add_all = [&](const std::vector<Query>& part, const char* label) {
    for (const Query& query : part) {
      if (!seen.insert(query.query_id).second) {
        throw std::runtime_error("query " + query.query_id +
                                 " appears in more than one partition of fold " +
                                 std::to_string(fold_no) + " (" + label + ")");
      }
    }
  };
  add_all(fold.train, "train");
  add_all(fold.validation, "validation");
  add_all(fold.test, "test");
}

}  // namespace

QueryDataset load_dataset(const std::string& root, const DatasetInfo& info) {
  QueryDataset dataset;
  dataset.name = info.name;
  dataset.feature_dim = info.feature_dim;
  dataset.max_grade = info.max_grade;

  for (int f = 1; f <= info.num_folds; ++f) {
    std::filesystem::path dir(root);
    if (info.num_folds > 1) dir /= "Fold" + std::to_string(f);
    Fold fold;
    fold.train = load_partition((dir / "train.txt").string(), info);
    fold.validation = load_partition((dir / "vali.txt").string(), info);
    fold.test = load_partition((dir / "test.txt").string(), info);
    check_disjoint(fold, f);
    dataset.folds.push_back(std::move(fold));
  }
  return dataset;
}

}  // namespace oltr
