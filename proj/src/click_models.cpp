#include "oltr/click_models.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace oltr {

ClickModelSpec builtin_click_model(const std::string& name) {
  if (name == "perfect") {
    return {"perfect", {0.0, 0.2, 0.4, 0.8, 1.0}, {0.0, 0.0, 0.0, 0.0, 0.0}};
  }
  if (name == "navigational") {
    return {"navigational",
            {0.05, 0.3, 0.5, 0.7, 0.95},
            {0.2, 0.3, 0.5, 0.7, 0.9}};
  }
  if (name == "informational") {
    return {"informational",
            {0.4, 0.6, 0.7, 0.8, 0.9},
            {0.1, 0.2, 0.3, 0.4, 0.5}};
  }
  throw std::invalid_argument("unknown click model: " + name);
}

ClickModelSpec load_click_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read click model file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  ClickModelSpec spec;
  spec.name = doc.value("name", "custom");
  const auto clicks = doc.at("click_prob").get<std::vector<double>>();
  const auto stops = doc.at("stop_prob").get<std::vector<double>>();
  if (clicks.size() != 5 || stops.size() != 5) {
    throw std::runtime_error("click model tables must have 5 entries each");
  }
  for (int i = 0; i < 5; ++i) {
    if (clicks[i] < 0.0 || clicks[i] > 1.0 || stops[i] < 0.0 ||
        stops[i] > 1.0) {
      throw std::runtime_error("click model probabilities must be in [0,1]");
    }
    spec.click_prob[i] = clicks[i];
    spec.stop_prob[i] = stops[i];
  }
  return spec;
}

int grade_to_column(int grade, int max_grade) {
  if (max_grade != 2 && max_grade != 4) {
    throw std::invalid_argument("max_grade must be 2 or 4");
  }
  if (grade < 0 || grade > max_grade) {
    throw std::invalid_argument("grade " + std::to_string(grade) +
                                " outside [0, " + std::to_string(max_grade) +
                                "]");
  }
  return max_grade == 4 ? grade : grade * 2;
}

ClickRealization simulate_clicks(const ClickModelSpec& spec,
                                 const RankedList& ranking,
                                 std::span<const int> grades, int max_grade,
                                 RandomStream& rng) {
  if (grades.size() != ranking.size()) {
    throw std::invalid_argument("grades not aligned with displayed ranking");
  }
  ClickRealization result;
  result.clicked.assign(ranking.size(), false);
  for (std::size_t pos = 0; pos < ranking.size(); ++pos) {
    const int column = grade_to_column(grades[pos], max_grade);
    if (rng.bernoulli(spec.click_prob[static_cast<std::size_t>(column)])) {
      result.clicked[pos] = true;
      if (rng.bernoulli(spec.stop_prob[static_cast<std::size_t>(column)])) {
        break;
      }
    }
  }
  return result;
}

}  // namespace oltr
