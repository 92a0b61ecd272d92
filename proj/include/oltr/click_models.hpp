#ifndef OLTR_CLICK_MODELS_HPP_
#define OLTR_CLICK_MODELS_HPP_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "oltr/plackett_luce.hpp"
#include "oltr/random.hpp"

namespace oltr {

// Click decisions for one displayed ranking, aligned position by position.
struct ClickRealization {
  std::vector<bool> clicked;

  bool any() const {
    for (bool c : clicked) {
      if (c) return true;
    }
    return false;
  }
};

// A cascade user model: scan the list top-down, click with a probability
// given by the document's grade, and after a click stop scanning with a
// second grade-conditioned probability. Probabilities are indexed by a
// five-column grade scale (0..4).
struct ClickModelSpec {
  std::string name;
  std::array<double, 5> click_prob{};
  std::array<double, 5> stop_prob{};
};

// The three standard instantiations: "perfect", "navigational",
// "informational". Throws for other names.
ClickModelSpec builtin_click_model(const std::string& name);

// Loads a custom table from a JSON file {"click_prob": [...5], "stop_prob":
// [...5]}; all entries must be inside [0,1].
ClickModelSpec load_click_model(const std::string& path);

// Maps a dataset grade onto the five-column scale: identity for
// five-grade data, {0 -> 0, 1 -> 2, 2 -> 4} for three-grade data.
int grade_to_column(int grade, int max_grade);

// Simulates one scan over the displayed ranking. `grades` holds the
// relevance grade of each displayed document in display order.
ClickRealization simulate_clicks(const ClickModelSpec& spec,
                                 const RankedList& ranking,
                                 std::span<const int> grades, int max_grade,
                                 RandomStream& rng);

}  // namespace oltr

#endif  // OLTR_CLICK_MODELS_HPP_
