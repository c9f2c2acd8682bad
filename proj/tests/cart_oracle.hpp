#pragma once

// Test-only brute force for the CART root split: evaluates every
// (feature, midpoint) candidate by direct Gini counting.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "sevpredict/corpus.hpp"

namespace oracle {

struct RootSplit {
  std::size_t feature;
  double threshold;
  double impurity;
};

inline double gini(const std::vector<const sevpredict::LabelledInstance*>& v) {
  if (v.empty()) return 0.0;
  double counts[sevpredict::kNumClasses] = {};
  for (auto* p : v) counts[sevpredict::index_of(p->label)] += 1.0;
  double s = 0;
  for (double c : counts) s += (c / v.size()) * (c / v.size());
  return 1.0 - s;
}

inline bool is_pure(const std::vector<sevpredict::LabelledInstance>& data) {
  return std::all_of(data.begin(), data.end(),
                     [&](auto& d) { return d.label == data.front().label; });
}

inline std::optional<RootSplit> brute_force_root(
    const std::vector<sevpredict::LabelledInstance>& data) {
  std::optional<RootSplit> best;
  const auto dim = data.front().features.size();
  const double n = static_cast<double>(data.size());
  for (std::size_t f = 0; f < dim; ++f) {
    std::set<double> values;
    for (const auto& d : data) values.insert(d.features[f]);
    std::vector<double> sorted(values.begin(), values.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      const double t = (sorted[i] + sorted[i + 1]) / 2.0;
      std::vector<const sevpredict::LabelledInstance*> left, right;
      for (const auto& d : data) (d.features[f] <= t ? left : right).push_back(&d);
      const double imp = left.size() / n * gini(left) + right.size() / n * gini(right);
      if (!best || imp < best->impurity - 1e-12) best = RootSplit{f, t, imp};
    }
  }
  return best;
}

inline bool has_conflicting_duplicates(const std::vector<sevpredict::LabelledInstance>& data) {
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = i + 1; j < data.size(); ++j)
      if (data[i].features == data[j].features && data[i].label != data[j].label) return true;
  return false;
}

// Up to 64 instances, 4 features, 3 classes. Half the sets draw features
// from a coarse grid so ties and duplicates occur.
inline std::vector<sevpredict::LabelledInstance> random_training_set(std::mt19937_64& rng) {
  using namespace sevpredict;
  std::uniform_int_distribution<int> size(2, 64), dims(1, 4), classes(1, 3), grid(0, 6);
  std::uniform_real_distribution<double> cont(-5.0, 5.0);
  const int n = size(rng), p = dims(rng), c = classes(rng);
  const bool coarse = std::bernoulli_distribution(0.5)(rng);
  std::vector<Severity> palette(kAllSeverities.begin(), kAllSeverities.end());
  std::shuffle(palette.begin(), palette.end(), rng);
  std::uniform_int_distribution<int> label(0, c - 1);
  std::vector<LabelledInstance> data;
  for (int i = 0; i < n; ++i) {
    std::vector<double> f(p);
    for (auto& v : f) v = coarse ? static_cast<double>(grid(rng)) : cont(rng);
    data.push_back({"r" + std::to_string(i), f, 1, palette[label(rng)]});
  }
  return data;
}

}  // namespace oracle
