#pragma once

#include <random>
#include <vector>

#include "sevpredict/metrics.hpp"

namespace gen {

inline sevpredict::OutcomeSet random_outcomes(std::mt19937_64& rng) {
  using namespace sevpredict;
  std::uniform_int_distribution<int> size(1, 80), cls(0, kNumClasses - 1);
  std::uniform_int_distribution<std::int64_t> loc(1, 5000);
  std::bernoulli_distribution mostly_clean(0.5);
  const int n = size(rng);
  std::vector<Outcome> out;
  for (int i = 0; i < n; ++i) {
    const auto actual = mostly_clean(rng) ? Severity::Clean : kAllSeverities[cls(rng)];
    const auto predicted = mostly_clean(rng) ? actual : kAllSeverities[cls(rng)];
    out.push_back({actual, predicted, loc(rng), "m" + std::to_string(i)});
  }
  return OutcomeSet(std::move(out));
}

inline std::int64_t loc_where(const sevpredict::OutcomeSet& set, bool actual_clean) {
  std::int64_t sum = 0;
  for (const auto& o : set.outcomes())
    if ((o.actual == sevpredict::Severity::Clean) == actual_clean) sum += o.loc;
  return sum;
}

}  // namespace gen
