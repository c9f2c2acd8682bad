#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sevpredict {

// Per-feature min-max scaling to [0, 1]. Constant features map to 0.
class MinMaxScaler {
 public:
  MinMaxScaler() = default;
  explicit MinMaxScaler(std::span<const std::vector<double>> rows);

  std::vector<double> transform(std::span<const double> x) const;
  std::vector<std::vector<double>> transform_all(std::span<const std::vector<double>> rows) const;

  std::size_t dimension() const noexcept { return min_.size(); }

 private:
  std::vector<double> min_;
  std::vector<double> range_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

inline constexpr std::size_t kNoExclusion = static_cast<std::size_t>(-1);

// Indices of the min(k, pool.size()) points closest to `query` by Euclidean
// distance, nearest first; equal distances resolve to the lower index.
// `exclude` drops one pool index from consideration (typically the query's
// own position). Expects pool non-empty and k >= 1.
std::vector<std::size_t> nearest_neighbors(std::span<const double> query,
                                           std::span<const std::vector<double>> pool,
                                           std::size_t k,
                                           std::size_t exclude = kNoExclusion);

}  // namespace sevpredict
