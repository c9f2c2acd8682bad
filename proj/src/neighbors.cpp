#include "sevpredict/neighbors.hpp"

#include <algorithm>
#include <utility>

#include "sevpredict/error.hpp"

namespace sevpredict {

MinMaxScaler::MinMaxScaler(std::span<const std::vector<double>> rows) {
  if (rows.empty()) return;
  const auto dim = rows.front().size();
  min_.assign(rows.front().begin(), rows.front().end());
  std::vector<double> max = min_;
  for (const auto& row : rows) {
    if (row.size() != dim) throw DomainError("rows have inconsistent dimension");
    for (std::size_t f = 0; f < dim; ++f) {
      min_[f] = std::min(min_[f], row[f]);
      max[f] = std::max(max[f], row[f]);
    }
  }
  range_.resize(dim);
  for (std::size_t f = 0; f < dim; ++f) range_[f] = max[f] - min_[f];
}

std::vector<double> MinMaxScaler::transform(std::span<const double> x) const {
  if (x.size() != min_.size()) throw DomainError("feature vector does not match scaler");
  std::vector<double> out(x.size());
  for (std::size_t f = 0; f < x.size(); ++f) {
    out[f] = range_[f] > 0.0 ? (x[f] - min_[f]) / range_[f] : 0.0;
  }
  return out;
}

std::vector<std::vector<double>> MinMaxScaler::transform_all(
    std::span<const std::vector<double>> rows) const {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(transform(row));
  return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t f = 0; f < a.size(); ++f) {
    const double d = a[f] - b[f];
    sum += d * d;
  }
  return sum;
}

std::vector<std::size_t> nearest_neighbors(std::span<const double> query,
                                           std::span<const std::vector<double>> pool,
                                           std::size_t k, std::size_t exclude) {
  if (pool.empty()) throw DomainError("neighbor pool is empty");
  if (k == 0) throw DomainError("k must be at least 1");
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i == exclude) continue;
    ranked.emplace_back(squared_distance(query, pool[i]), i);
  }
  const auto take = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end());
  std::vector<std::size_t> out(take);
  for (std::size_t j = 0; j < take; ++j) out[j] = ranked[j].second;
  return out;
}

}  // namespace sevpredict
