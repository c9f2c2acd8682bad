#include "sevpredict/cart.hpp"

#include <algorithm>
#include <ostream>
#include <stack>

#include "sevpredict/error.hpp"

namespace sevpredict {

void TreeConfig::validate() const {
  if (min_samples_split < 2) throw DomainError("min_samples_split must be at least 2");
}

double gini_impurity(const ClassCounts& counts) noexcept {
  std::int64_t n = 0;
  for (auto c : counts) n += c;
  if (n == 0) return 0.0;
  double sum_sq = 0.0;
  for (auto c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(n);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

namespace {

__extension__ typedef __int128 Wide;

Severity majority_of(const ClassCounts& counts) noexcept {
  std::size_t best = 0;
  for (std::size_t j = 1; j < kNumClasses; ++j) {
    if (counts[j] > counts[best]) best = j;
  }
  return kAllSeverities[best];
}

std::int64_t sum_of_squares(const ClassCounts& counts) noexcept {
  std::int64_t s = 0;
  for (auto c : counts) s += c * c;
  return s;
}

// Weighted child Gini of a split is 1 - score/n with
// score = sum(K_L^2)/n_L + sum(K_R^2)/n_R. Scores are kept as exact
// fractions so ties compare exactly.
struct Score {
  Wide num = 0;
  Wide den = 1;

  bool better_than(const Score& other) const noexcept {
    return num * other.den > other.num * den;
  }
};

struct Candidate {
  std::size_t feature = 0;
  double threshold = 0.0;
  Score score;
};

double midpoint(double lo, double hi) noexcept {
  double mid = lo + (hi - lo) / 2.0;
  if (!(mid < hi)) mid = lo;
  return mid;
}

// Sweeps one feature over `rows` (indices into `data`). `order` is scratch.
std::optional<Candidate> scan_feature(std::span<const LabelledInstance> data,
                                      std::span<const std::size_t> rows, std::size_t feature,
                                      const ClassCounts& node_counts,
                                      std::vector<std::size_t>& order) {
  order.assign(rows.begin(), rows.end());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return data[a].features[feature] < data[b].features[feature];
  });
  const auto n = static_cast<std::int64_t>(order.size());
  ClassCounts left{};
  std::optional<Candidate> best;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    ++left[index_of(data[order[i]].label)];
    const double lo = data[order[i]].features[feature];
    const double hi = data[order[i + 1]].features[feature];
    if (!(lo < hi)) continue;
    ClassCounts right{};
    for (std::size_t j = 0; j < kNumClasses; ++j) right[j] = node_counts[j] - left[j];
    const auto n_left = static_cast<std::int64_t>(i + 1);
    const auto n_right = n - n_left;
    Score score{Wide{sum_of_squares(left)} * n_right + Wide{sum_of_squares(right)} * n_left,
                Wide{n_left} * n_right};
    if (!best || score.better_than(best->score)) {
      best = Candidate{feature, midpoint(lo, hi), score};
    }
  }
  return best;
}

double decrease_of(const Score& score, const ClassCounts& counts, std::int64_t n) {
  const double nd = static_cast<double>(n);
  const double child = 1.0 - static_cast<double>(score.num) /
                                 (static_cast<double>(score.den) * nd);
  return gini_impurity(counts) - child;
}

ClassCounts count_labels(std::span<const LabelledInstance> data,
                         std::span<const std::size_t> rows) {
  ClassCounts counts{};
  for (auto r : rows) ++counts[index_of(data[r].label)];
  return counts;
}

}  // namespace

std::optional<SplitCandidate> best_split(std::span<const LabelledInstance> instances,
                                         std::size_t feature_index) {
  if (instances.size() < 2) return std::nullopt;
  std::vector<std::size_t> rows(instances.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (feature_index >= instances[i].features.size()) {
      throw DomainError("feature index out of range");
    }
    rows[i] = i;
  }
  const auto counts = count_labels(instances, rows);
  std::vector<std::size_t> scratch;
  auto cand = scan_feature(instances, rows, feature_index, counts, scratch);
  if (!cand) return std::nullopt;
  return SplitCandidate{cand->threshold,
                        decrease_of(cand->score, counts,
                                    static_cast<std::int64_t>(instances.size()))};
}

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, std::vector<std::string> schema,
                           std::size_t n_features)
    : nodes_(std::move(nodes)), schema_(std::move(schema)), n_features_(n_features) {
  if (nodes_.empty()) throw DomainError("a tree needs at least one node");
}

const TreeNode& DecisionTree::leaf_for(std::span<const double> features) const {
  if (features.size() != n_features_) {
    throw DomainError("feature vector has " + std::to_string(features.size()) +
                      " values, tree expects " + std::to_string(n_features_));
  }
  const TreeNode* node = &nodes_.front();
  while (!node->is_leaf()) {
    const auto next = features[node->feature] <= node->threshold ? node->left : node->right;
    node = &nodes_[static_cast<std::size_t>(next)];
  }
  return *node;
}

std::size_t DecisionTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t DecisionTree::depth() const noexcept {
  std::size_t deepest = 0;
  std::stack<std::pair<std::int32_t, std::size_t>> todo;
  todo.push({0, 0});
  while (!todo.empty()) {
    auto [id, d] = todo.top();
    todo.pop();
    const auto& node = nodes_[static_cast<std::size_t>(id)];
    deepest = std::max(deepest, d);
    if (!node.is_leaf()) {
      todo.push({node.left, d + 1});
      todo.push({node.right, d + 1});
    }
  }
  return deepest;
}

void DecisionTree::dump(std::ostream& out) const {
  std::stack<std::pair<std::int32_t, std::size_t>> todo;
  todo.push({0, 0});
  while (!todo.empty()) {
    auto [id, d] = todo.top();
    todo.pop();
    const auto& node = nodes_[static_cast<std::size_t>(id)];
    out << std::string(2 * d, ' ');
    if (node.is_leaf()) {
      out << "leaf " << to_string(node.majority) << " [";
      for (std::size_t j = 0; j < kNumClasses; ++j) out << (j ? " " : "") << node.counts[j];
      out << "] n=" << node.total << '\n';
    } else {
      const auto name = node.feature < schema_.size() ? schema_[node.feature]
                                                      : "f" + std::to_string(node.feature);
      out << name << " <= " << node.threshold << '\n';
      todo.push({node.right, d + 1});
      todo.push({node.left, d + 1});
    }
  }
}

DecisionTree fit_tree(std::span<const LabelledInstance> train, const TreeConfig& config,
                      std::vector<std::string> schema) {
  config.validate();
  if (train.empty()) throw DomainError("cannot fit a tree on an empty training set");
  const auto n_features = train.front().features.size();
  for (const auto& inst : train) {
    if (inst.features.size() != n_features) {
      throw DomainError("training instances have inconsistent dimension");
    }
  }

  struct Work {
    std::int32_t node;
    std::vector<std::size_t> rows;
    std::size_t depth;
  };
  std::vector<TreeNode> nodes(1);
  std::vector<Work> todo;
  {
    std::vector<std::size_t> all(train.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    todo.push_back({0, std::move(all), 0});
  }
  std::vector<std::size_t> scratch;
  while (!todo.empty()) {
    Work work = std::move(todo.back());
    todo.pop_back();
    const auto counts = count_labels(train, work.rows);
    {
      auto& node = nodes[static_cast<std::size_t>(work.node)];
      node.counts = counts;
      node.total = static_cast<std::int64_t>(work.rows.size());
      node.majority = majority_of(counts);
    }
    const bool pure =
        std::count_if(counts.begin(), counts.end(), [](std::int64_t c) { return c > 0; }) <= 1;
    if (pure || work.rows.size() < config.min_samples_split ||
        (config.max_depth && work.depth >= *config.max_depth)) {
      continue;
    }

    std::optional<Candidate> best;
    for (std::size_t f = 0; f < n_features; ++f) {
      auto cand = scan_feature(train, work.rows, f, counts, scratch);
      if (cand && (!best || cand->score.better_than(best->score))) best = cand;
    }
    if (!best) continue;  // every instance has the same feature vector

    std::vector<std::size_t> left_rows, right_rows;
    for (auto r : work.rows) {
      (train[r].features[best->feature] <= best->threshold ? left_rows : right_rows).push_back(r);
    }
    const auto left_id = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();
    nodes.emplace_back();
    auto& node = nodes[static_cast<std::size_t>(work.node)];
    node.feature = best->feature;
    node.threshold = best->threshold;
    node.left = left_id;
    node.right = left_id + 1;
    todo.push_back({left_id + 1, std::move(right_rows), work.depth + 1});
    todo.push_back({left_id, std::move(left_rows), work.depth + 1});
  }
  return DecisionTree(std::move(nodes), std::move(schema), n_features);
}

Severity predict_label(const DecisionTree& tree, std::span<const double> features) {
  return tree.leaf_for(features).majority;
}

Prediction predict_confidence(const DecisionTree& tree, std::span<const double> features) {
  const auto& leaf = tree.leaf_for(features);
  return {leaf.majority, static_cast<double>(leaf.counts[index_of(leaf.majority)]) /
                             static_cast<double>(leaf.total)};
}

}  // namespace sevpredict
