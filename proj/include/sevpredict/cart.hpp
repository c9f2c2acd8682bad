#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sevpredict/corpus.hpp"

namespace sevpredict {

struct TreeConfig {
  std::size_t min_samples_split = 2;
  std::optional<std::size_t> max_depth;  // unlimited when empty

  void validate() const;
};

struct TreeNode {
  static constexpr std::int32_t kNone = -1;

  // Internal nodes: value <= threshold goes left.
  std::size_t feature = 0;
  double threshold = 0.0;
  std::int32_t left = kNone;
  std::int32_t right = kNone;

  // Training class frequencies reaching this node (K_j), their sum (NL) and
  // the majority class, ties resolved toward the more severe class.
  ClassCounts counts{};
  std::int64_t total = 0;
  Severity majority = Severity::Clean;

  bool is_leaf() const noexcept { return left == kNone; }
};

struct Prediction {
  Severity label = Severity::Clean;
  double confidence = 0.0;  // K_majority / NL at the reached leaf
};

// Immutable once fitted; prediction is safe from many threads.
class DecisionTree {
 public:
  DecisionTree(std::vector<TreeNode> nodes, std::vector<std::string> schema,
               std::size_t n_features);

  const TreeNode& root() const noexcept { return nodes_.front(); }
  std::span<const TreeNode> nodes() const noexcept { return nodes_; }
  const std::vector<std::string>& schema() const noexcept { return schema_; }
  std::size_t n_features() const noexcept { return n_features_; }

  // Throws DomainError when the vector length differs from the training data.
  const TreeNode& leaf_for(std::span<const double> features) const;

  std::size_t leaf_count() const noexcept;
  std::size_t depth() const noexcept;

  // Indented human-readable listing; not a stable format.
  void dump(std::ostream& out) const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<std::string> schema_;
  std::size_t n_features_;
};

struct SplitCandidate {
  double threshold = 0.0;
  double impurity_decrease = 0.0;
};

// Best Gini split of `instances` on one feature. Candidate thresholds are
// midpoints between consecutive distinct sorted values; among equal
// impurities the lowest threshold wins. Empty for a constant feature or
// fewer than two instances.
std::optional<SplitCandidate> best_split(std::span<const LabelledInstance> instances,
                                         std::size_t feature_index);

double gini_impurity(const ClassCounts& counts) noexcept;

// Recursive binary splitting on weighted Gini impurity. A node becomes a
// leaf when it is pure, holds fewer than min_samples_split instances, has
// reached max_depth, or no feature separates its instances.
DecisionTree fit_tree(std::span<const LabelledInstance> train, const TreeConfig& config,
                      std::vector<std::string> schema = {});

Severity predict_label(const DecisionTree& tree, std::span<const double> features);
Prediction predict_confidence(const DecisionTree& tree, std::span<const double> features);

}  // namespace sevpredict
