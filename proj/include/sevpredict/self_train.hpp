#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sevpredict/adasyn.hpp"
#include "sevpredict/cart.hpp"
#include "sevpredict/corpus.hpp"

namespace sevpredict {

struct SelfTrainConfig {
  double gamma = 0.99;  // acceptance threshold on leaf confidence
  std::size_t max_iterations = 50;
  bool oversample_first = true;

  void validate() const;
};

enum class StopReason : std::uint8_t { ExhaustedUnlabelled, NoProgress, MaxIterations };

std::string_view to_string(StopReason r) noexcept;

struct IterationRecord {
  std::size_t iteration = 0;
  std::size_t unlabelled_before = 0;
  std::size_t accepted = 0;
  ClassCounts accepted_per_class{};
  double supervised_risk = 0.0;
  double unsupervised_risk = 0.0;
};

struct SelfTrainTrace {
  std::vector<IterationRecord> iterations;
  StopReason status = StopReason::ExhaustedUnlabelled;
  std::size_t initial_unlabelled = 0;
  std::size_t labelled_after_oversampling = 0;
};

struct SelfTrainResult {
  DecisionTree tree;
  std::vector<LabelledInstance> labelled;  // oversampled S plus accepted pseudo instances
  std::vector<UnlabelledInstance> residual;
  SelfTrainTrace trace;
};

struct RiskTerms {
  double supervised = 0.0;
  double unsupervised = 0.0;
};

// Empirical risk of a tree under 0-1 loss: the mean training error on S, and
// the thresholded pseudo-label disagreement on U (0 when U is empty).
RiskTerms pseudo_label_risk(const DecisionTree& tree, std::span<const LabelledInstance> labelled,
                            std::span<const UnlabelledInstance> unlabelled, double gamma);

// Iterative self-training. Each round fits a tree on the current labelled
// set, pseudo-labels every remaining unlabelled instance and moves the ones
// whose confidence reaches gamma into the labelled set as a batch. Stops when
// U is empty, a round accepts nothing, or max_iterations rounds have run.
SelfTrainResult self_train(std::span<const LabelledInstance> labelled,
                           std::span<const UnlabelledInstance> unlabelled,
                           const SelfTrainConfig& config, const TreeConfig& tree_config,
                           const SamplerConfig& sampler_config,
                           std::vector<std::string> schema = {});

}  // namespace sevpredict
