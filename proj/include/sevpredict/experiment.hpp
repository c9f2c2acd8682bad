#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sevpredict/adasyn.hpp"
#include "sevpredict/cart.hpp"
#include "sevpredict/corpus.hpp"
#include "sevpredict/metrics.hpp"
#include "sevpredict/self_train.hpp"

namespace sevpredict {

struct SplitConfig {
  double test_fraction = 0.2;
  std::optional<std::size_t> folds;  // k-fold mode when set
};

// Seeds: the split uses `seed`; oversampling for fold i uses `seed + 1 + i`
// (the holdout split is fold 0). `sampler.seed` is ignored.
struct PipelineConfig {
  std::uint64_t seed = 0;
  SplitConfig split;
  SamplerConfig sampler;
  TreeConfig tree;
  SelfTrainConfig selftrain;
  EconConfig econ;
  bool bst_oversample = true;

  void validate() const;
};

struct FoldTrace {
  std::size_t fold = 0;
  std::size_t bst_train_size = 0;
  std::size_t ast_train_size = 0;
  std::size_t residual_unlabelled = 0;
  SelfTrainTrace trace;
};

struct ExperimentReport {
  std::string project;
  PipelineConfig config;
  CorpusSummary corpus;
  MetricReport bst;
  MetricReport ast;
  MetricDelta delta;  // ast - bst
  std::vector<FoldTrace> folds;
  // Pooled test predictions of each arm, identical module order.
  std::vector<Outcome> bst_outcomes;
  std::vector<Outcome> ast_outcomes;
};

// Before/after self-training comparison on one corpus. Both arms are scored
// on the same held-out labelled modules; unlabelled modules only ever feed
// the self-training arm.
ExperimentReport run_experiment(const Corpus& corpus, const PipelineConfig& config,
                                std::string project = "project");

}  // namespace sevpredict
