#include "sevpredict/self_train.hpp"

#include <optional>

#include "sevpredict/error.hpp"

namespace sevpredict {

void SelfTrainConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [0, 1]");
  if (max_iterations < 1) throw DomainError("max_iterations must be at least 1");
}

std::string_view to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::ExhaustedUnlabelled: return "exhausted_U";
    case StopReason::NoProgress: return "no_progress";
    case StopReason::MaxIterations: return "max_iterations";
  }
  return "exhausted_U";
}

RiskTerms pseudo_label_risk(const DecisionTree& tree, std::span<const LabelledInstance> labelled,
                            std::span<const UnlabelledInstance> unlabelled, double gamma) {
  if (labelled.empty()) throw DomainError("risk needs a non-empty labelled set");
  RiskTerms risk;
  std::size_t wrong = 0;
  for (const auto& inst : labelled) {
    if (predict_label(tree, inst.features) != inst.label) ++wrong;
  }
  risk.supervised = static_cast<double>(wrong) / static_cast<double>(labelled.size());
  if (!unlabelled.empty()) {
    std::size_t disagree = 0;
    for (const auto& inst : unlabelled) {
      const auto pseudo = predict_confidence(tree, inst.features);
      if (pseudo.confidence >= gamma && predict_label(tree, inst.features) != pseudo.label) {
        ++disagree;
      }
    }
    risk.unsupervised = static_cast<double>(disagree) / static_cast<double>(unlabelled.size());
  }
  return risk;
}

SelfTrainResult self_train(std::span<const LabelledInstance> labelled,
                           std::span<const UnlabelledInstance> unlabelled,
                           const SelfTrainConfig& config, const TreeConfig& tree_config,
                           const SamplerConfig& sampler_config,
                           std::vector<std::string> schema) {
  config.validate();
  tree_config.validate();
  if (labelled.empty()) throw DomainError("self-training needs a non-empty labelled set");

  std::vector<LabelledInstance> train =
      config.oversample_first ? adasyn_balance(labelled, sampler_config)
                              : std::vector<LabelledInstance>(labelled.begin(), labelled.end());
  std::vector<UnlabelledInstance> pool(unlabelled.begin(), unlabelled.end());

  SelfTrainTrace trace;
  trace.initial_unlabelled = pool.size();
  trace.labelled_after_oversampling = train.size();

  // Holds the tree fitted on the current `train` when it is still valid.
  std::optional<DecisionTree> current;
  std::size_t iteration = 1;
  while (true) {
    if (pool.empty()) {
      trace.status = StopReason::ExhaustedUnlabelled;
      break;
    }
    if (iteration > config.max_iterations) {
      trace.status = StopReason::MaxIterations;
      break;
    }
    current.emplace(fit_tree(train, tree_config, schema));
    const auto& tree = *current;

    IterationRecord rec;
    rec.iteration = iteration;
    rec.unlabelled_before = pool.size();
    const auto risk = pseudo_label_risk(tree, train, pool, config.gamma);
    rec.supervised_risk = risk.supervised;
    rec.unsupervised_risk = risk.unsupervised;

    std::vector<UnlabelledInstance> rejected;
    std::vector<LabelledInstance> accepted;
    for (auto& inst : pool) {
      const auto pseudo = predict_confidence(tree, inst.features);
      if (pseudo.confidence >= config.gamma) {
        ++rec.accepted_per_class[index_of(pseudo.label)];
        accepted.push_back({std::move(inst.module_id), std::move(inst.features), inst.loc,
                            pseudo.label, Provenance::Pseudo, iteration});
      } else {
        rejected.push_back(std::move(inst));
      }
    }
    rec.accepted = accepted.size();
    pool = std::move(rejected);
    trace.iterations.push_back(rec);

    if (accepted.empty()) {
      trace.status = StopReason::NoProgress;
      break;
    }
    for (auto& a : accepted) train.push_back(std::move(a));
    current.reset();
    ++iteration;
  }

  DecisionTree final_tree = current ? std::move(*current) : fit_tree(train, tree_config, schema);
  return {std::move(final_tree), std::move(train), std::move(pool), std::move(trace)};
}

}  // namespace sevpredict
