#include "sevpredict/experiment.hpp"

#include <algorithm>

#include "sevpredict/error.hpp"

namespace sevpredict {

void PipelineConfig::validate() const {
  if (split.folds) {
    if (*split.folds < 2) throw DomainError("k-fold mode needs at least 2 folds");
  } else if (!(split.test_fraction > 0.0 && split.test_fraction < 1.0)) {
    throw DomainError("test fraction must lie in (0, 1)");
  }
  sampler.validate();
  tree.validate();
  selftrain.validate();
  econ.validate();
}

namespace {

std::vector<Outcome> score(const DecisionTree& tree, const std::vector<LabelledInstance>& test) {
  std::vector<Outcome> out;
  out.reserve(test.size());
  for (const auto& inst : test) {
    out.push_back({inst.label, predict_label(tree, inst.features), inst.loc, inst.module_id});
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const Corpus& corpus, const PipelineConfig& config,
                                std::string project) {
  config.validate();
  const auto summary = summarize(corpus);
  const auto classes = std::count_if(summary.class_counts.begin(), summary.class_counts.end(),
                                     [](std::int64_t c) { return c > 0; });
  if (classes < 2) throw DomainError("labelled set must cover at least two severity classes");

  std::vector<Split> splits;
  if (config.split.folds) {
    splits = stratified_kfold(corpus, *config.split.folds, config.seed);
  } else {
    splits.push_back(stratified_split(corpus, config.split.test_fraction, config.seed));
  }

  ExperimentReport report;
  report.project = std::move(project);
  report.config = config;
  report.corpus = summary;

  for (std::size_t f = 0; f < splits.size(); ++f) {
    const auto& split = splits[f];
    if (split.test.empty()) {
      throw DomainError("test split is empty; raise the test fraction or add data");
    }
    SamplerConfig sampler = config.sampler;
    sampler.seed = config.seed + 1 + f;

    const auto bst_train = config.bst_oversample ? adasyn_balance(split.train.labelled, sampler)
                                                 : split.train.labelled;
    const auto bst_tree = fit_tree(bst_train, config.tree, corpus.schema);
    auto bst_scored = score(bst_tree, split.test);

    auto st = self_train(split.train.labelled, split.train.unlabelled, config.selftrain,
                         config.tree, sampler, corpus.schema);
    auto ast_scored = score(st.tree, split.test);

    report.folds.push_back({f, bst_train.size(), st.labelled.size(), st.residual.size(),
                            std::move(st.trace)});
    std::move(bst_scored.begin(), bst_scored.end(), std::back_inserter(report.bst_outcomes));
    std::move(ast_scored.begin(), ast_scored.end(), std::back_inserter(report.ast_outcomes));
  }

  report.bst = full_report(OutcomeSet(report.bst_outcomes), config.econ);
  report.ast = full_report(OutcomeSet(report.ast_outcomes), config.econ);
  report.delta = compare(report.bst, report.ast);
  return report;
}

}  // namespace sevpredict
