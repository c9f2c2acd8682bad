#include <doctest.h>

#include <set>

#include "sevpredict/error.hpp"
#include "sevpredict/experiment.hpp"
#include "sevpredict/report_io.hpp"

using namespace sevpredict;

namespace {

Corpus synthetic(std::uint64_t seed, std::size_t unlabelled, double separation = 3.0) {
  SynthSpec spec;
  spec.class_counts = {6, 10, 14, 18, 60};
  spec.unlabelled = unlabelled;
  spec.separation = separation;
  spec.seed = seed;
  return synth_corpus(spec);
}

PipelineConfig config(std::uint64_t seed) {
  PipelineConfig c;
  c.seed = seed;
  return c;
}

std::vector<std::string> ids(const std::vector<Outcome>& v) {
  std::vector<std::string> out;
  for (const auto& o : v) out.push_back(o.module_id);
  return out;
}

}  // namespace

TEST_CASE("no unlabelled data leaves both arms identical") {
  auto report = run_experiment(synthetic(1, 0), config(11));
  CHECK(report.delta.accuracy == 0.0);
  CHECK(report.delta.psb == 0.0);
  CHECK(report.delta.system_risk_factor == 0.0);
  CHECK(report.delta.rst_hours == 0.0);
  REQUIRE(report.folds.size() == 1);
  CHECK(report.folds[0].trace.iterations.empty());
}

TEST_CASE("both arms are scored on the same modules") {
  auto report = run_experiment(synthetic(2, 40, 1.0), config(5));
  CHECK(ids(report.bst_outcomes) == ids(report.ast_outcomes));
  for (std::size_t i = 0; i < report.bst_outcomes.size(); ++i) {
    CHECK(report.bst_outcomes[i].loc == report.ast_outcomes[i].loc);
    CHECK(report.bst_outcomes[i].actual == report.ast_outcomes[i].actual);
  }
  CHECK(report.bst.total_loc == report.ast.total_loc);
  // 20% of each class, floored: 1 + 2 + 2 + 3 + 12.
  CHECK(report.bst.modules == 20);
}

TEST_CASE("unlabelled modules never reach the test set") {
  auto corpus = synthetic(3, 25);
  auto report = run_experiment(corpus, config(3));
  std::set<std::string> unl;
  for (const auto& u : corpus.unlabelled) unl.insert(u.module_id);
  for (const auto& o : report.bst_outcomes) CHECK(unl.count(o.module_id) == 0);
}

TEST_CASE("AST training size is BST size plus accepted pseudo-labels") {
  auto report = run_experiment(synthetic(4, 30, 1.5), config(8));
  const auto& f = report.folds.at(0);
  std::size_t accepted = 0;
  for (const auto& it : f.trace.iterations) accepted += it.accepted;
  CHECK(f.ast_train_size == f.bst_train_size + accepted);
  CHECK(f.residual_unlabelled == 30 - accepted);
}

TEST_CASE("well separated synthetic corpus exhausts U") {
  auto report = run_experiment(synthetic(5, 20, 50.0), config(1));
  CHECK(report.folds.at(0).trace.status == StopReason::ExhaustedUnlabelled);
  CHECK(report.folds.at(0).residual_unlabelled == 0);
}

TEST_CASE("fixed seed is deterministic, different seeds differ in split") {
  auto corpus = synthetic(6, 30, 1.0);
  auto a = to_json(run_experiment(corpus, config(42), "p")).dump();
  auto b = to_json(run_experiment(corpus, config(42), "p")).dump();
  CHECK(a == b);
  auto other = run_experiment(corpus, config(43), "p");
  auto first = run_experiment(corpus, config(42), "p");
  CHECK(ids(first.bst_outcomes) != ids(other.bst_outcomes));
}

TEST_CASE("k-fold mode pools every labelled module once") {
  auto corpus = synthetic(7, 10);
  auto cfg = config(2);
  cfg.split.folds = 4;
  auto report = run_experiment(corpus, cfg);
  CHECK(report.folds.size() == 4);
  CHECK(report.bst.modules == corpus.labelled.size());
  auto tested = ids(report.bst_outcomes);
  CHECK(std::set<std::string>(tested.begin(), tested.end()).size() == corpus.labelled.size());

  cfg.split.folds = 1;
  CHECK_THROWS_AS(run_experiment(corpus, cfg), DomainError);
}

TEST_CASE("raw BST arm skips oversampling") {
  auto cfg = config(9);
  cfg.bst_oversample = false;
  auto report = run_experiment(synthetic(8, 0), cfg);
  const auto labelled_train = 108 - report.bst.modules;
  CHECK(report.folds.at(0).bst_train_size == labelled_train);
  CHECK(report.folds.at(0).ast_train_size > labelled_train);
}

TEST_CASE("input errors") {
  SynthSpec one_class;
  one_class.class_counts = {0, 0, 0, 0, 20};
  one_class.seed = 1;
  CHECK_THROWS_AS(run_experiment(synth_corpus(one_class), config(1)), DomainError);

  SynthSpec tiny;
  tiny.class_counts = {0, 0, 0, 2, 2};
  tiny.seed = 1;
  auto cfg = config(1);
  cfg.split.test_fraction = 0.1;
  CHECK_THROWS_AS(run_experiment(synth_corpus(tiny), cfg), DomainError);

  cfg.split.test_fraction = 1.0;
  CHECK_THROWS_AS(run_experiment(synthetic(1, 0), cfg), DomainError);
}
