#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sevpredict/severity.hpp"

namespace sevpredict {

// One evaluated test module.
struct Outcome {
  Severity actual = Severity::Clean;
  Severity predicted = Severity::Clean;
  std::int64_t loc = 1;
  std::string module_id;  // informational; never used in the arithmetic
};

// Non-empty list of outcomes with every loc >= 1; throws DomainError otherwise.
class OutcomeSet {
 public:
  explicit OutcomeSet(std::vector<Outcome> outcomes);

  std::span<const Outcome> outcomes() const noexcept { return outcomes_; }
  std::size_t size() const noexcept { return outcomes_.size(); }
  std::int64_t total_loc() const noexcept { return total_loc_; }

 private:
  std::vector<Outcome> outcomes_;
  std::int64_t total_loc_ = 0;
};

// Rows are actual classes, columns predicted, both most severe first. Upper
// triangle cells are false negatives (predicted less severe than actual),
// lower triangle cells false positives; [Clean][Clean] is the TN cell.
struct ConfusionMatrix {
  std::array<std::array<std::int64_t, kNumClasses>, kNumClasses> counts{};

  std::int64_t at(Severity actual, Severity predicted) const noexcept {
    return counts[index_of(actual)][index_of(predicted)];
  }
  std::int64_t total() const noexcept;
  std::int64_t row_sum(Severity actual) const noexcept;
  std::int64_t column_sum(Severity predicted) const noexcept;
  std::int64_t diagonal() const noexcept;
};

struct EconConfig {
  double delta = 100.0;  // LoC serviced per hour
  OrdinalWeights weights;

  void validate() const;
  friend bool operator==(const EconConfig&, const EconConfig&) = default;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;  // actual count
};

struct FMeasures {
  std::array<ClassScores, kNumClasses> per_class{};
  double macro = 0.0;     // unweighted mean over classes present in actuals
  double weighted = 0.0;  // mean weighted by actual class counts
};

using RiskFactors = std::array<double, kNumDefectiveClasses>;

struct BudgetMetrics {
  double ptn = 0.0;
  double psb = 0.0;
  std::int64_t saved_budget = 0;
  double lsb = 0.0;
};

struct ServiceMetrics {
  double pntn = 0.0;
  double pre = 0.0;
  std::int64_t remaining_edits = 0;
  double rst_hours = 0.0;
  double gst_hours = 0.0;
};

struct MetricReport {
  EconConfig econ;
  std::size_t modules = 0;
  std::int64_t total_loc = 0;
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  FMeasures f_measure;
  RiskFactors risk_factor{};
  double system_risk_factor = 0.0;
  BudgetMetrics budget;
  ServiceMetrics service;
  // Fractions of total LoC that are actually clean / actually defective.
  double clean_loc_fraction = 0.0;
  double defective_loc_fraction = 0.0;
};

ConfusionMatrix build_confusion(const OutcomeSet& outcomes);

double accuracy(const ConfusionMatrix& cm);

FMeasures f_measures(const ConfusionMatrix& cm);

// Mean ordinal-weight gap of the predictions of each defective class that
// fell to a less severe class. Classes absent from the actuals score 0.
RiskFactors risk_factor(const ConfusionMatrix& cm, const OrdinalWeights& weights);

double system_risk_factor(const RiskFactors& rf) noexcept;

BudgetMetrics budget_metrics(const OutcomeSet& outcomes);

ServiceMetrics service_metrics(const OutcomeSet& outcomes, const EconConfig& config);

MetricReport full_report(const OutcomeSet& outcomes, const EconConfig& config);

// Field-wise difference `after - before` over the scalar metrics. Counts
// (confusion cells, saved budget, remaining edits) are differenced too.
struct MetricDelta {
  double accuracy = 0.0;
  double f_measure_macro = 0.0;
  double f_measure_weighted = 0.0;
  RiskFactors risk_factor{};
  double system_risk_factor = 0.0;
  double ptn = 0.0;
  double psb = 0.0;
  std::int64_t saved_budget = 0;
  double lsb = 0.0;
  double pntn = 0.0;
  double pre = 0.0;
  std::int64_t remaining_edits = 0;
  double rst_hours = 0.0;
  double gst_hours = 0.0;
};

// Throws DomainError when the reports were computed under different
// economics settings.
MetricDelta compare(const MetricReport& before, const MetricReport& after);

// Unweighted mean of the scalar metrics across reports (the "Average" row of
// a multi-project table). Integer quantities are summed.
MetricReport average_reports(std::span<const MetricReport> reports);

}  // namespace sevpredict
