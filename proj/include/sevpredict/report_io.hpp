#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "sevpredict/experiment.hpp"
#include "sevpredict/metrics.hpp"

namespace sevpredict {

using Json = nlohmann::ordered_json;

Json to_json(const MetricReport& report);
Json to_json(const MetricDelta& delta);
Json to_json(const CorpusSummary& summary);
Json to_json(const PipelineConfig& config);
Json to_json(const IterationRecord& record);
Json to_json(const ExperimentReport& report);

// One JSON object per self-training iteration, tagged with its fold.
void write_trace_jsonl(std::ostream& out, const ExperimentReport& report);

// Columns: module_id,loc,actual,predicted with the file class vocabulary.
void write_predictions_csv(std::ostream& out, std::span<const Outcome> outcomes);
// Throws SchemaError / RowError (e.g. unknown class name).
std::vector<Outcome> read_predictions_csv(std::istream& in);

// Header plus one row: Accuracy, F-Measure (weighted), PSB, LSB, PRE, RST,
// GST, then the per-class and system risk factors.
void write_metric_csv(std::ostream& out, const MetricReport& report);

// Multi-project BST/AST comparison tables, one row per project; the
// last row aggregates (mean for ratios and hours, sum for LoC quantities).
void write_risk_table(std::ostream& out, std::span<const ExperimentReport> reports);
void write_performance_table(std::ostream& out, std::span<const ExperimentReport> reports);
void write_budget_table(std::ostream& out, std::span<const ExperimentReport> reports);
// Percentages behind the budget-savings / remaining-service plots.
void write_savings_figure_data(std::ostream& out, std::span<const ExperimentReport> reports);

}  // namespace sevpredict
