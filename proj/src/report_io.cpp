#include "sevpredict/report_io.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "sevpredict/error.hpp"
#include "sevpredict/text.hpp"

namespace sevpredict {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

Json econ_json(const EconConfig& econ) {
  Json weights = Json::object();
  for (Severity s : kAllSeverities) weights[std::string(to_string(s))] = econ.weights[s];
  return Json{{"delta", econ.delta}, {"ordinal_weights", weights}};
}

Json risk_json(const RiskFactors& rf) {
  Json j = Json::object();
  for (std::size_t k = 0; k < kNumDefectiveClasses; ++k) {
    j[std::string(to_string(kDefectiveSeverities[k]))] = rf[k];
  }
  return j;
}

Json class_counts_json(const ClassCounts& counts) {
  Json j = Json::object();
  for (Severity s : kAllSeverities) j[std::string(to_string(s))] = counts[index_of(s)];
  return j;
}

}  // namespace

Json to_json(const MetricReport& r) {
  Json per_class = Json::object();
  for (Severity s : kAllSeverities) {
    const auto& sc = r.f_measure.per_class[index_of(s)];
    per_class[std::string(to_string(s))] = {
        {"precision", sc.precision}, {"recall", sc.recall}, {"f1", sc.f1}, {"support", sc.support}};
  }
  Json confusion = Json::array();
  for (const auto& row : r.confusion.counts) confusion.push_back(row);

  Json j;
  j["econ"] = econ_json(r.econ);
  j["modules"] = r.modules;
  j["total_loc"] = r.total_loc;
  j["confusion"] = confusion;
  j["accuracy"] = r.accuracy;
  j["per_class"] = per_class;
  j["f_measure_macro"] = r.f_measure.macro;
  j["f_measure_weighted"] = r.f_measure.weighted;
  j["risk_factor"] = risk_json(r.risk_factor);
  j["system_rf"] = r.system_risk_factor;
  j["ptn"] = r.budget.ptn;
  j["psb"] = r.budget.psb;
  j["saved_budget"] = r.budget.saved_budget;
  j["lsb"] = r.budget.lsb;
  j["pntn"] = r.service.pntn;
  j["pre"] = r.service.pre;
  j["remaining_edits"] = r.service.remaining_edits;
  j["rst_hours"] = r.service.rst_hours;
  j["gst_hours"] = r.service.gst_hours;
  j["clean_loc_fraction"] = r.clean_loc_fraction;
  j["defective_loc_fraction"] = r.defective_loc_fraction;
  return j;
}

Json to_json(const MetricDelta& d) {
  Json j;
  j["accuracy"] = d.accuracy;
  j["f_measure_macro"] = d.f_measure_macro;
  j["f_measure_weighted"] = d.f_measure_weighted;
  j["risk_factor"] = risk_json(d.risk_factor);
  j["system_rf"] = d.system_risk_factor;
  j["ptn"] = d.ptn;
  j["psb"] = d.psb;
  j["saved_budget"] = d.saved_budget;
  j["lsb"] = d.lsb;
  j["pntn"] = d.pntn;
  j["pre"] = d.pre;
  j["remaining_edits"] = d.remaining_edits;
  j["rst_hours"] = d.rst_hours;
  j["gst_hours"] = d.gst_hours;
  return j;
}

Json to_json(const CorpusSummary& s) {
  Json classes = Json::object();
  for (Severity sev : kAllSeverities) {
    classes[std::string(to_string(sev))] = {{"modules", s.class_counts[index_of(sev)]},
                                            {"percent", s.class_percent(sev)}};
  }
  Json j;
  j["modules"] = s.modules;
  j["total_loc"] = s.total_loc;
  j["classes"] = classes;
  j["unlabelled"] = {{"modules", s.unlabelled}, {"percent", s.unlabelled_percent()}};
  return j;
}

Json to_json(const PipelineConfig& c) {
  Json split;
  if (c.split.folds) {
    split = {{"mode", "kfold"}, {"folds", *c.split.folds}};
  } else {
    split = {{"mode", "holdout"}, {"test_fraction", c.split.test_fraction}};
  }
  Json tree = {{"min_samples_split", c.tree.min_samples_split}};
  tree["max_depth"] = c.tree.max_depth ? Json(*c.tree.max_depth) : Json(nullptr);
  Json j;
  j["seed"] = c.seed;
  j["split"] = split;
  j["sampler"] = {{"k_neighbors", c.sampler.k_neighbors},
                  {"beta", c.sampler.beta},
                  {"d_threshold", c.sampler.d_threshold}};
  j["tree"] = tree;
  j["selftrain"] = {{"gamma", c.selftrain.gamma},
                    {"max_iterations", c.selftrain.max_iterations},
                    {"oversample_first", c.selftrain.oversample_first}};
  j["econ"] = econ_json(c.econ);
  j["bst_oversample"] = c.bst_oversample;
  return j;
}

Json to_json(const IterationRecord& r) {
  Json j;
  j["iteration"] = r.iteration;
  j["unlabelled_before"] = r.unlabelled_before;
  j["accepted"] = r.accepted;
  j["accepted_per_class"] = class_counts_json(r.accepted_per_class);
  j["supervised_risk"] = r.supervised_risk;
  j["unsupervised_risk"] = r.unsupervised_risk;
  return j;
}

Json to_json(const ExperimentReport& r) {
  Json folds = Json::array();
  for (const auto& f : r.folds) {
    Json iterations = Json::array();
    for (const auto& it : f.trace.iterations) iterations.push_back(to_json(it));
    Json fj;
    fj["fold"] = f.fold;
    fj["status"] = std::string(to_string(f.trace.status));
    fj["initial_unlabelled"] = f.trace.initial_unlabelled;
    fj["labelled_after_oversampling"] = f.trace.labelled_after_oversampling;
    fj["bst_train_size"] = f.bst_train_size;
    fj["ast_train_size"] = f.ast_train_size;
    fj["residual_unlabelled"] = f.residual_unlabelled;
    fj["iterations"] = iterations;
    folds.push_back(fj);
  }
  Json j;
  j["project"] = r.project;
  j["config"] = to_json(r.config);
  j["corpus"] = to_json(r.corpus);
  j["bst"] = to_json(r.bst);
  j["ast"] = to_json(r.ast);
  j["delta"] = to_json(r.delta);
  j["self_training"] = folds;
  return j;
}

void write_trace_jsonl(std::ostream& out, const ExperimentReport& report) {
  for (const auto& f : report.folds) {
    for (const auto& it : f.trace.iterations) {
      Json j;
      j["fold"] = f.fold;
      j.update(to_json(it));
      out << j.dump() << '\n';
    }
  }
}

void write_predictions_csv(std::ostream& out, std::span<const Outcome> outcomes) {
  out << "module_id,loc,actual,predicted\n";
  for (const auto& o : outcomes) {
    out << o.module_id << ',' << o.loc << ',' << to_string(o.actual) << ','
        << to_string(o.predicted) << '\n';
  }
}

std::vector<Outcome> read_predictions_csv(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && text::trim(line).empty()) {}
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = text::split_fields(line);
  constexpr std::array<std::string_view, 4> kColumns = {"module_id", "loc", "actual",
                                                        "predicted"};
  std::array<std::size_t, 4> pos{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    auto it = std::find(header.begin(), header.end(), kColumns[c]);
    if (it == header.end()) {
      throw SchemaError("missing required column '" + std::string(kColumns[c]) + "'");
    }
    pos[c] = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<Outcome> outcomes;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    ++row;
    const auto fields = text::split_fields(line);
    if (fields.size() != header.size()) {
      throw RowError(row, "expected " + std::to_string(header.size()) + " fields");
    }
    Outcome o;
    o.module_id = std::string(fields[pos[0]]);
    auto loc = text::parse_int(fields[pos[1]]);
    if (!loc || *loc < 1) throw RowError(row, "loc must be a positive integer");
    o.loc = *loc;
    auto actual = parse_severity(fields[pos[2]]);
    if (!actual) throw RowError(row, "unknown class '" + std::string(fields[pos[2]]) + "'");
    auto predicted = parse_severity(fields[pos[3]]);
    if (!predicted) throw RowError(row, "unknown class '" + std::string(fields[pos[3]]) + "'");
    o.actual = *actual;
    o.predicted = *predicted;
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

void write_metric_csv(std::ostream& out, const MetricReport& r) {
  out << "Accuracy,F-Measure,PSB,LSB,PRE,RST,GST";
  for (Severity s : kDefectiveSeverities) out << ",RF " << display_name(s);
  out << ",System's Risk-Factor\n";
  out << text::format_double(r.accuracy) << ',' << text::format_double(r.f_measure.weighted)
      << ',' << text::format_double(r.budget.psb) << ',' << text::format_double(r.budget.lsb)
      << ',' << text::format_double(r.service.pre) << ','
      << text::format_double(r.service.rst_hours) << ','
      << text::format_double(r.service.gst_hours);
  for (double v : r.risk_factor) out << ',' << text::format_double(v);
  out << ',' << text::format_double(r.system_risk_factor) << '\n';
}

namespace {

template <class Row>
void emit_rows(std::ostream& out, std::span<const ExperimentReport> reports, Row row) {
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out << (i + 1) << ',' << reports[i].project;
    row(reports[i].bst, reports[i].ast);
    out << '\n';
  }
  if (reports.size() > 1) {
    std::vector<MetricReport> bst, ast;
    for (const auto& r : reports) {
      bst.push_back(r.bst);
      ast.push_back(r.ast);
    }
    out << ",Average";
    row(average_reports(bst), average_reports(ast));
    out << '\n';
  }
}

}  // namespace

void write_risk_table(std::ostream& out, std::span<const ExperimentReport> reports) {
  out << "S.No,Target Project";
  for (Severity s : kDefectiveSeverities) {
    out << ',' << display_name(s) << " BST," << display_name(s) << " AST";
  }
  out << ",System's Risk-Factor BST,System's Risk-Factor AST\n";
  emit_rows(out, reports, [&](const MetricReport& b, const MetricReport& a) {
    for (std::size_t k = 0; k < kNumDefectiveClasses; ++k) {
      out << ',' << fixed(b.risk_factor[k], 4) << ',' << fixed(a.risk_factor[k], 4);
    }
    out << ',' << fixed(b.system_risk_factor, 4) << ',' << fixed(a.system_risk_factor, 4);
  });
}

void write_performance_table(std::ostream& out, std::span<const ExperimentReport> reports) {
  out << "S.No,Target Project";
  for (auto name : {"Accuracy", "F-Measure", "PSB", "LSB", "PRE", "RST", "GST"}) {
    out << ',' << name << " BST," << name << " AST";
  }
  out << '\n';
  emit_rows(out, reports, [&](const MetricReport& b, const MetricReport& a) {
    out << ',' << fixed(b.accuracy, 4) << ',' << fixed(a.accuracy, 4) << ','
        << fixed(b.f_measure.weighted, 4) << ',' << fixed(a.f_measure.weighted, 4) << ','
        << fixed(b.budget.psb, 4) << ',' << fixed(a.budget.psb, 4) << ','
        << fixed(b.budget.lsb, 4) << ',' << fixed(a.budget.lsb, 4) << ','
        << fixed(b.service.pre, 4) << ',' << fixed(a.service.pre, 4) << ','
        << fixed(b.service.rst_hours, 2) << ',' << fixed(a.service.rst_hours, 2) << ','
        << fixed(b.service.gst_hours, 2) << ',' << fixed(a.service.gst_hours, 2);
  });
}

void write_budget_table(std::ostream& out, std::span<const ExperimentReport> reports) {
  out << "Target Project,Total LoC,Saved Budget BST,Saved Budget AST,"
         "Remaining Edits BST,Remaining Edits AST\n";
  std::int64_t sums[5] = {0, 0, 0, 0, 0};
  for (const auto& r : reports) {
    const std::int64_t row[5] = {r.bst.total_loc, r.bst.budget.saved_budget,
                                 r.ast.budget.saved_budget, r.bst.service.remaining_edits,
                                 r.ast.service.remaining_edits};
    out << r.project;
    for (int c = 0; c < 5; ++c) {
      out << ',' << row[c];
      sums[c] += row[c];
    }
    out << '\n';
  }
  if (reports.size() > 1) {
    out << "Total";
    for (auto s : sums) out << ',' << s;
    out << '\n';
  }
}

void write_savings_figure_data(std::ostream& out, std::span<const ExperimentReport> reports) {
  out << "Target Project,Original Budget Savings,Budget Savings BST,Budget Savings AST,"
         "Original Remaining Service,Remaining Service BST,Remaining Service AST\n";
  auto pct = [](double v) { return fixed(100.0 * v, 2); };
  auto row = [&](const std::string& name, const MetricReport& b, const MetricReport& a) {
    out << name << ',' << pct(b.clean_loc_fraction) << ',' << pct(b.budget.psb) << ','
        << pct(a.budget.psb) << ',' << pct(b.defective_loc_fraction) << ','
        << pct(b.service.pre) << ',' << pct(a.service.pre) << '\n';
  };
  std::vector<MetricReport> bst, ast;
  for (const auto& r : reports) {
    row(r.project, r.bst, r.ast);
    bst.push_back(r.bst);
    ast.push_back(r.ast);
  }
  if (reports.size() > 1) row("Average", average_reports(bst), average_reports(ast));
}

}  // namespace sevpredict
