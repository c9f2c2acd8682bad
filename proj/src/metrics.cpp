#include "sevpredict/metrics.hpp"

#include <cmath>

#include "sevpredict/error.hpp"

namespace sevpredict {

OutcomeSet::OutcomeSet(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw DomainError("outcome set is empty");
  for (const auto& o : outcomes_) {
    if (o.loc < 1) throw DomainError("outcome loc must be at least 1");
    total_loc_ += o.loc;
  }
}

std::int64_t ConfusionMatrix::total() const noexcept {
  std::int64_t t = 0;
  for (const auto& row : counts)
    for (auto c : row) t += c;
  return t;
}

std::int64_t ConfusionMatrix::row_sum(Severity actual) const noexcept {
  std::int64_t t = 0;
  for (auto c : counts[index_of(actual)]) t += c;
  return t;
}

std::int64_t ConfusionMatrix::column_sum(Severity predicted) const noexcept {
  std::int64_t t = 0;
  for (const auto& row : counts) t += row[index_of(predicted)];
  return t;
}

std::int64_t ConfusionMatrix::diagonal() const noexcept {
  std::int64_t t = 0;
  for (std::size_t j = 0; j < kNumClasses; ++j) t += counts[j][j];
  return t;
}

void EconConfig::validate() const {
  if (!(std::isfinite(delta) && delta > 0.0)) throw DomainError("delta must be positive");
  // Re-run the weight checks in case the array was filled in directly.
  OrdinalWeights checked(weights.values());
  (void)checked;
}

ConfusionMatrix build_confusion(const OutcomeSet& outcomes) {
  ConfusionMatrix cm;
  for (const auto& o : outcomes.outcomes()) ++cm.counts[index_of(o.actual)][index_of(o.predicted)];
  return cm;
}

namespace {
double ratio(std::int64_t num, std::int64_t den) noexcept {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

double accuracy(const ConfusionMatrix& cm) { return ratio(cm.diagonal(), cm.total()); }

FMeasures f_measures(const ConfusionMatrix& cm) {
  FMeasures fm;
  std::size_t present = 0;
  std::int64_t total = 0;
  for (Severity s : kAllSeverities) {
    auto& sc = fm.per_class[index_of(s)];
    const auto hit = cm.at(s, s);
    sc.support = cm.row_sum(s);
    sc.precision = ratio(hit, cm.column_sum(s));
    sc.recall = ratio(hit, sc.support);
    const double denom = sc.precision + sc.recall;
    sc.f1 = denom > 0.0 ? 2.0 * sc.precision * sc.recall / denom : 0.0;
    if (sc.support > 0) {
      ++present;
      fm.macro += sc.f1;
      fm.weighted += sc.f1 * static_cast<double>(sc.support);
      total += sc.support;
    }
  }
  if (present > 0) fm.macro /= static_cast<double>(present);
  if (total > 0) fm.weighted /= static_cast<double>(total);
  return fm;
}

RiskFactors risk_factor(const ConfusionMatrix& cm, const OrdinalWeights& weights) {
  RiskFactors rf{};
  for (std::size_t r = 0; r < kNumDefectiveClasses; ++r) {
    const Severity actual = kAllSeverities[r];
    const auto n_r = cm.row_sum(actual);
    if (n_r == 0) continue;
    double sum = 0.0;
    for (std::size_t s = r + 1; s < kNumClasses; ++s) {
      const Severity predicted = kAllSeverities[s];
      sum += static_cast<double>(cm.at(actual, predicted)) *
             std::abs(weights[predicted] - weights[actual]);
    }
    rf[r] = sum / static_cast<double>(n_r);
  }
  return rf;
}

double system_risk_factor(const RiskFactors& rf) noexcept {
  double sum = 0.0;
  for (double v : rf) sum += v;
  return sum;
}

namespace {

struct LocPartition {
  std::int64_t true_negative = 0;   // actual clean, predicted clean
  std::int64_t false_alarm = 0;     // actual clean, predicted defective
  std::int64_t defective = 0;       // actual defective
  std::int64_t tn_modules = 0;
};

LocPartition partition(const OutcomeSet& outcomes) {
  LocPartition p;
  for (const auto& o : outcomes.outcomes()) {
    if (is_defective(o.actual)) {
      p.defective += o.loc;
    } else if (is_defective(o.predicted)) {
      p.false_alarm += o.loc;
    } else {
      p.true_negative += o.loc;
      ++p.tn_modules;
    }
  }
  return p;
}

}  // namespace

BudgetMetrics budget_metrics(const OutcomeSet& outcomes) {
  const auto p = partition(outcomes);
  const auto n = static_cast<std::int64_t>(outcomes.size());
  BudgetMetrics b;
  b.ptn = ratio(p.tn_modules, n);
  b.saved_budget = p.true_negative;
  b.psb = ratio(p.true_negative, outcomes.total_loc());
  b.lsb = ratio(p.false_alarm, outcomes.total_loc());
  return b;
}

ServiceMetrics service_metrics(const OutcomeSet& outcomes, const EconConfig& config) {
  config.validate();
  const auto p = partition(outcomes);
  const auto n = static_cast<std::int64_t>(outcomes.size());
  ServiceMetrics s;
  s.pntn = ratio(n - p.tn_modules, n);
  s.remaining_edits = outcomes.total_loc() - p.true_negative;
  s.pre = ratio(s.remaining_edits, outcomes.total_loc());
  s.rst_hours = static_cast<double>(s.remaining_edits) / config.delta;
  s.gst_hours = static_cast<double>(p.false_alarm) / config.delta;
  return s;
}

MetricReport full_report(const OutcomeSet& outcomes, const EconConfig& config) {
  config.validate();
  MetricReport r;
  r.econ = config;
  r.modules = outcomes.size();
  r.total_loc = outcomes.total_loc();
  r.confusion = build_confusion(outcomes);
  r.accuracy = accuracy(r.confusion);
  r.f_measure = f_measures(r.confusion);
  r.risk_factor = risk_factor(r.confusion, config.weights);
  r.system_risk_factor = system_risk_factor(r.risk_factor);
  r.budget = budget_metrics(outcomes);
  r.service = service_metrics(outcomes, config);
  const auto p = partition(outcomes);
  r.clean_loc_fraction = ratio(p.true_negative + p.false_alarm, r.total_loc);
  r.defective_loc_fraction = ratio(p.defective, r.total_loc);
  return r;
}

MetricDelta compare(const MetricReport& before, const MetricReport& after) {
  if (!(before.econ == after.econ)) {
    throw DomainError("cannot compare reports computed with different economics settings");
  }
  MetricDelta d;
  d.accuracy = after.accuracy - before.accuracy;
  d.f_measure_macro = after.f_measure.macro - before.f_measure.macro;
  d.f_measure_weighted = after.f_measure.weighted - before.f_measure.weighted;
  for (std::size_t r = 0; r < kNumDefectiveClasses; ++r) {
    d.risk_factor[r] = after.risk_factor[r] - before.risk_factor[r];
  }
  d.system_risk_factor = after.system_risk_factor - before.system_risk_factor;
  d.ptn = after.budget.ptn - before.budget.ptn;
  d.psb = after.budget.psb - before.budget.psb;
  d.saved_budget = after.budget.saved_budget - before.budget.saved_budget;
  d.lsb = after.budget.lsb - before.budget.lsb;
  d.pntn = after.service.pntn - before.service.pntn;
  d.pre = after.service.pre - before.service.pre;
  d.remaining_edits = after.service.remaining_edits - before.service.remaining_edits;
  d.rst_hours = after.service.rst_hours - before.service.rst_hours;
  d.gst_hours = after.service.gst_hours - before.service.gst_hours;
  return d;
}

MetricReport average_reports(std::span<const MetricReport> reports) {
  if (reports.empty()) throw DomainError("nothing to average");
  MetricReport avg;
  avg.econ = reports.front().econ;
  const double n = static_cast<double>(reports.size());
  for (const auto& r : reports) {
    if (!(r.econ == avg.econ)) {
      throw DomainError("cannot average reports computed with different economics settings");
    }
    avg.modules += r.modules;
    avg.total_loc += r.total_loc;
    for (std::size_t i = 0; i < kNumClasses; ++i)
      for (std::size_t j = 0; j < kNumClasses; ++j)
        avg.confusion.counts[i][j] += r.confusion.counts[i][j];
    avg.accuracy += r.accuracy / n;
    for (std::size_t j = 0; j < kNumClasses; ++j) {
      auto& dst = avg.f_measure.per_class[j];
      const auto& src = r.f_measure.per_class[j];
      dst.precision += src.precision / n;
      dst.recall += src.recall / n;
      dst.f1 += src.f1 / n;
      dst.support += src.support;
    }
    avg.f_measure.macro += r.f_measure.macro / n;
    avg.f_measure.weighted += r.f_measure.weighted / n;
    for (std::size_t k = 0; k < kNumDefectiveClasses; ++k) avg.risk_factor[k] += r.risk_factor[k] / n;
    avg.system_risk_factor += r.system_risk_factor / n;
    avg.budget.ptn += r.budget.ptn / n;
    avg.budget.psb += r.budget.psb / n;
    avg.budget.saved_budget += r.budget.saved_budget;
    avg.budget.lsb += r.budget.lsb / n;
    avg.service.pntn += r.service.pntn / n;
    avg.service.pre += r.service.pre / n;
    avg.service.remaining_edits += r.service.remaining_edits;
    avg.service.rst_hours += r.service.rst_hours / n;
    avg.service.gst_hours += r.service.gst_hours / n;
    avg.clean_loc_fraction += r.clean_loc_fraction / n;
    avg.defective_loc_fraction += r.defective_loc_fraction / n;
  }
  return avg;
}

}  // namespace sevpredict
