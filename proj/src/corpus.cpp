#include "sevpredict/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_set>

#include "sevpredict/text.hpp"

namespace sevpredict {

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Original: return "original";
    case Provenance::Synthetic: return "synthetic";
    case Provenance::Pseudo: return "pseudo";
  }
  return "original";
}

std::optional<Severity> derive_label(const ModuleRecord& record) noexcept {
  for (std::size_t k = 0; k < kNumDefectiveClasses; ++k) {
    if (record.defect_counts[k] > 0) return kDefectiveSeverities[k];
  }
  if (record.total_defects > 0) return std::nullopt;
  return Severity::Clean;
}

namespace {

struct ColumnLayout {
  std::array<std::size_t, kRequiredColumns.size()> required{};
  std::vector<std::size_t> metrics;
  std::size_t width = 0;
};

ColumnLayout resolve_header(const std::vector<std::string_view>& header,
                            std::vector<std::string>& schema) {
  ColumnLayout layout;
  layout.width = header.size();
  std::unordered_set<std::string_view> seen;
  for (auto name : header) {
    if (name.empty()) throw SchemaError("header contains an empty column name");
    if (!seen.insert(name).second) {
      throw SchemaError("duplicate column '" + std::string(name) + "'");
    }
  }
  for (std::size_t r = 0; r < kRequiredColumns.size(); ++r) {
    auto it = std::find(header.begin(), header.end(), kRequiredColumns[r]);
    if (it == header.end()) {
      throw SchemaError("missing required column '" + std::string(kRequiredColumns[r]) +
                        "'");
    }
    layout.required[r] = static_cast<std::size_t>(it - header.begin());
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (std::find(layout.required.begin(), layout.required.end(), c) ==
        layout.required.end()) {
      layout.metrics.push_back(c);
      schema.emplace_back(header[c]);
    }
  }
  if (layout.metrics.empty()) throw SchemaError("no metric columns after the fixed columns");
  return layout;
}

std::int64_t parse_count(std::size_t row, std::string_view column, std::string_view field) {
  auto value = text::parse_int(field);
  if (!value) {
    throw RowError(row, "column '" + std::string(column) + "' is not an integer: '" +
                            std::string(field) + "'");
  }
  if (*value < 0) {
    throw RowError(row, "column '" + std::string(column) + "' is negative");
  }
  return *value;
}

ModuleRecord parse_row(std::size_t row, const std::vector<std::string_view>& fields,
                       const ColumnLayout& layout, const std::vector<std::string>& schema) {
  if (fields.size() != layout.width) {
    throw RowError(row, "expected " + std::to_string(layout.width) + " fields, found " +
                            std::to_string(fields.size()));
  }
  ModuleRecord rec;
  rec.module_id = std::string(fields[layout.required[0]]);
  if (rec.module_id.empty()) throw RowError(row, "empty module_id");
  rec.loc = parse_count(row, kRequiredColumns[1], fields[layout.required[1]]);
  if (rec.loc < 1) throw RowError(row, "loc must be at least 1");
  for (std::size_t k = 0; k < kNumDefectiveClasses; ++k) {
    rec.defect_counts[k] =
        parse_count(row, kRequiredColumns[2 + k], fields[layout.required[2 + k]]);
  }
  rec.total_defects = parse_count(row, kRequiredColumns[6], fields[layout.required[6]]);
  rec.features.reserve(layout.metrics.size());
  for (std::size_t m = 0; m < layout.metrics.size(); ++m) {
    auto field = fields[layout.metrics[m]];
    auto value = text::parse_double(field);
    if (!value) {
      throw RowError(row, "metric '" + schema[m] + "' is not numeric: '" +
                              std::string(field) + "'");
    }
    if (!std::isfinite(*value)) {
      throw RowError(row, "metric '" + schema[m] + "' is not finite");
    }
    rec.features.push_back(*value);
  }
  return rec;
}

}  // namespace

ReadResult read_records(std::istream& in) {
  ReadResult result;
  std::string line;
  // Skip leading blank lines; the first non-blank line is the header.
  while (std::getline(in, line) && text::trim(line).empty()) {}
  if (text::trim(line).empty()) throw SchemaError("input has no header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  const auto header = text::split_fields(line);
  const auto layout = resolve_header(header, result.table.schema);

  std::unordered_set<std::string> ids;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    ++row;
    try {
      auto rec = parse_row(row, text::split_fields(line), layout, result.table.schema);
      if (!ids.insert(rec.module_id).second) {
        throw RowError(row, "duplicate module_id '" + rec.module_id + "'");
      }
      result.table.records.push_back(std::move(rec));
    } catch (const RowError& e) {
      result.row_errors.push_back(e);
    }
  }
  result.rows_seen = row;
  return result;
}

Corpus build_corpus(const RecordTable& table) {
  Corpus corpus;
  corpus.schema = table.schema;
  for (const auto& rec : table.records) {
    if (auto label = derive_label(rec)) {
      corpus.labelled.push_back(
          {rec.module_id, rec.features, rec.loc, *label, Provenance::Original, 0});
    } else {
      corpus.unlabelled.push_back({rec.module_id, rec.features, rec.loc});
    }
  }
  return corpus;
}

Corpus parse_corpus(std::istream& in) {
  auto result = read_records(in);
  if (!result.row_errors.empty()) throw result.row_errors.front();
  return build_corpus(result.table);
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_corpus(in);
}

void write_records_csv(std::ostream& out, const RecordTable& table) {
  for (std::size_t c = 0; c < kRequiredColumns.size(); ++c) {
    out << (c ? "," : "") << kRequiredColumns[c];
  }
  for (const auto& name : table.schema) out << ',' << name;
  out << '\n';
  for (const auto& rec : table.records) {
    out << rec.module_id << ',' << rec.loc;
    for (auto count : rec.defect_counts) out << ',' << count;
    out << ',' << rec.total_defects;
    for (double v : rec.features) out << ',' << text::format_double(v);
    out << '\n';
  }
}

namespace {

std::array<std::vector<std::size_t>, kNumClasses> shuffled_class_members(
    const Corpus& corpus, std::mt19937_64& rng) {
  std::array<std::vector<std::size_t>, kNumClasses> members;
  for (std::size_t i = 0; i < corpus.labelled.size(); ++i) {
    members[index_of(corpus.labelled[i].label)].push_back(i);
  }
  for (auto& m : members) std::shuffle(m.begin(), m.end(), rng);
  return members;
}

Split assemble_split(const Corpus& corpus, const std::vector<bool>& in_test) {
  Split split;
  split.train.schema = corpus.schema;
  split.train.unlabelled = corpus.unlabelled;
  for (std::size_t i = 0; i < corpus.labelled.size(); ++i) {
    (in_test[i] ? split.test : split.train.labelled).push_back(corpus.labelled[i]);
  }
  return split;
}

}  // namespace

Split stratified_split(const Corpus& corpus, double test_fraction, std::uint64_t seed) {
  if (corpus.labelled.empty()) throw DomainError("labelled set is empty");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DomainError("test fraction must lie in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  const auto members = shuffled_class_members(corpus, rng);
  std::vector<bool> in_test(corpus.labelled.size(), false);
  for (const auto& m : members) {
    // Small epsilon so products like 0.29 * 100 land on 29, not 28.
    const auto n_test = static_cast<std::size_t>(
        std::floor(test_fraction * static_cast<double>(m.size()) + 1e-9));
    for (std::size_t j = 0; j < n_test; ++j) in_test[m[j]] = true;
  }
  return assemble_split(corpus, in_test);
}

std::vector<Split> stratified_kfold(const Corpus& corpus, std::size_t folds,
                                    std::uint64_t seed) {
  if (corpus.labelled.empty()) throw DomainError("labelled set is empty");
  if (folds < 2) throw DomainError("k-fold mode needs at least 2 folds");
  if (folds > corpus.labelled.size()) {
    throw DomainError("more folds than labelled instances");
  }
  std::mt19937_64 rng(seed);
  const auto members = shuffled_class_members(corpus, rng);
  std::vector<std::size_t> fold_of(corpus.labelled.size(), 0);
  std::size_t offset = 0;
  for (const auto& m : members) {
    for (std::size_t j = 0; j < m.size(); ++j) fold_of[m[j]] = (offset + j) % folds;
    offset += m.size();
  }
  std::vector<Split> splits;
  splits.reserve(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<bool> in_test(corpus.labelled.size());
    for (std::size_t i = 0; i < fold_of.size(); ++i) in_test[i] = fold_of[i] == f;
    splits.push_back(assemble_split(corpus, in_test));
  }
  return splits;
}

RecordTable synth_records(const SynthSpec& spec) {
  if (spec.features < 1) throw DomainError("synthetic corpus needs at least one feature");
  if (!std::isfinite(spec.separation) || spec.separation < 0.0) {
    throw DomainError("cluster separation must be a non-negative finite real");
  }
  std::int64_t labelled_total = 0;
  for (auto c : spec.class_counts) {
    if (c < 0) throw DomainError("class counts must be non-negative");
    labelled_total += c;
  }
  if (labelled_total == 0) throw DomainError("all class counts are zero");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::normal_distribution<double> log_loc(5.0, 0.8);
  std::uniform_int_distribution<std::int64_t> extra(0, 2);
  std::bernoulli_distribution spill(0.3);

  auto draw_features = [&](Severity cls) {
    std::vector<double> f(spec.features);
    const double centre = spec.separation * static_cast<double>(index_of(cls));
    for (auto& v : f) v = std::round((centre + noise(rng)) * 1e4) / 1e4;
    return f;
  };
  auto draw_loc = [&] { return std::max<std::int64_t>(1, std::llround(std::exp(log_loc(rng)))); };

  RecordTable table;
  for (std::size_t f = 0; f < spec.features; ++f) {
    table.schema.push_back("metric_" + std::to_string(f + 1));
  }
  for (Severity cls : kAllSeverities) {
    for (std::int64_t n = 0; n < spec.class_counts[index_of(cls)]; ++n) {
      ModuleRecord rec;
      rec.loc = draw_loc();
      rec.features = draw_features(cls);
      if (is_defective(cls)) {
        const auto k = index_of(cls);
        rec.defect_counts[k] = 1 + extra(rng);
        for (std::size_t lower = k + 1; lower < kNumDefectiveClasses; ++lower) {
          if (spill(rng)) rec.defect_counts[lower] = 1 + extra(rng);
        }
        rec.total_defects = std::accumulate(rec.defect_counts.begin(),
                                            rec.defect_counts.end(), std::int64_t{0});
      }
      table.records.push_back(std::move(rec));
    }
  }
  std::discrete_distribution<std::size_t> mixture(spec.class_counts.begin(),
                                                  spec.class_counts.end());
  for (std::size_t n = 0; n < spec.unlabelled; ++n) {
    ModuleRecord rec;
    rec.loc = draw_loc();
    rec.features = draw_features(kAllSeverities[mixture(rng)]);
    rec.total_defects = 1 + extra(rng);
    table.records.push_back(std::move(rec));
  }
  std::shuffle(table.records.begin(), table.records.end(), rng);
  const auto width = std::to_string(table.records.size()).size();
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    auto id = std::to_string(i + 1);
    table.records[i].module_id = "mod_" + std::string(width - id.size(), '0') + id;
  }
  return table;
}

Corpus synth_corpus(const SynthSpec& spec) { return build_corpus(synth_records(spec)); }

double CorpusSummary::class_percent(Severity s) const {
  if (modules == 0) return 0.0;
  return 100.0 * static_cast<double>(class_counts[index_of(s)]) /
         static_cast<double>(modules);
}

double CorpusSummary::unlabelled_percent() const {
  if (modules == 0) return 0.0;
  return 100.0 * static_cast<double>(unlabelled) / static_cast<double>(modules);
}

CorpusSummary summarize(const Corpus& corpus) {
  CorpusSummary s;
  for (const auto& inst : corpus.labelled) {
    ++s.class_counts[index_of(inst.label)];
    s.total_loc += inst.loc;
  }
  for (const auto& inst : corpus.unlabelled) s.total_loc += inst.loc;
  s.unlabelled = static_cast<std::int64_t>(corpus.unlabelled.size());
  s.modules = static_cast<std::int64_t>(corpus.labelled.size()) + s.unlabelled;
  return s;
}

}  // namespace sevpredict
