#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sevpredict/error.hpp"
#include "sevpredict/severity.hpp"

namespace sevpredict {

// One row of module-level defect data.
struct ModuleRecord {
  std::string module_id;
  std::int64_t loc = 1;
  // Indexed by the four defective classes, most severe first.
  std::array<std::int64_t, kNumDefectiveClasses> defect_counts{};
  std::int64_t total_defects = 0;
  std::vector<double> features;
};

enum class Provenance : std::uint8_t { Original, Synthetic, Pseudo };

std::string_view to_string(Provenance p) noexcept;

struct LabelledInstance {
  std::string module_id;
  std::vector<double> features;
  std::int64_t loc = 1;
  Severity label = Severity::Clean;
  Provenance provenance = Provenance::Original;
  // Self-training iteration that accepted a pseudo instance; 0 otherwise.
  std::size_t iteration = 0;

  friend bool operator==(const LabelledInstance&, const LabelledInstance&) = default;
};

struct UnlabelledInstance {
  std::string module_id;
  std::vector<double> features;
  std::int64_t loc = 1;

  friend bool operator==(const UnlabelledInstance&, const UnlabelledInstance&) = default;
};

struct Corpus {
  std::vector<std::string> schema;  // metric column names, in file order
  std::vector<LabelledInstance> labelled;
  std::vector<UnlabelledInstance> unlabelled;
};

// Header names of the fixed leading columns.
inline constexpr std::array<std::string_view, 7> kRequiredColumns = {
    "module_id", "loc", "n_high_severity", "n_critical",
    "n_major", "n_non_trivial", "n_total_defects"};

// Labelling rule. Returns std::nullopt when the module belongs to the
// unlabelled set (defects reported but none attributed to a severity
// category); otherwise the most severe category with a nonzero count, or
// Clean when the module has no defects at all.
std::optional<Severity> derive_label(const ModuleRecord& record) noexcept;

struct RecordTable {
  std::vector<std::string> schema;
  std::vector<ModuleRecord> records;
};

struct ReadResult {
  RecordTable table;
  std::vector<RowError> row_errors;  // rows that failed are absent from table
  std::size_t rows_seen = 0;
};

// Reads every data row, collecting per-row failures instead of stopping at
// the first one. Header problems throw SchemaError.
ReadResult read_records(std::istream& in);

// Strict variant: throws the first RowError encountered.
Corpus parse_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);

Corpus build_corpus(const RecordTable& table);

void write_records_csv(std::ostream& out, const RecordTable& table);

struct Split {
  Corpus train;  // carries the full unlabelled set
  std::vector<LabelledInstance> test;
};

// Per-class shuffle with the given seed; floor(test_fraction * class size)
// members of each class go to the test set.
Split stratified_split(const Corpus& corpus, double test_fraction, std::uint64_t seed);

// Stratified k-fold partition; every labelled instance is tested exactly once.
std::vector<Split> stratified_kfold(const Corpus& corpus, std::size_t folds,
                                    std::uint64_t seed);

struct SynthSpec {
  ClassCounts class_counts{};
  std::size_t features = 3;
  double separation = 3.0;
  std::size_t unlabelled = 0;
  std::uint64_t seed = 0;
};

// Gaussian class clusters (unit variance around per-class centres scaled by
// `separation`) emitted as raw records that round-trip through the CSV
// reader.
RecordTable synth_records(const SynthSpec& spec);
Corpus synth_corpus(const SynthSpec& spec);

struct CorpusSummary {
  std::int64_t modules = 0;
  std::int64_t total_loc = 0;
  ClassCounts class_counts{};
  std::int64_t unlabelled = 0;

  double class_percent(Severity s) const;
  double unlabelled_percent() const;
};

CorpusSummary summarize(const Corpus& corpus);

}  // namespace sevpredict
