#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "sevpredict/corpus.hpp"
#include "sevpredict/error.hpp"
#include "sevpredict/experiment.hpp"
#include "sevpredict/report_io.hpp"
#include "sevpredict/text.hpp"

namespace sevpredict::cli {

namespace fs = std::filesystem;

namespace {

struct RunOptions {
  std::vector<std::string> inputs;
  std::string out_dir;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> gamma;
  std::optional<double> delta;
  std::optional<std::size_t> k_neighbors;
  std::optional<double> beta;
  std::optional<double> test_fraction;
  std::optional<std::size_t> folds;
  std::optional<std::size_t> max_iterations;
  std::optional<std::size_t> max_depth;
  std::string weights;
  bool bst_raw = false;
  bool table = false;
};

struct MetricsOptions {
  std::string input;
  std::string out;
  std::optional<double> delta;
  std::string weights;
};

struct SynthOptions {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::array<std::int64_t, kNumClasses> counts{};
  std::size_t unlabelled = 0;
  std::size_t features = 3;
  double separation = 3.0;
};

OrdinalWeights parse_weights(const std::string& spec) {
  const auto fields = text::split_fields(spec);
  if (fields.size() != kNumClasses) {
    throw DomainError("--weights needs exactly five comma-separated values");
  }
  std::array<double, kNumClasses> values{};
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    auto v = text::parse_double(fields[i]);
    if (!v) throw DomainError("--weights value '" + std::string(fields[i]) + "' is not a number");
    values[i] = *v;
  }
  return OrdinalWeights(values);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag,
                           const std::optional<std::uint64_t>& from_config = std::nullopt) {
  if (flag) return *flag;
  if (from_config) return *from_config;
  if (const char* env = std::getenv("SEVPREDICT_SEED")) {
    auto v = text::parse_int(text::trim(env));
    if (!v || *v < 0) throw DomainError("SEVPREDICT_SEED is not a non-negative integer");
    return static_cast<std::uint64_t>(*v);
  }
  throw DomainError("a seed is required (--seed or SEVPREDICT_SEED)");
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

void print_summary(std::ostream& out, const CorpusSummary& s) {
  out << "Modules: " << s.modules << '\n' << "Total LoC: " << s.total_loc << '\n';
  out << std::left << std::setw(16) << "Class" << std::setw(10) << "Modules" << "Percentage\n";
  auto line = [&](std::string_view name, std::int64_t n, double pct) {
    std::ostringstream p;
    p << std::fixed << std::setprecision(3) << pct;
    out << std::left << std::setw(16) << name << std::setw(10) << n << p.str() << '\n';
  };
  for (Severity sev : kAllSeverities) {
    line(display_name(sev), s.class_counts[index_of(sev)], s.class_percent(sev));
  }
  line("Unlabelled", s.unlabelled, s.unlabelled_percent());
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  auto in = open_input(path);
  const auto result = read_records(in);
  for (const auto& e : result.row_errors) err << path << ": " << e.what() << '\n';
  print_summary(out, summarize(build_corpus(result.table)));
  if (!result.row_errors.empty()) {
    err << path << ": " << result.row_errors.size() << " invalid row(s)\n";
    return kExitDomain;
  }
  return kExitOk;
}

// Config file keys mirror the long flag names with underscores.
PipelineConfig build_pipeline_config(const RunOptions& o) {
  PipelineConfig cfg;
  std::optional<std::uint64_t> config_seed;
  if (!o.config_path.empty()) {
    auto in = open_input(o.config_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw DomainError("config file: " + std::string(e.what()));
    }
    try {
      if (j.contains("seed")) config_seed = j["seed"].get<std::uint64_t>();
      if (j.contains("gamma")) cfg.selftrain.gamma = j["gamma"].get<double>();
      if (j.contains("max_iterations"))
        cfg.selftrain.max_iterations = j["max_iterations"].get<std::size_t>();
      if (j.contains("delta")) cfg.econ.delta = j["delta"].get<double>();
      if (j.contains("k_neighbors")) cfg.sampler.k_neighbors = j["k_neighbors"].get<std::size_t>();
      if (j.contains("beta")) cfg.sampler.beta = j["beta"].get<double>();
      if (j.contains("d_threshold")) cfg.sampler.d_threshold = j["d_threshold"].get<double>();
      if (j.contains("test_fraction")) cfg.split.test_fraction = j["test_fraction"].get<double>();
      if (j.contains("folds")) cfg.split.folds = j["folds"].get<std::size_t>();
      if (j.contains("max_depth")) cfg.tree.max_depth = j["max_depth"].get<std::size_t>();
      if (j.contains("bst_raw")) cfg.bst_oversample = !j["bst_raw"].get<bool>();
      if (j.contains("weights")) {
        cfg.econ.weights = OrdinalWeights(j["weights"].get<std::array<double, kNumClasses>>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw DomainError("config file: " + std::string(e.what()));
    }
  }
  cfg.seed = resolve_seed(o.seed, config_seed);
  if (o.gamma) cfg.selftrain.gamma = *o.gamma;
  if (o.max_iterations) cfg.selftrain.max_iterations = *o.max_iterations;
  if (o.delta) cfg.econ.delta = *o.delta;
  if (o.k_neighbors) cfg.sampler.k_neighbors = *o.k_neighbors;
  if (o.beta) cfg.sampler.beta = *o.beta;
  if (o.test_fraction) cfg.split.test_fraction = *o.test_fraction;
  if (o.folds) cfg.split.folds = *o.folds;
  if (o.max_depth) cfg.tree.max_depth = *o.max_depth;
  if (o.bst_raw) cfg.bst_oversample = false;
  if (!o.weights.empty()) cfg.econ.weights = parse_weights(o.weights);
  cfg.validate();
  return cfg;
}

template <class Writer>
void write_file(const fs::path& path, Writer writer) {
  auto out = open_output(path);
  writer(out);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

int cmd_run(const RunOptions& o, std::ostream& out) {
  const auto cfg = build_pipeline_config(o);
  const fs::path dir = o.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  std::vector<ExperimentReport> reports;
  for (const auto& input : o.inputs) {
    auto in = open_input(input);
    const auto corpus = parse_corpus(in);
    const auto project = fs::path(input).stem().string();
    reports.push_back(run_experiment(corpus, cfg, project));
    const auto& r = reports.back();

    write_file(dir / (project + ".report.json"),
               [&](std::ostream& f) { f << to_json(r).dump(2) << '\n'; });
    write_file(dir / (project + ".trace.jsonl"),
               [&](std::ostream& f) { write_trace_jsonl(f, r); });
    write_file(dir / (project + ".predictions_bst.csv"),
               [&](std::ostream& f) { write_predictions_csv(f, r.bst_outcomes); });
    write_file(dir / (project + ".predictions_ast.csv"),
               [&](std::ostream& f) { write_predictions_csv(f, r.ast_outcomes); });

    std::size_t accepted = 0;
    std::size_t iterations = 0;
    for (const auto& f : r.folds) {
      iterations += f.trace.iterations.size();
      for (const auto& it : f.trace.iterations) accepted += it.accepted;
    }
    std::ostringstream line;
    line << std::fixed << std::setprecision(4) << project << ": BST acc=" << r.bst.accuracy
         << " psb=" << r.bst.budget.psb << " rf=" << r.bst.system_risk_factor
         << " | AST acc=" << r.ast.accuracy << " psb=" << r.ast.budget.psb
         << " rf=" << r.ast.system_risk_factor << " | self-training "
         << to_string(r.folds.front().trace.status) << ", " << iterations << " iteration(s), "
         << accepted << " pseudo-labelled";
    out << line.str() << '\n';
  }
  if (o.table) {
    write_file(dir / "risk_factors.csv", [&](std::ostream& f) { write_risk_table(f, reports); });
    write_file(dir / "performance.csv",
               [&](std::ostream& f) { write_performance_table(f, reports); });
    write_file(dir / "budget.csv", [&](std::ostream& f) { write_budget_table(f, reports); });
    write_file(dir / "savings_figure.csv",
               [&](std::ostream& f) { write_savings_figure_data(f, reports); });
  }
  return kExitOk;
}

int cmd_metrics(const MetricsOptions& o, std::ostream& out) {
  EconConfig econ;
  if (o.delta) econ.delta = *o.delta;
  if (!o.weights.empty()) econ.weights = parse_weights(o.weights);
  econ.validate();
  auto in = open_input(o.input);
  const auto report = full_report(OutcomeSet(read_predictions_csv(in)), econ);
  if (o.out.empty()) {
    out << to_json(report).dump(2) << '\n';
    return kExitOk;
  }
  const fs::path json_path = o.out;
  fs::path csv_path = json_path;
  csv_path.replace_extension(".csv");
  if (csv_path == json_path) csv_path += ".row.csv";
  write_file(json_path, [&](std::ostream& f) { f << to_json(report).dump(2) << '\n'; });
  write_file(csv_path, [&](std::ostream& f) { write_metric_csv(f, report); });
  return kExitOk;
}

int cmd_synth(const SynthOptions& o) {
  SynthSpec spec;
  for (std::size_t i = 0; i < kNumClasses; ++i) spec.class_counts[i] = o.counts[i];
  spec.unlabelled = o.unlabelled;
  spec.features = o.features;
  spec.separation = o.separation;
  spec.seed = resolve_seed(o.seed);
  const auto table = synth_records(spec);
  write_file(o.out, [&](std::ostream& f) { write_records_csv(f, table); });
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric-based software defect severity prediction"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a module CSV and summarise its classes");
  validate->add_option("csv", validate_path, "Module-level defect data")->required();

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Compare before/after self-training on one or more corpora");
  run->add_option("csv", run_opts.inputs, "Module-level defect data, one file per project")
      ->required();
  run->add_option("--out", run_opts.out_dir, "Output directory")->required();
  run->add_option("--config", run_opts.config_path, "JSON file with default settings");
  run->add_option("--seed", run_opts.seed, "Random seed (falls back to SEVPREDICT_SEED)");
  run->add_option("--gamma", run_opts.gamma, "Pseudo-label acceptance threshold");
  run->add_option("--max-iterations", run_opts.max_iterations, "Self-training round limit");
  run->add_option("--delta", run_opts.delta, "LoC serviced per hour");
  run->add_option("--k-neighbors", run_opts.k_neighbors, "Neighbours used by oversampling");
  run->add_option("--beta", run_opts.beta, "Oversampling balance level in [0, 1]");
  run->add_option("--test-fraction", run_opts.test_fraction, "Holdout fraction per class");
  run->add_option("--folds", run_opts.folds, "Use stratified k-fold instead of a holdout");
  run->add_option("--max-depth", run_opts.max_depth, "Tree depth limit");
  run->add_option("--weights", run_opts.weights, "Ordinal weights w1,w2,w3,w4,w5");
  run->add_flag("--bst-raw", run_opts.bst_raw, "Train the baseline without oversampling");
  run->add_flag("--table", run_opts.table, "Also write the multi-project CSV tables");

  MetricsOptions metrics_opts;
  auto* metrics = app.add_subcommand("metrics", "Score a predictions CSV");
  metrics->add_option("csv", metrics_opts.input, "module_id,loc,actual,predicted")->required();
  metrics->add_option("--out", metrics_opts.out, "JSON report path (CSV row written alongside)");
  metrics->add_option("--delta", metrics_opts.delta, "LoC serviced per hour");
  metrics->add_option("--weights", metrics_opts.weights, "Ordinal weights w1,w2,w3,w4,w5");

  SynthOptions synth_opts;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic module CSV");
  synth->add_option("--out", synth_opts.out, "Output CSV path")->required();
  synth->add_option("--seed", synth_opts.seed, "Random seed (falls back to SEVPREDICT_SEED)");
  synth->add_option("--high-severity", synth_opts.counts[0], "High-severity modules");
  synth->add_option("--critical", synth_opts.counts[1], "Critical modules");
  synth->add_option("--major", synth_opts.counts[2], "Major modules");
  synth->add_option("--non-trivial", synth_opts.counts[3], "Non-trivial modules");
  synth->add_option("--clean", synth_opts.counts[4], "Clean modules");
  synth->add_option("--unlabelled", synth_opts.unlabelled, "Modules with unattributed defects");
  synth->add_option("--features", synth_opts.features, "Number of metric columns");
  synth->add_option("--separation", synth_opts.separation, "Distance between class centres");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("sevpredict");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (*validate) return cmd_validate(validate_path, out, err);
    if (*run) return cmd_run(run_opts, out);
    if (*metrics) return cmd_metrics(metrics_opts, out);
    if (*synth) return cmd_synth(synth_opts);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitDomain;
}

}  // namespace sevpredict::cli
