#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "sevpredict/corpus.hpp"
#include "sevpredict/error.hpp"

using namespace sevpredict;

namespace {

const std::string kHeader =
    "module_id,loc,n_high_severity,n_critical,n_major,n_non_trivial,n_total_defects,m1,m2\n";

Corpus parse(const std::string& body) {
  std::istringstream in(kHeader + body);
  return parse_corpus(in);
}

ModuleRecord record(std::array<std::int64_t, 4> counts, std::int64_t total) {
  ModuleRecord r;
  r.module_id = "m";
  r.loc = 10;
  r.defect_counts = counts;
  r.total_defects = total;
  r.features = {1.0};
  return r;
}

Corpus two_class_corpus(std::size_t clean, std::size_t major) {
  Corpus c;
  c.schema = {"x"};
  for (std::size_t i = 0; i < clean; ++i) {
    c.labelled.push_back({"c" + std::to_string(i), {double(i)}, 10, Severity::Clean});
  }
  for (std::size_t i = 0; i < major; ++i) {
    c.labelled.push_back({"j" + std::to_string(i), {double(i)}, 10, Severity::Major});
  }
  return c;
}

}  // namespace

TEST_CASE("severity vocabulary round-trips and orders by severity") {
  for (Severity s : kAllSeverities) CHECK(parse_severity(to_string(s)) == s);
  CHECK_FALSE(parse_severity("blocker").has_value());
  CHECK(more_severe(Severity::HighSeverity, Severity::Critical));
  CHECK_FALSE(more_severe(Severity::Clean, Severity::NonTrivial));
}

TEST_CASE("ordinal weights default and validation") {
  OrdinalWeights w;
  CHECK(w[Severity::HighSeverity] == doctest::Approx(0.1));
  CHECK(w[Severity::Clean] == doctest::Approx(0.5));
  CHECK_NOTHROW(OrdinalWeights({1, 2, 3, 4, 5}));
  CHECK_THROWS_AS(OrdinalWeights({0.1, 0.1, 0.3, 0.4, 0.5}), DomainError);
  CHECK_THROWS_AS(OrdinalWeights({-0.1, 0.2, 0.3, 0.4, 0.5}), DomainError);
  CHECK_THROWS_AS(OrdinalWeights({0.5, 0.4, 0.3, 0.2, 0.1}), DomainError);
}

TEST_CASE("derive_label picks the most severe nonzero category") {
  CHECK(derive_label(record({1, 0, 0, 0}, 1)) == Severity::HighSeverity);
  CHECK(derive_label(record({0, 2, 1, 0}, 3)) == Severity::Critical);
  CHECK(derive_label(record({0, 0, 0, 4}, 4)) == Severity::NonTrivial);
  CHECK(derive_label(record({0, 0, 0, 0}, 0)) == Severity::Clean);
  CHECK_FALSE(derive_label(record({0, 0, 0, 0}, 7)).has_value());
  // Totals below the category sum are tolerated; only zero-ness matters.
  CHECK(derive_label(record({0, 0, 3, 0}, 0)) == Severity::Major);
}

TEST_CASE("parse_corpus routes rows into labelled and unlabelled sets") {
  auto c = parse("a,10,0,0,0,0,0,1.5,2\nb,20,0,0,0,0,3,0,1\nc,5,0,1,0,0,1,3,4\n");
  REQUIRE(c.labelled.size() == 2);
  REQUIRE(c.unlabelled.size() == 1);
  CHECK(c.schema == std::vector<std::string>{"m1", "m2"});
  CHECK(c.labelled[0].label == Severity::Clean);
  CHECK(c.labelled[0].features == std::vector<double>{1.5, 2.0});
  CHECK(c.labelled[1].label == Severity::Critical);
  CHECK(c.unlabelled[0].module_id == "b");
  CHECK(c.unlabelled[0].loc == 20);
}

TEST_CASE("parse_corpus accepts reordered columns and CRLF") {
  std::istringstream in(
      "m1,module_id,n_total_defects,loc,n_non_trivial,n_major,n_critical,n_high_severity\r\n"
      "4.5,x,1,7,1,0,0,0\r\n");
  auto c = parse_corpus(in);
  REQUIRE(c.labelled.size() == 1);
  CHECK(c.labelled[0].label == Severity::NonTrivial);
  CHECK(c.labelled[0].loc == 7);
  CHECK(c.labelled[0].features == std::vector<double>{4.5});
}

TEST_CASE("schema errors name the missing column") {
  std::istringstream in("module_id,n_high_severity,n_critical,n_major,n_non_trivial,"
                        "n_total_defects,m1\na,0,0,0,0,0,1\n");
  try {
    parse_corpus(in);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("'loc'") != std::string::npos);
  }
  std::istringstream no_metrics(
      "module_id,loc,n_high_severity,n_critical,n_major,n_non_trivial,n_total_defects\n");
  CHECK_THROWS_AS(parse_corpus(no_metrics), SchemaError);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_corpus(empty), SchemaError);
}

TEST_CASE("row errors carry the row index") {
  auto row_of = [](const std::string& body) -> std::size_t {
    try {
      parse(body);
    } catch (const RowError& e) {
      return e.row();
    }
    return 0;
  };
  CHECK(row_of("a,10,0,0,0,0,0,1,2\nb,-5,0,0,0,0,0,1,2\n") == 2);
  CHECK(row_of("a,0,0,0,0,0,0,1,2\n") == 1);
  CHECK(row_of("a,10,0,x,0,0,0,1,2\n") == 1);
  CHECK(row_of("a,10,0,-1,0,0,0,1,2\n") == 1);
  CHECK(row_of("a,10,0,0,0,0,0,nan,2\n") == 1);
  CHECK(row_of("a,10,0,0,0,0,0,inf,2\n") == 1);
  CHECK(row_of("a,10,0,0,0,0,0,1\n") == 1);
  CHECK(row_of("a,10,0,0,0,0,0,1,2\na,10,0,0,0,0,0,1,2\n") == 2);
}

TEST_CASE("read_records collects every bad row") {
  std::istringstream in(kHeader + "a,10,0,0,0,0,0,1,2\nb,-1,0,0,0,0,0,1,2\nc,3,0,0,0,0,0,q,2\n");
  auto result = read_records(in);
  CHECK(result.rows_seen == 3);
  CHECK(result.table.records.size() == 1);
  REQUIRE(result.row_errors.size() == 2);
  CHECK(result.row_errors[0].row() == 2);
  CHECK(result.row_errors[1].row() == 3);
}

TEST_CASE("bundled mini fixture reproduces per-class bookkeeping") {
  auto c = load_corpus(std::string(SEVPREDICT_TEST_DATA) + "/mini_corpus.csv");
  auto s = summarize(c);
  CHECK(s.modules == 20);
  CHECK(s.class_counts == ClassCounts{1, 2, 2, 3, 10});
  CHECK(s.unlabelled == 2);
  CHECK(c.labelled.size() + c.unlabelled.size() == 20);
  CHECK(s.total_loc == 5028);
  double pct = s.unlabelled_percent();
  for (Severity sev : kAllSeverities) pct += s.class_percent(sev);
  CHECK(pct == doctest::Approx(100.0));
  CHECK(s.class_percent(Severity::Clean) == doctest::Approx(50.0));
}

TEST_CASE("derive_label is idempotent and total over random records") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> n(0, 2);
  for (int trial = 0; trial < 500; ++trial) {
    auto r = record({n(rng), n(rng), n(rng), n(rng)}, n(rng));
    const auto first = derive_label(r);
    CHECK(first == derive_label(r));
    const bool any = std::any_of(r.defect_counts.begin(), r.defect_counts.end(),
                                 [](auto c) { return c > 0; });
    CHECK(first.has_value() == (any || r.total_defects == 0));
  }
}

TEST_CASE("stratified split proportions and determinism") {
  auto corpus = two_class_corpus(100, 10);
  corpus.unlabelled.push_back({"u", {0.0}, 3});
  auto a = stratified_split(corpus, 0.2, 11);
  auto count = [](const std::vector<LabelledInstance>& v, Severity s) {
    return std::count_if(v.begin(), v.end(), [&](auto& i) { return i.label == s; });
  };
  CHECK(count(a.test, Severity::Clean) == 20);
  CHECK(count(a.test, Severity::Major) == 2);
  CHECK(a.train.labelled.size() == 88);
  CHECK(a.train.unlabelled.size() == 1);

  auto b = stratified_split(corpus, 0.2, 11);
  CHECK(a.test == b.test);
  auto other = stratified_split(corpus, 0.2, 12);
  CHECK_FALSE(a.test == other.test);

  CHECK_THROWS_AS(stratified_split(Corpus{}, 0.2, 1), DomainError);
  CHECK_THROWS_AS(stratified_split(corpus, 1.0, 1), DomainError);
}

TEST_CASE("split rounding: enumeration over class sizes and fractions") {
  // Oracle: every class contributes within one instance of fraction * size,
  // never more than the exact product, and a singleton never leaves train.
  for (std::size_t size = 1; size <= 30; ++size) {
    for (int pct = 5; pct <= 95; pct += 5) {
      const double fraction = pct / 100.0;
      auto split = stratified_split(two_class_corpus(size, 1), fraction, size * 100 + pct);
      const auto clean_test = std::count_if(split.test.begin(), split.test.end(),
                                            [](auto& i) { return i.label == Severity::Clean; });
      const double exact = fraction * static_cast<double>(size);
      CHECK(static_cast<double>(clean_test) <= exact + 1e-9);
      CHECK(static_cast<double>(clean_test) > exact - 1.0);
      const auto major_test = split.test.size() - static_cast<std::size_t>(clean_test);
      CHECK(major_test == 0);
    }
  }
}

TEST_CASE("stratified k-fold tests every instance once") {
  auto corpus = two_class_corpus(23, 7);
  auto folds = stratified_kfold(corpus, 5, 4);
  REQUIRE(folds.size() == 5);
  std::multiset<std::string> tested;
  for (const auto& f : folds) {
    CHECK(f.test.size() + f.train.labelled.size() == 30);
    CHECK((f.test.size() == 6));
    for (const auto& i : f.test) tested.insert(i.module_id);
  }
  CHECK(tested.size() == 30);
  CHECK(std::set<std::string>(tested.begin(), tested.end()).size() == 30);
  CHECK_THROWS_AS(stratified_kfold(corpus, 1, 4), DomainError);
  CHECK_THROWS_AS(stratified_kfold(corpus, 31, 4), DomainError);
}

TEST_CASE("synth_corpus sizes, determinism and CSV round trip") {
  SynthSpec spec;
  spec.class_counts[index_of(Severity::Clean)] = 50;
  spec.class_counts[index_of(Severity::Major)] = 5;
  spec.features = 3;
  spec.seed = 7;
  auto c = synth_corpus(spec);
  CHECK(c.labelled.size() == 55);
  CHECK(c.unlabelled.empty());
  CHECK(c.schema.size() == 3);
  CHECK(summarize(c).class_counts[index_of(Severity::Major)] == 5);

  auto again = synth_corpus(spec);
  CHECK(again.labelled == c.labelled);

  spec.unlabelled = 10;
  auto table = synth_records(spec);
  std::ostringstream out;
  write_records_csv(out, table);
  std::istringstream in(out.str());
  auto parsed = parse_corpus(in);
  CHECK(parsed.unlabelled.size() == 10);
  CHECK(parsed.labelled.size() == 55);
  CHECK(parsed.labelled == build_corpus(table).labelled);

  spec.separation = 0.0;
  CHECK_NOTHROW(synth_corpus(spec));
  SynthSpec empty;
  CHECK_THROWS_AS(synth_corpus(empty), DomainError);
  SynthSpec no_features = spec;
  no_features.features = 0;
  CHECK_THROWS_AS(synth_corpus(no_features), DomainError);
}
