#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "irfeed/metrics.hpp"

using namespace irfeed;

namespace {

MetricsRow row(int oz, int chosen, std::optional<int> autotuner) {
  MetricsRow r;
  r.oz_count = oz;
  r.chosen_count = chosen;
  r.autotuner_count = autotuner;
  r.improvement_over_oz = static_cast<double>(oz - chosen) / oz;
  if (autotuner)
    r.improvement_over_autotuner =
        static_cast<double>(*autotuner - chosen) / *autotuner;
  return r;
}

}  // namespace

TEST_CASE("aggregate: hand-computed 2-row oracle") {
  std::vector<MetricsRow> rows = {row(10, 9, 8), row(10, 8, 8)};
  auto s = aggregate(rows);
  CHECK(s.rows == 2);
  CHECK(s.corpus_improvement == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(s.per_example_mean_improvement == doctest::Approx(0.15).epsilon(1e-12));
  REQUIRE(s.fraction_of_autotuner.has_value());
  CHECK(*s.fraction_of_autotuner == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("aggregate: fraction undefined without labels or improvement") {
  // One unlabeled row: no fraction.
  auto s = aggregate({row(10, 9, 8), row(10, 8, std::nullopt)});
  CHECK(!s.fraction_of_autotuner.has_value());

  // Autotuner never beat the baseline: the ratio has no meaning.
  s = aggregate({row(10, 9, 10), row(10, 10, 10)});
  CHECK(!s.fraction_of_autotuner.has_value());

  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
  MetricsRow bad = row(10, 9, 8);
  bad.oz_count = 0;
  CHECK_THROWS_AS(aggregate({bad}), std::invalid_argument);
}

TEST_CASE("pearson matrix matches closed forms on a 5-row dataset") {
  std::vector<MetricsRow> rows;
  const int xs[5] = {1, 2, 3, 4, 5};
  const double ys[5] = {1, 2, 2, 3, 5};
  for (int i = 0; i < 5; ++i) {
    MetricsRow r;
    r.src_inst_cnt_C = xs[i];         // x
    r.src_inst_cnt_G = 2 * xs[i] + 1; // exactly linear in x
    r.num_flags = 10 - xs[i];         // exactly anti-linear in x
    r.tgt_inst_cnt_G = 7;             // constant column
    r.improvement_over_oz = ys[i];
    r.oz_count = 10;
    r.chosen_count = 10;
    rows.push_back(r);
  }
  auto m = pearson_matrix(
      rows, {"src_inst_cnt_C", "src_inst_cnt_G", "num_flags", "tgt_inst_cnt_G",
             "improvement_over_oz"});

  REQUIRE(m.r.size() == 5);
  CHECK(*m.r[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*m.r[0][1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*m.r[0][2] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(!m.r[0][3].has_value());  // against the constant column
  CHECK(!m.r[3][3].has_value());  // constant diagonal stays undefined

  // x = 1..5 vs y = (1,2,2,3,5): sxy = 9, sxx = 10, syy = 9.2.
  const double expected = 9.0 / std::sqrt(10.0 * 9.2);
  CHECK(*m.r[0][4] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(*m.r[4][0] == doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(pearson_matrix({rows[0]}, {"src_inst_cnt_C"}),
                  std::invalid_argument);
  CHECK_THROWS(metric_field("no_such_field"));
}

TEST_CASE("pearson skips rows with missing values pairwise") {
  std::vector<MetricsRow> rows;
  for (int i = 0; i < 4; ++i) {
    MetricsRow r;
    r.src_inst_cnt_C = i;
    if (i < 2) r.tgt_IR_BLEU_C = 0.5 * i;  // only two complete pairs
    rows.push_back(r);
  }
  auto m = pearson_matrix(rows, {"src_inst_cnt_C", "tgt_IR_BLEU_C"});
  REQUIRE(m.r[0][1].has_value());
  CHECK(*m.r[0][1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("error histogram separates zero and uses half-open buckets") {
  std::vector<MetricsRow> rows;
  const int errors[] = {0, 0, 1, 2, 2, 4, 9};
  const double improvements[] = {0.5, 0.3, 0.1, -0.1, -0.3, -0.5, -0.7};
  for (int i = 0; i < 7; ++i) {
    MetricsRow r;
    r.tgt_inst_cnt_error_C = errors[i];
    r.improvement_over_autotuner = improvements[i];
    rows.push_back(r);
  }
  auto h = error_histogram(rows, "tgt_inst_cnt_error_C", {1, 3, 10});
  CHECK(h.zero.count == 2);
  CHECK(*h.zero.mean_improvement == doctest::Approx(0.4));
  REQUIRE(h.buckets.size() == 2);
  CHECK(h.buckets[0].count == 3);  // errors 1, 2, 2 in [1,3)
  CHECK(*h.buckets[0].mean_improvement == doctest::Approx(-0.1));
  CHECK(h.buckets[1].count == 2);  // errors 4, 9 in [3,10)
  CHECK(*h.buckets[1].mean_improvement == doctest::Approx(-0.6));
}

TEST_CASE("subsets select the documented slices") {
  std::vector<MetricsRow> rows = {row(10, 9, 8), row(10, 10, 10),
                                  row(10, 9, std::nullopt)};
  rows[0].tgt_inst_cnt_error_C = 0;
  rows[1].tgt_inst_cnt_error_C = 3;

  CHECK(subset(rows, SubsetKind::All).size() == 3);
  auto non_oz = subset(rows, SubsetKind::AutotunerNonOz);
  REQUIRE(non_oz.size() == 1);
  CHECK(non_oz[0].oz_count == 10);
  CHECK(*non_oz[0].autotuner_count == 8);
  CHECK(subset(rows, SubsetKind::ModelWorseThanAutotuner).size() == 1);
  CHECK(subset(rows, SubsetKind::MispredictedCount).size() == 1);
  CHECK(subset_from_name("mispredicted_count") == SubsetKind::MispredictedCount);
  CHECK(subset_from_name("nope") == std::nullopt);
}

TEST_CASE("row_from_episode takes consistency metrics from the first step") {
  EpisodeResult ep;
  ep.example_id = "x";
  ep.oz_count = 10;
  ep.chosen_count = 8;
  ep.autotuner_count = 8;
  ep.source_count = 12;
  StepRecord s1, s2;
  s1.rec.src_inst_count_pred = 12;
  s1.rec.tgt_inst_count_pred = 9;
  s1.rec.compiled_inst_count = 8;
  s1.rec.tgt_inst_cnt_error_C = 1;
  s1.gen.passes = {"dce", "constfold"};
  s2.rec.tgt_inst_count_pred = 99;
  ep.steps = {s1, s2};

  auto r = row_from_episode(ep);
  CHECK(r.tgt_inst_cnt_G == 9);
  CHECK(r.tgt_inst_cnt_error_C == 1);
  CHECK(r.num_flags == 2);
  CHECK(r.improvement_over_oz == doctest::Approx(0.2));
  CHECK(r.improvement_over_autotuner == doctest::Approx(0.0));
}

TEST_CASE("split_dataset is seeded and ratio-faithful") {
  std::vector<DatasetRecord> records(100);
  for (int i = 0; i < 100; ++i) records[i].example_id = "ex" + std::to_string(i);

  auto a = split_dataset(records, 0.8, 0.1, 0.1, 42);
  auto b = split_dataset(records, 0.8, 0.1, 0.1, 42);
  auto c = split_dataset(records, 0.8, 0.1, 0.1, 43);
  CHECK(a.train.size() == 80);
  CHECK(a.valid.size() == 10);
  CHECK(a.test.size() == 10);
  REQUIRE(b.train.size() == a.train.size());
  bool same = true, same_c = true;
  for (size_t i = 0; i < a.train.size(); ++i) {
    same = same && a.train[i].example_id == b.train[i].example_id;
    same_c = same_c && a.train[i].example_id == c.train[i].example_id;
  }
  CHECK(same);
  CHECK(!same_c);
  CHECK_THROWS_AS(split_dataset(records, 0, 0, 0, 1), std::invalid_argument);
}
