#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "irfeed/orchestrator.hpp"

namespace irfeed {

// Flattened per-example record: the inference-time consistency metrics
// plus baseline counts and improvements.
struct MetricsRow {
  std::string example_id;
  int src_inst_cnt_C = 0;  // compiler count of the source
  int src_inst_cnt_G = 0;  // model-predicted source count
  int tgt_inst_cnt_G = 0;  // model-predicted target count
  std::optional<int> tgt_inst_cnt_C;        // compiled count
  std::optional<int> tgt_inst_cnt_error_C;  // |G - C|
  std::optional<double> tgt_IR_BLEU_C;
  int num_flags = 0;  // pass-list length
  int oz_count = 0;
  std::optional<int> autotuner_count;
  int chosen_count = 0;
  double improvement_over_oz = 0.0;
  std::optional<double> improvement_over_autotuner;
};

// Row for an episode, taking the consistency metrics from its first step.
MetricsRow row_from_episode(const EpisodeResult& ep);

struct Summary {
  double per_example_mean_improvement = 0.0;
  double corpus_improvement = 0.0;  // 1 - sum(chosen)/sum(oz)
  std::optional<double> fraction_of_autotuner;
  int rows = 0;
};

Summary aggregate(const std::vector<MetricsRow>& rows);

enum class SubsetKind { All, AutotunerNonOz, ModelWorseThanAutotuner, MispredictedCount };

std::optional<SubsetKind> subset_from_name(const std::string& name);
const char* subset_name(SubsetKind kind);
std::vector<MetricsRow> subset(const std::vector<MetricsRow>& rows,
                               SubsetKind which);

// Numeric fields addressable by name for correlation and histograms.
using FieldAccessor = std::function<std::optional<double>(const MetricsRow&)>;
const std::vector<std::string>& metric_field_names();
FieldAccessor metric_field(const std::string& name);  // throws on unknown

struct PearsonMatrix {
  std::vector<std::string> fields;
  // r[i][j]; nullopt where undefined (constant column or < 2 pairs).
  std::vector<std::vector<std::optional<double>>> r;
};

// Sample Pearson correlation over pairwise-complete rows. Throws
// std::invalid_argument with fewer than 2 rows.
PearsonMatrix pearson_matrix(const std::vector<MetricsRow>& rows,
                             const std::vector<std::string>& fields);

struct HistogramBucket {
  double lo = 0.0, hi = 0.0;  // [lo, hi)
  int count = 0;
  std::optional<double> mean_improvement;  // over autotuner
};

struct Histogram {
  HistogramBucket zero;  // exact-zero values, reported separately
  std::vector<HistogramBucket> buckets;
};

Histogram error_histogram(const std::vector<MetricsRow>& rows,
                          const std::string& field,
                          const std::vector<double>& bucket_edges);

struct DatasetRecord {
  std::string prompt;
  std::string completion;
  std::string example_id;
  std::vector<std::string> autotuner_passes;
  int autotuner_count = 0;
};

// One record per episode with an autotuner label: the feedback prompt for
// the episode's first step, completed by the confidence line plus the
// autotuner's pass list, true counts, and the IR compiled with them.
// Unlabeled episodes are skipped; skipped_count reports how many.
std::vector<DatasetRecord> emit_finetune_dataset(
    const std::vector<EpisodeResult>& episodes, FeedbackFormat fmt,
    const CompilerBackend& backend, int* skipped_count = nullptr);

struct DatasetSplit {
  std::vector<DatasetRecord> train, valid, test;
};

// Seeded shuffle, then split by ratios (ratios normalized; train gets the
// remainder).
DatasetSplit split_dataset(std::vector<DatasetRecord> records,
                           double train_ratio, double valid_ratio,
                           double test_ratio, uint64_t seed);

}  // namespace irfeed
