#include "irfeed/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "irfeed/ir_text.hpp"

namespace irfeed {

MetricsRow row_from_episode(const EpisodeResult& ep) {
  MetricsRow row;
  row.example_id = ep.example_id;
  row.oz_count = ep.oz_count;
  row.autotuner_count = ep.autotuner_count;
  row.chosen_count = ep.chosen_count;
  row.src_inst_cnt_C = ep.source_count;
  if (!ep.steps.empty()) {
    const auto& first = ep.steps.front();
    row.src_inst_cnt_G = first.rec.src_inst_count_pred;
    row.tgt_inst_cnt_G = first.rec.tgt_inst_count_pred;
    row.tgt_inst_cnt_C = first.rec.compiled_inst_count;
    row.tgt_inst_cnt_error_C = first.rec.tgt_inst_cnt_error_C;
    row.tgt_IR_BLEU_C = first.rec.tgt_IR_BLEU_C;
    row.num_flags = static_cast<int>(first.gen.passes.size());
  }
  if (ep.oz_count > 0) {
    row.improvement_over_oz =
        static_cast<double>(ep.oz_count - ep.chosen_count) / ep.oz_count;
  }
  if (ep.autotuner_count && *ep.autotuner_count > 0) {
    row.improvement_over_autotuner =
        static_cast<double>(*ep.autotuner_count - ep.chosen_count) /
        *ep.autotuner_count;
  }
  return row;
}

Summary aggregate(const std::vector<MetricsRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("aggregate: empty rows");
  Summary s;
  s.rows = static_cast<int>(rows.size());
  double sum_chosen = 0, sum_oz = 0, sum_auto = 0, mean_acc = 0;
  bool all_labeled = true;
  for (const auto& r : rows) {
    if (r.oz_count <= 0) throw std::invalid_argument("aggregate: oz_count <= 0");
    sum_chosen += r.chosen_count;
    sum_oz += r.oz_count;
    mean_acc += r.improvement_over_oz;
    if (r.autotuner_count)
      sum_auto += *r.autotuner_count;
    else
      all_labeled = false;
  }
  s.per_example_mean_improvement = mean_acc / rows.size();
  s.corpus_improvement = 1.0 - sum_chosen / sum_oz;
  if (all_labeled) {
    const double autotuner_improvement = 1.0 - sum_auto / sum_oz;
    if (autotuner_improvement > 0)
      s.fraction_of_autotuner = s.corpus_improvement / autotuner_improvement;
  }
  return s;
}

std::optional<SubsetKind> subset_from_name(const std::string& name) {
  if (name == "all") return SubsetKind::All;
  if (name == "autotuner_non_oz") return SubsetKind::AutotunerNonOz;
  if (name == "model_worse_than_autotuner")
    return SubsetKind::ModelWorseThanAutotuner;
  if (name == "mispredicted_count") return SubsetKind::MispredictedCount;
  return std::nullopt;
}

const char* subset_name(SubsetKind kind) {
  switch (kind) {
    case SubsetKind::All: return "all";
    case SubsetKind::AutotunerNonOz: return "autotuner_non_oz";
    case SubsetKind::ModelWorseThanAutotuner: return "model_worse_than_autotuner";
    case SubsetKind::MispredictedCount: return "mispredicted_count";
  }
  return "?";
}

std::vector<MetricsRow> subset(const std::vector<MetricsRow>& rows,
                               SubsetKind which) {
  std::vector<MetricsRow> out;
  for (const auto& r : rows) {
    bool keep = false;
    switch (which) {
      case SubsetKind::All:
        keep = true;
        break;
      case SubsetKind::AutotunerNonOz:
        keep = r.autotuner_count && *r.autotuner_count < r.oz_count;
        break;
      case SubsetKind::ModelWorseThanAutotuner:
        keep = r.autotuner_count && r.chosen_count > *r.autotuner_count;
        break;
      case SubsetKind::MispredictedCount:
        keep = r.tgt_inst_cnt_error_C && *r.tgt_inst_cnt_error_C > 0;
        break;
    }
    if (keep) out.push_back(r);
  }
  return out;
}

const std::vector<std::string>& metric_field_names() {
  static const std::vector<std::string> names = {
      "src_inst_cnt_C",       "src_inst_cnt_G",
      "tgt_inst_cnt_G",       "tgt_inst_cnt_C",
      "tgt_inst_cnt_error_C", "tgt_IR_BLEU_C",
      "num_flags",            "improvement_over_oz",
      "improvement_over_autotuner"};
  return names;
}

FieldAccessor metric_field(const std::string& name) {
  using R = const MetricsRow&;
  static const std::unordered_map<std::string, FieldAccessor> fields = {
      {"src_inst_cnt_C", [](R r) { return std::optional<double>(r.src_inst_cnt_C); }},
      {"src_inst_cnt_G", [](R r) { return std::optional<double>(r.src_inst_cnt_G); }},
      {"tgt_inst_cnt_G", [](R r) { return std::optional<double>(r.tgt_inst_cnt_G); }},
      {"tgt_inst_cnt_C",
       [](R r) -> std::optional<double> {
         if (r.tgt_inst_cnt_C) return *r.tgt_inst_cnt_C;
         return std::nullopt;
       }},
      {"tgt_inst_cnt_error_C",
       [](R r) -> std::optional<double> {
         if (r.tgt_inst_cnt_error_C) return *r.tgt_inst_cnt_error_C;
         return std::nullopt;
       }},
      {"tgt_IR_BLEU_C",
       [](R r) -> std::optional<double> { return r.tgt_IR_BLEU_C; }},
      {"num_flags", [](R r) { return std::optional<double>(r.num_flags); }},
      {"improvement_over_oz",
       [](R r) { return std::optional<double>(r.improvement_over_oz); }},
      {"improvement_over_autotuner",
       [](R r) -> std::optional<double> { return r.improvement_over_autotuner; }},
  };
  auto it = fields.find(name);
  if (it == fields.end())
    throw std::invalid_argument("unknown metric field: " + name);
  return it->second;
}

PearsonMatrix pearson_matrix(const std::vector<MetricsRow>& rows,
                             const std::vector<std::string>& fields) {
  if (rows.size() < 2)
    throw std::invalid_argument("pearson_matrix: need at least 2 rows");
  PearsonMatrix m;
  m.fields = fields;
  std::vector<FieldAccessor> access;
  for (const auto& f : fields) access.push_back(metric_field(f));

  const size_t n = fields.size();
  m.r.assign(n, std::vector<std::optional<double>>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      // Pairwise-complete observations.
      std::vector<double> xs, ys;
      for (const auto& row : rows) {
        auto x = access[i](row);
        auto y = access[j](row);
        if (x && y) {
          xs.push_back(*x);
          ys.push_back(*y);
        }
      }
      std::optional<double> r;
      if (xs.size() >= 2) {
        const double nn = static_cast<double>(xs.size());
        const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / nn;
        const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / nn;
        double sxx = 0, syy = 0, sxy = 0;
        for (size_t k = 0; k < xs.size(); ++k) {
          sxx += (xs[k] - mx) * (xs[k] - mx);
          syy += (ys[k] - my) * (ys[k] - my);
          sxy += (xs[k] - mx) * (ys[k] - my);
        }
        if (sxx > 0 && syy > 0) r = sxy / std::sqrt(sxx * syy);
        else if (i == j && sxx == 0)
          r = std::nullopt;  // constant column: undefined even on the diagonal
      }
      m.r[i][j] = r;
      m.r[j][i] = r;
      if (i == j && r) m.r[i][j] = 1.0;
    }
  }
  return m;
}

Histogram error_histogram(const std::vector<MetricsRow>& rows,
                          const std::string& field,
                          const std::vector<double>& bucket_edges) {
  auto access = metric_field(field);
  Histogram h;
  h.zero = {0.0, 0.0, 0, std::nullopt};
  for (size_t i = 0; i + 1 < bucket_edges.size(); ++i)
    h.buckets.push_back({bucket_edges[i], bucket_edges[i + 1], 0, std::nullopt});

  std::vector<double> sums(h.buckets.size(), 0.0);
  std::vector<int> sum_counts(h.buckets.size(), 0);
  double zero_sum = 0.0;
  int zero_n = 0;

  for (const auto& r : rows) {
    auto v = access(r);
    if (!v) continue;
    if (*v == 0.0) {
      ++h.zero.count;
      if (r.improvement_over_autotuner) {
        zero_sum += *r.improvement_over_autotuner;
        ++zero_n;
      }
      continue;
    }
    for (size_t i = 0; i < h.buckets.size(); ++i) {
      if (*v >= h.buckets[i].lo && *v < h.buckets[i].hi) {
        ++h.buckets[i].count;
        if (r.improvement_over_autotuner) {
          sums[i] += *r.improvement_over_autotuner;
          ++sum_counts[i];
        }
        break;
      }
    }
  }
  if (zero_n > 0) h.zero.mean_improvement = zero_sum / zero_n;
  for (size_t i = 0; i < h.buckets.size(); ++i)
    if (sum_counts[i] > 0) h.buckets[i].mean_improvement = sums[i] / sum_counts[i];
  return h;
}

std::vector<DatasetRecord> emit_finetune_dataset(
    const std::vector<EpisodeResult>& episodes, FeedbackFormat fmt,
    const CompilerBackend& backend, int* skipped_count) {
  std::vector<DatasetRecord> records;
  int skipped = 0;
  for (const auto& ep : episodes) {
    if (!ep.autotuner_count || ep.steps.empty()) {
      ++skipped;
      continue;
    }
    const auto& first = ep.steps.front();
    auto compiled = backend.compile(ep.source_ir, ep.autotuner_passes);
    if (!compiled.ok) {
      ++skipped;
      continue;
    }

    DatasetRecord rec;
    rec.example_id = ep.example_id;
    rec.autotuner_passes = ep.autotuner_passes;
    rec.autotuner_count = compiled.inst_count;
    rec.prompt =
        build_feedback_prompt(optimize_prompt(ep.source_ir),
                              generation_text(first),
                              render_feedback(first.rec, fmt));

    Generation target;
    target.confidence = confidence_label(first.rec);
    target.passes = ep.autotuner_passes;
    target.src_inst_count_pred = ep.source_count;
    target.tgt_inst_count_pred = compiled.inst_count;
    target.optimized_ir = compiled.compiled_ir;
    rec.completion = render_generation(target);
    records.push_back(std::move(rec));
  }
  if (skipped_count) *skipped_count = skipped;
  return records;
}

DatasetSplit split_dataset(std::vector<DatasetRecord> records,
                           double train_ratio, double valid_ratio,
                           double test_ratio, uint64_t seed) {
  const double total = train_ratio + valid_ratio + test_ratio;
  if (total <= 0) throw std::invalid_argument("split_dataset: zero ratios");
  std::mt19937_64 rng(seed);
  std::shuffle(records.begin(), records.end(), rng);
  DatasetSplit split;
  const size_t n = records.size();
  const size_t n_valid = static_cast<size_t>(n * valid_ratio / total);
  const size_t n_test = static_cast<size_t>(n * test_ratio / total);
  const size_t n_train = n - n_valid - n_test;
  for (size_t i = 0; i < n; ++i) {
    if (i < n_train)
      split.train.push_back(std::move(records[i]));
    else if (i < n_train + n_valid)
      split.valid.push_back(std::move(records[i]));
    else
      split.test.push_back(std::move(records[i]));
  }
  return split;
}

}  // namespace irfeed
