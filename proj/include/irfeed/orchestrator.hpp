#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irfeed/backend.hpp"
#include "irfeed/feedback.hpp"
#include "irfeed/model.hpp"

namespace irfeed {

struct StepRecord {
  Generation gen;
  FeedbackRecord rec;
  bool parsed_ok = true;
};

enum class Provenance { Model, OzFallback };

// One example's full optimization attempt. chosen_count always comes
// from recompiling chosen_passes; model-predicted numbers never enter
// selection.
struct EpisodeResult {
  std::string example_id;
  std::string source_ir;
  std::vector<std::string> chosen_passes;
  int chosen_count = 0;
  int oz_count = 0;
  std::optional<int> autotuner_count;
  std::vector<std::string> autotuner_passes;  // set only when labeled
  int source_count = 0;
  Provenance provenance = Provenance::Model;
  bool failed = false;  // no valid candidate and no -Oz fallback
  int steps_used = 0;   // = number of generate calls spent
  std::vector<StepRecord> steps;
};

struct SamplingStrategy {
  enum class Kind {
    OriginalSample,     // best-of-n at temperature T
    FeedbackOptTFb0,    // optimize at T (n samples), feedback each at 0
    FeedbackOpt0FbT,    // optimize at 0 once, n feedback samples at T
    FeedbackThenSample, // optimize at 0, feedback at 0, then n samples at T
  };
  Kind kind = Kind::OriginalSample;
  double temperature = 0.0;
  int n_samples = 1;
};

std::optional<SamplingStrategy::Kind> strategy_kind_from_name(
    const std::string& name);
const char* strategy_kind_name(SamplingStrategy::Kind kind);

// Fixed, versioned optimize-prompt template; part of the wire format for
// replay fixtures.
std::string optimize_prompt(const std::string& src_ir);

// Canonical text of a step's generation (the raw text when it failed to
// parse).
std::string generation_text(const StepRecord& step);

StepRecord task_optimize(const std::string& src_ir, ModelBackend& model,
                         const CompilerBackend& backend,
                         double temperature = 0.0,
                         bool stop_after_counts = false);

StepRecord task_feedback(const std::string& src_ir, const StepRecord& prior,
                         FeedbackFormat fmt, ModelBackend& model,
                         const CompilerBackend& backend,
                         double temperature = 0.0);

// Task Optimize then chained Task Feedback, stopping early on an
// "I am sure!" generation; keeps the best candidate over all steps.
EpisodeResult iterate_feedback(const std::string& example_id,
                               const std::string& src_ir, FeedbackFormat fmt,
                               ModelBackend& model,
                               const CompilerBackend& backend,
                               int max_steps = 5, bool oz_combine = true,
                               double temperature = 0.0);

EpisodeResult sample_optimize(const std::string& example_id,
                              const std::string& src_ir, ModelBackend& model,
                              const CompilerBackend& backend, int n,
                              double temperature, bool oz_combine = true);

EpisodeResult run_strategy(const std::string& example_id,
                           const std::string& src_ir,
                           const SamplingStrategy& strat, FeedbackFormat fmt,
                           ModelBackend& model, const CompilerBackend& backend,
                           bool oz_combine = true);

}  // namespace irfeed
