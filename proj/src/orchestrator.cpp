#include "irfeed/orchestrator.hpp"

#include <limits>

#include "irfeed/ir_text.hpp"

namespace irfeed {

std::optional<SamplingStrategy::Kind> strategy_kind_from_name(
    const std::string& name) {
  using Kind = SamplingStrategy::Kind;
  if (name == "original_sample") return Kind::OriginalSample;
  if (name == "feedback_opt_T_fb_0") return Kind::FeedbackOptTFb0;
  if (name == "feedback_opt_0_fb_T") return Kind::FeedbackOpt0FbT;
  if (name == "feedback_then_sample") return Kind::FeedbackThenSample;
  return std::nullopt;
}

const char* strategy_kind_name(SamplingStrategy::Kind kind) {
  switch (kind) {
    case SamplingStrategy::Kind::OriginalSample: return "original_sample";
    case SamplingStrategy::Kind::FeedbackOptTFb0: return "feedback_opt_T_fb_0";
    case SamplingStrategy::Kind::FeedbackOpt0FbT: return "feedback_opt_0_fb_T";
    case SamplingStrategy::Kind::FeedbackThenSample: return "feedback_then_sample";
  }
  return "?";
}

std::string optimize_prompt(const std::string& src_ir) {
  std::string out =
      "Optimize the following IR to minimize instruction count.\n"
      "Reply with the pass list, source and target instruction counts, "
      "and the optimized IR.\n"
      "ir:\n";
  out += src_ir;
  if (src_ir.empty() || src_ir.back() != '\n') out += "\n";
  return out;
}

std::string generation_text(const StepRecord& step) {
  return step.parsed_ok ? render_generation(step.gen) : step.gen.raw_text;
}

namespace {

StepRecord make_step(const std::string& src_ir, const std::string& raw_text,
                     const CompilerBackend& backend) {
  StepRecord step;
  auto parsed = parse_generation(raw_text);
  if (auto* g = std::get_if<Generation>(&parsed)) {
    step.gen = *g;
    step.rec = evaluate_generation(src_ir, *g, backend);
  } else {
    step.parsed_ok = false;
    step.gen.raw_text = raw_text;
    step.rec = unparseable_generation_record(src_ir,
                                             std::get<GenParseError>(parsed));
  }
  return step;
}

EpisodeResult finalize_episode(const std::string& example_id,
                               const std::string& src_ir,
                               std::vector<StepRecord> steps,
                               const CompilerBackend& backend,
                               bool oz_combine, int generations_used) {
  EpisodeResult ep;
  ep.example_id = example_id;
  ep.source_ir = src_ir;
  ep.source_count = count_instructions_text(src_ir);
  ep.steps_used = generations_used;

  auto oz = backend.compile(src_ir, backend.catalog().reference_pipeline);
  ep.oz_count = oz.ok ? oz.inst_count : ep.source_count;

  int best = std::numeric_limits<int>::max();
  const StepRecord* best_step = nullptr;
  for (const auto& s : steps) {
    if (s.rec.compiled_inst_count && *s.rec.compiled_inst_count < best) {
      best = *s.rec.compiled_inst_count;
      best_step = &s;
    }
  }

  if (best_step && (!oz_combine || best <= ep.oz_count)) {
    ep.chosen_passes = best_step->gen.passes;
    ep.chosen_count = best;
    ep.provenance = Provenance::Model;
  } else if (oz_combine) {
    ep.chosen_passes = backend.catalog().reference_pipeline;
    ep.chosen_count = ep.oz_count;
    ep.provenance = Provenance::OzFallback;
  } else {
    ep.failed = true;
    ep.chosen_count = ep.source_count;
  }
  ep.steps = std::move(steps);
  return ep;
}

}  // namespace

StepRecord task_optimize(const std::string& src_ir, ModelBackend& model,
                         const CompilerBackend& backend, double temperature,
                         bool stop_after_counts) {
  GenParams params;
  params.temperature = temperature;
  params.n_samples = 1;
  params.stop_after_counts = stop_after_counts;
  auto texts = model.generate(optimize_prompt(src_ir), params);
  return make_step(src_ir, texts.at(0), backend);
}

StepRecord task_feedback(const std::string& src_ir, const StepRecord& prior,
                         FeedbackFormat fmt, ModelBackend& model,
                         const CompilerBackend& backend, double temperature) {
  const std::string prompt =
      build_feedback_prompt(optimize_prompt(src_ir), generation_text(prior),
                            render_feedback(prior.rec, fmt));
  GenParams params;
  params.temperature = temperature;
  params.n_samples = 1;
  params.stop_after_counts = fmt == FeedbackFormat::Fast;
  auto texts = model.generate(prompt, params);
  return make_step(src_ir, texts.at(0), backend);
}

EpisodeResult iterate_feedback(const std::string& example_id,
                               const std::string& src_ir, FeedbackFormat fmt,
                               ModelBackend& model,
                               const CompilerBackend& backend, int max_steps,
                               bool oz_combine, double temperature) {
  std::vector<StepRecord> steps;
  steps.push_back(task_optimize(src_ir, model, backend, temperature,
                                fmt == FeedbackFormat::Fast));
  while (static_cast<int>(steps.size()) < max_steps &&
         steps.back().gen.confidence != Confidence::Sure) {
    steps.push_back(
        task_feedback(src_ir, steps.back(), fmt, model, backend, temperature));
  }
  const int used = static_cast<int>(steps.size());
  return finalize_episode(example_id, src_ir, std::move(steps), backend,
                          oz_combine, used);
}

EpisodeResult sample_optimize(const std::string& example_id,
                              const std::string& src_ir, ModelBackend& model,
                              const CompilerBackend& backend, int n,
                              double temperature, bool oz_combine) {
  GenParams params;
  params.temperature = temperature;
  params.n_samples = n;
  auto texts = model.generate(optimize_prompt(src_ir), params);
  std::vector<StepRecord> steps;
  steps.reserve(texts.size());
  for (const auto& t : texts) steps.push_back(make_step(src_ir, t, backend));
  return finalize_episode(example_id, src_ir, std::move(steps), backend,
                          oz_combine, n);
}

EpisodeResult run_strategy(const std::string& example_id,
                           const std::string& src_ir,
                           const SamplingStrategy& strat, FeedbackFormat fmt,
                           ModelBackend& model, const CompilerBackend& backend,
                           bool oz_combine) {
  using Kind = SamplingStrategy::Kind;
  std::vector<StepRecord> steps;
  int generations = 0;

  auto feedback_samples = [&](const StepRecord& prior, int n, double temp) {
    const std::string prompt =
        build_feedback_prompt(optimize_prompt(src_ir), generation_text(prior),
                              render_feedback(prior.rec, fmt));
    GenParams params;
    params.temperature = temp;
    params.n_samples = n;
    params.stop_after_counts = fmt == FeedbackFormat::Fast;
    auto texts = model.generate(prompt, params);
    generations += n;
    for (const auto& t : texts) steps.push_back(make_step(src_ir, t, backend));
  };

  switch (strat.kind) {
    case Kind::OriginalSample:
      return sample_optimize(example_id, src_ir, model, backend,
                             strat.n_samples, strat.temperature, oz_combine);
    case Kind::FeedbackOptTFb0: {
      GenParams params;
      params.temperature = strat.temperature;
      params.n_samples = strat.n_samples;
      auto texts = model.generate(optimize_prompt(src_ir), params);
      generations += strat.n_samples;
      std::vector<StepRecord> opt_steps;
      for (const auto& t : texts)
        opt_steps.push_back(make_step(src_ir, t, backend));
      for (const auto& s : opt_steps) steps.push_back(s);
      for (const auto& s : opt_steps) {
        feedback_samples(s, 1, 0.0);
      }
      break;
    }
    case Kind::FeedbackOpt0FbT: {
      steps.push_back(task_optimize(src_ir, model, backend, 0.0,
                                    fmt == FeedbackFormat::Fast));
      generations += 1;
      feedback_samples(steps.front(), strat.n_samples, strat.temperature);
      break;
    }
    case Kind::FeedbackThenSample: {
      steps.push_back(task_optimize(src_ir, model, backend, 0.0,
                                    fmt == FeedbackFormat::Fast));
      generations += 1;
      feedback_samples(steps.front(), 1, 0.0);
      const StepRecord anchor = steps.back();
      feedback_samples(anchor, strat.n_samples, strat.temperature);
      break;
    }
  }
  return finalize_episode(example_id, src_ir, std::move(steps), backend,
                          oz_combine, generations);
}

}  // namespace irfeed
