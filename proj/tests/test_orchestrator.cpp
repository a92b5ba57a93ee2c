#include <doctest.h>

#include "helpers.hpp"
#include "irfeed/model.hpp"
#include "irfeed/orchestrator.hpp"

using namespace irfeed;

namespace {

// Returns a fixed sequence of responses, one per generate call, and
// counts the generations issued.
class ScriptedModel : public ModelBackend {
 public:
  explicit ScriptedModel(std::vector<std::string> responses)
      : responses_(std::move(responses)) {}

  std::vector<std::string> generate(const std::string&,
                                    const GenParams& params) override {
    std::vector<std::string> out;
    for (int i = 0; i < params.n_samples; ++i) {
      REQUIRE(next_ < responses_.size());
      out.push_back(responses_[next_++]);
      ++generations;
    }
    return out;
  }

  int generations = 0;

 private:
  std::vector<std::string> responses_;
  size_t next_ = 0;
};

std::string retry_gen(const std::string& passes, int tgt) {
  return std::string(kRetryLine) + "\npasses: " + passes +
         "\nsrc_inst_count: 3\ntgt_inst_count: " + std::to_string(tgt) + "\n";
}

std::string sure_gen(const std::string& passes, int tgt) {
  return std::string(kSureLine) + "\npasses: " + passes +
         "\nsrc_inst_count: 3\ntgt_inst_count: " + std::to_string(tgt) + "\n";
}

}  // namespace

TEST_CASE("iterate_feedback stops on the first sure generation") {
  const std::string src = read_fixture("phase_order.mir");
  MiniBackend backend;

  for (int k = 1; k <= 5; ++k) {
    std::vector<std::string> responses;
    for (int i = 0; i < k - 1; ++i) responses.push_back(retry_gen("dce", 0));
    responses.push_back(sure_gen("constfold dce", 1));
    for (int i = 0; i < 5; ++i) responses.push_back(sure_gen("dce", 3));

    ScriptedModel model(responses);
    auto ep = iterate_feedback("ex", src, FeedbackFormat::Fast, model, backend, 5);
    CHECK(model.generations == k);
    CHECK(ep.steps_used == k);
    CHECK(ep.steps.size() == static_cast<size_t>(k));
    CHECK(ep.chosen_count == 1);
    CHECK(ep.provenance == Provenance::Model);
  }
}

TEST_CASE("iterate_feedback keeps the best candidate over all steps") {
  const std::string src = read_fixture("phase_order.mir");
  MiniBackend backend;
  // Step 1 finds the best pipeline but is not confident; step 2 is
  // confident but worse. Selection ignores confidence.
  ScriptedModel model({retry_gen("constfold dce", 9), sure_gen("dce", 3)});
  auto ep = iterate_feedback("ex", src, FeedbackFormat::Fast, model, backend, 5);
  CHECK(ep.steps_used == 2);
  CHECK(ep.chosen_count == 1);
  CHECK(ep.chosen_passes == std::vector<std::string>{"constfold", "dce"});
}

TEST_CASE("equal compute: iterate of k steps and sample of n=k issue k generations") {
  const std::string src = read_fixture("phase_order.mir");
  MiniBackend backend;

  std::vector<std::string> responses(5, retry_gen("dce", 3));
  ScriptedModel iter_model(responses);
  auto iter_ep =
      iterate_feedback("ex", src, FeedbackFormat::Fast, iter_model, backend, 5);
  CHECK(iter_model.generations == 5);
  CHECK(iter_ep.steps_used == 5);

  ScriptedModel sample_model(responses);
  auto sample_ep = sample_optimize("ex", src, sample_model, backend, 5, 0.7);
  CHECK(sample_model.generations == 5);
  CHECK(sample_ep.steps_used == 5);
}

TEST_CASE("oz fallback engages when the model cannot do better") {
  const std::string src = read_fixture("phase_order.mir");
  MiniBackend backend;

  // Valid but weak pipeline: -Oz wins and is substituted.
  {
    ScriptedModel model({sure_gen("dce", 3)});
    auto ep = iterate_feedback("ex", src, FeedbackFormat::Fast, model, backend, 5);
    CHECK(ep.provenance == Provenance::OzFallback);
    CHECK(ep.chosen_count == ep.oz_count);
    CHECK(!ep.failed);
  }
  // Same episode without oz-combine keeps the model's answer.
  {
    ScriptedModel model({sure_gen("dce", 3)});
    auto ep = iterate_feedback("ex", src, FeedbackFormat::Fast, model, backend,
                               5, /*oz_combine=*/false);
    CHECK(ep.provenance == Provenance::Model);
    CHECK(ep.chosen_count == 3);
  }
  // No usable candidate at all and no fallback: the episode fails.
  {
    ScriptedModel model({sure_gen("bogus", 1), sure_gen("bogus", 1),
                         sure_gen("bogus", 1), sure_gen("bogus", 1),
                         sure_gen("bogus", 1)});
    auto ep = iterate_feedback("ex", src, FeedbackFormat::Fast, model, backend,
                               5, /*oz_combine=*/false);
    CHECK(ep.failed);
    CHECK(ep.chosen_count == ep.source_count);
  }
}

TEST_CASE("unparseable generations are recorded, not fatal") {
  const std::string src = read_fixture("phase_order.mir");
  MiniBackend backend;
  ScriptedModel model({"complete nonsense", sure_gen("constfold dce", 1)});
  auto ep = iterate_feedback("ex", src, FeedbackFormat::Short, model, backend, 5);
  REQUIRE(ep.steps.size() == 2);
  CHECK(!ep.steps[0].parsed_ok);
  CHECK(generation_text(ep.steps[0]) == "complete nonsense");
  CHECK(ep.chosen_count == 1);
}

TEST_CASE("strategies account generations correctly") {
  const std::string src = read_fixture("phase_order.mir");
  MiniBackend backend;
  const auto r = retry_gen("dce", 3);

  SamplingStrategy strat;
  strat.n_samples = 3;
  strat.temperature = 0.9;

  strat.kind = SamplingStrategy::Kind::OriginalSample;
  {
    ScriptedModel model(std::vector<std::string>(3, r));
    auto ep = run_strategy("ex", src, strat, FeedbackFormat::Fast, model, backend);
    CHECK(ep.steps_used == 3);
    CHECK(model.generations == 3);
  }
  strat.kind = SamplingStrategy::Kind::FeedbackOptTFb0;
  {
    // n optimize samples, then one feedback generation for each.
    ScriptedModel model(std::vector<std::string>(6, r));
    auto ep = run_strategy("ex", src, strat, FeedbackFormat::Fast, model, backend);
    CHECK(ep.steps_used == 6);
    CHECK(model.generations == 6);
  }
  strat.kind = SamplingStrategy::Kind::FeedbackOpt0FbT;
  {
    // One optimize generation, then n feedback samples.
    ScriptedModel model(std::vector<std::string>(4, r));
    auto ep = run_strategy("ex", src, strat, FeedbackFormat::Fast, model, backend);
    CHECK(ep.steps_used == 4);
    CHECK(model.generations == 4);
  }
  strat.kind = SamplingStrategy::Kind::FeedbackThenSample;
  {
    // Optimize, one feedback round, then n samples from the feedback prompt.
    ScriptedModel model(std::vector<std::string>(5, r));
    auto ep = run_strategy("ex", src, strat, FeedbackFormat::Fast, model, backend);
    CHECK(ep.steps_used == 5);
    CHECK(model.generations == 5);
  }
}

TEST_CASE("sample n=1 at temperature zero matches the single optimize task") {
  const std::string src = read_fixture("diamond.mir");
  MiniBackend backend;
  StubModel m1(3, backend), m2(3, backend);

  auto sampled = sample_optimize("ex", src, m1, backend, 1, 0.0);
  auto stepped = task_optimize(src, m2, backend, 0.0);
  REQUIRE(sampled.steps.size() == 1);
  CHECK(sampled.steps[0].gen == stepped.gen);
  CHECK(sampled.chosen_count == *stepped.rec.compiled_inst_count);
}

TEST_CASE("optimize prompt ends with the ir section") {
  const std::string src = read_fixture("diamond.mir");
  const std::string prompt = optimize_prompt(src);
  CHECK(prompt.size() > src.size());
  CHECK(prompt.substr(prompt.size() - src.size()) == src);
  CHECK(prompt.find("ir:\n" + src) != std::string::npos);
}
