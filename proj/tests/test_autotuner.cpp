#include <doctest.h>

#include "helpers.hpp"
#include "irfeed/autotuner.hpp"
#include "irfeed/corpus.hpp"
#include "irfeed/passes.hpp"

using namespace irfeed;

namespace {

// Independent exhaustive enumerator used as the oracle: tries every
// pipeline up to max_depth in the same length-then-lexicographic order
// and keeps the first minimum.
std::pair<std::vector<std::string>, int> brute_force(
    const std::string& ir, const CompilerBackend& backend, int max_depth) {
  auto names = backend.catalog().names;
  std::sort(names.begin(), names.end());
  // Same baselines the search uses: identity and the reference pipeline.
  std::vector<std::string> best_passes;
  int best = backend.compile(ir, {}).inst_count;
  int ref = backend.compile(ir, backend.catalog().reference_pipeline).inst_count;
  if (ref < best) {
    best = ref;
    best_passes = backend.catalog().reference_pipeline;
  }
  for (int len = 1; len <= max_depth; ++len) {
    std::vector<size_t> idx(len, 0);
    while (true) {
      std::vector<std::string> passes;
      for (size_t i : idx) passes.push_back(names[i]);
      auto r = backend.compile(ir, passes);
      if (r.ok && r.inst_count < best) {
        best = r.inst_count;
        best_passes = passes;
      }
      int pos = len - 1;
      while (pos >= 0 && ++idx[pos] == names.size()) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return {best_passes, best};
}

}  // namespace

TEST_CASE("exhaustive search finds the phase-ordering witness") {
  MiniBackend backend;
  SearchBudget budget;
  budget.max_depth = 2;
  auto r = autotune(read_fixture("phase_order.mir"), backend, budget);
  CHECK(r.best_count == 1);
  CHECK(r.best_passes == std::vector<std::string>{"constfold", "dce"});
}

TEST_CASE("exhaustive search matches an independent enumerator") {
  MiniBackend backend;
  SearchBudget budget;
  budget.max_depth = 2;
  CorpusSpec spec;
  for (uint64_t seed : {1u, 7u, 19u, 23u, 101u}) {
    const std::string ir = generate_program(seed, spec);
    auto expected = brute_force(ir, backend, 2);
    auto got = autotune(ir, backend, budget);
    CHECK(got.best_count == expected.second);
  }
}

TEST_CASE("search always covers the empty and reference pipelines") {
  MiniBackend backend;
  const std::string ir = read_fixture("diamond.mir");
  const int oz = backend.compile(ir, backend.catalog().reference_pipeline).inst_count;

  for (auto strat : {SearchBudget::Strategy::Exhaustive,
                     SearchBudget::Strategy::Random,
                     SearchBudget::Strategy::Greedy}) {
    SearchBudget budget;
    budget.strategy = strat;
    budget.max_depth = 3;
    budget.max_evals = 50;
    budget.seed = 5;
    auto r = autotune(ir, backend, budget);
    CHECK(r.best_count <= oz);
    CHECK(r.evals <= budget.max_evals + 2);
    // The reported pipeline reproduces the reported count.
    CHECK(backend.compile(ir, r.best_passes).inst_count == r.best_count);
  }
}

TEST_CASE("ties break toward shorter, then lexicographic pipelines") {
  MiniBackend backend;
  // Nothing to optimize: every pipeline yields 1 instruction, so the
  // winner must be the empty pipeline.
  SearchBudget budget;
  budget.max_depth = 2;
  auto r = autotune("func f(%x) {\nentry:\n  ret i32 %x\n}\n", backend, budget);
  CHECK(r.best_count == 1);
  CHECK(r.best_passes.empty());
}

TEST_CASE("beats the reference pipeline where ordering is wrong for the input") {
  MiniBackend backend;
  const std::string ir = read_fixture("oz_beater.mir");
  const int oz = backend.compile(ir, backend.catalog().reference_pipeline).inst_count;
  SearchBudget budget;
  budget.max_depth = 4;
  auto r = autotune(ir, backend, budget);
  CHECK(r.best_count < oz);
}

TEST_CASE("uncompilable input raises AutotuneError") {
  MiniBackend backend;
  SearchBudget budget;
  CHECK_THROWS_AS(autotune("junk", backend, budget), AutotuneError);
}

TEST_CASE("random search is deterministic under a fixed seed") {
  MiniBackend backend;
  const std::string ir = generate_program(77, CorpusSpec{});
  SearchBudget budget;
  budget.strategy = SearchBudget::Strategy::Random;
  budget.max_depth = 4;
  budget.max_evals = 40;
  budget.seed = 99;
  auto a = autotune(ir, backend, budget);
  auto b = autotune(ir, backend, budget);
  CHECK(a.best_passes == b.best_passes);
  CHECK(a.best_count == b.best_count);
  CHECK(a.evals == b.evals);
}
