#include "irfeed/autotuner.hpp"

#include <random>

namespace irfeed {

namespace {

struct Best {
  std::vector<std::string> passes;
  int count = 0;
  bool set = false;

  void offer(const std::vector<std::string>& candidate, int cand_count) {
    if (!set || cand_count < count ||
        (cand_count == count &&
         (candidate.size() < passes.size() ||
          (candidate.size() == passes.size() && candidate < passes)))) {
      passes = candidate;
      count = cand_count;
      set = true;
    }
  }
};

}  // namespace

AutotuneResult autotune(const std::string& ir, const CompilerBackend& backend,
                        const SearchBudget& budget) {
  const auto& catalog = backend.catalog();
  if (catalog.names.empty()) throw AutotuneError("empty pass catalog");

  Best best;
  int evals = 0;
  auto evaluate = [&](const std::vector<std::string>& passes) -> int {
    auto r = backend.compile(ir, passes);
    ++evals;
    if (!r.ok) throw AutotuneError("compile failed: " + r.error_message);
    best.offer(passes, r.inst_count);
    return r.inst_count;
  };

  // Baselines first: the identity and reference pipelines are always
  // candidates, keeping best_count <= the -Oz count.
  evaluate({});
  evaluate(catalog.reference_pipeline);

  switch (budget.strategy) {
    case SearchBudget::Strategy::Exhaustive: {
      // All pipelines of length 1..max_depth in length-then-lex order.
      std::vector<size_t> idx;
      for (int depth = 1; depth <= budget.max_depth; ++depth) {
        idx.assign(depth, 0);
        while (true) {
          if (evals >= budget.max_evals) return {best.passes, best.count, evals};
          std::vector<std::string> passes(depth);
          for (int k = 0; k < depth; ++k) passes[k] = catalog.names[idx[k]];
          evaluate(passes);
          int k = depth - 1;
          while (k >= 0 && ++idx[k] == catalog.names.size()) idx[k--] = 0;
          if (k < 0) break;
        }
      }
      break;
    }
    case SearchBudget::Strategy::Random: {
      std::mt19937_64 rng(budget.seed);
      std::uniform_int_distribution<int> len_dist(0, budget.max_depth);
      std::uniform_int_distribution<size_t> name_dist(0, catalog.names.size() - 1);
      while (evals < budget.max_evals) {
        std::vector<std::string> passes(len_dist(rng));
        for (auto& p : passes) p = catalog.names[name_dist(rng)];
        evaluate(passes);
      }
      break;
    }
    case SearchBudget::Strategy::Greedy: {
      std::vector<std::string> current;
      int current_count = backend.compile(ir, current).inst_count;
      for (int depth = 0; depth < budget.max_depth; ++depth) {
        std::vector<std::string> best_next;
        int best_next_count = current_count;
        for (const auto& name : catalog.names) {
          if (evals >= budget.max_evals) break;
          auto candidate = current;
          candidate.push_back(name);
          int c = evaluate(candidate);
          if (c < best_next_count) {
            best_next = candidate;
            best_next_count = c;
          }
        }
        if (best_next.empty()) break;  // no pass helps
        current = std::move(best_next);
        current_count = best_next_count;
      }
      break;
    }
  }
  return {best.passes, best.count, evals};
}

}  // namespace irfeed
