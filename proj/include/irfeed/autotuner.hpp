#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "irfeed/backend.hpp"

namespace irfeed {

struct SearchBudget {
  enum class Strategy { Exhaustive, Random, Greedy };
  Strategy strategy = Strategy::Exhaustive;
  int max_depth = 3;
  int max_evals = 100000;
  uint64_t seed = 0;
};

struct AutotuneResult {
  std::vector<std::string> best_passes;
  int best_count = 0;
  int evals = 0;
};

class AutotuneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Searches pass orderings for the minimal compiled instruction count. The
// empty and reference (-Oz) pipelines are always evaluated, so
// best_count <= reference count. Ties break by shorter pipeline, then
// lexicographic pass names. Throws AutotuneError when ir does not compile.
AutotuneResult autotune(const std::string& ir, const CompilerBackend& backend,
                        const SearchBudget& budget);

}  // namespace irfeed
