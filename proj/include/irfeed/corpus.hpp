#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace irfeed {

struct CorpusSpec {
  int size = 100;
  uint64_t seed = 0;
  int max_blocks = 4;
  int max_body_instrs = 6;  // per block, before the terminator
};

struct CorpusExample {
  std::string id;       // "gen-000042"
  std::string ir_text;  // verifies under the mini-IR parser
};

// Seeded random mini-IR programs. Every program verifies by construction
// and carries a mix of foldable, duplicated, and dead code so the pass
// catalog has real work and orderings matter.
std::vector<CorpusExample> generate_corpus(const CorpusSpec& spec);

std::string generate_program(uint64_t seed, const CorpusSpec& spec);

}  // namespace irfeed
