#pragma once

#include <string>
#include <vector>

namespace irfeed {

// Flat token sequence over IR-like text. Tokens never contain whitespace
// and are never empty; rejoining with single spaces re-tokenizes to the
// same sequence.
using TokenSeq = std::vector<std::string>;

TokenSeq tokenize(const std::string& ir_text);
std::string join_tokens(const TokenSeq& tokens);

// Heuristic instruction counter over raw text: counts lines that are not
// blank, comments, block labels, or function header/brace lines. Agrees
// with the parsed instruction count on well-formed mini-IR.
int count_instructions_text(const std::string& ir_text);

struct BleuScore {
  double score = 0.0;
  std::vector<double> precisions;  // orders 1..N actually used
  double brevity_penalty = 1.0;
};

// Corpus-of-one BLEU, unsmoothed: any vanishing precision zeroes the
// score. The effective order shrinks to the candidate length when the
// candidate is shorter than max_order.
BleuScore bleu(const TokenSeq& candidate, const TokenSeq& reference,
               int max_order = 4);

}  // namespace irfeed
