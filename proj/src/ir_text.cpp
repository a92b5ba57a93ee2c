#include "irfeed/ir_text.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace irfeed {

namespace {

bool is_punct_token(char c) {
  switch (c) {
    case ',':
    case '(':
    case ')':
    case '{':
    case '}':
    case '=':
    case ':':
      return true;
    default:
      return false;
  }
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

bool is_comment_line(const std::string& line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == ';' || c == '#';
  }
  return false;
}

void tokenize_line(const std::string& line, TokenSeq& out) {
  size_t i = 0;
  const size_t n = line.size();
  while (i < n) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if ((c == '%' || c == '@') && i + 1 < n && is_name_char(line[i + 1])) {
      size_t j = i + 1;
      while (j < n && is_name_char(line[j])) ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
      continue;
    }
    if (is_punct_token(c) || c == '%' || c == '@') {
      out.push_back(std::string(1, c));
      ++i;
      continue;
    }
    size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(line[j])) &&
           !is_punct_token(line[j]) && line[j] != '%' && line[j] != '@') {
      ++j;
    }
    out.push_back(line.substr(i, j - i));
    i = j;
  }
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_label_line(const std::string& trimmed) {
  if (trimmed.size() < 2 || trimmed.back() != ':') return false;
  const std::string name = trimmed.substr(0, trimmed.size() - 1);
  if (name.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!is_name_char(c)) return false;
  }
  return true;
}

bool is_header_or_brace_line(const std::string& trimmed) {
  if (trimmed == "{" || trimmed == "}") return true;
  return trimmed.rfind("func", 0) == 0 || trimmed.rfind("define", 0) == 0;
}

// n-grams keyed by unit-separator-joined tokens; order encoded by
// construction so keys of different orders never collide in counts use.
std::unordered_map<std::string, int> ngram_counts(const TokenSeq& toks,
                                                  int order) {
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(toks.size()) < order) return counts;
  for (size_t i = 0; i + order <= toks.size(); ++i) {
    std::string key;
    for (int k = 0; k < order; ++k) {
      if (k) key.push_back('\x1f');
      key += toks[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

TokenSeq tokenize(const std::string& ir_text) {
  TokenSeq out;
  std::istringstream in(ir_text);
  std::string line;
  while (std::getline(in, line)) {
    if (is_comment_line(line)) continue;
    tokenize_line(line, out);
  }
  return out;
}

std::string join_tokens(const TokenSeq& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

int count_instructions_text(const std::string& ir_text) {
  int count = 0;
  std::istringstream in(ir_text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == ';' || t[0] == '#') continue;
    if (is_label_line(t)) continue;
    if (is_header_or_brace_line(t)) continue;
    ++count;
  }
  return count;
}

BleuScore bleu(const TokenSeq& candidate, const TokenSeq& reference,
               int max_order) {
  BleuScore result;
  if (candidate.empty() && reference.empty()) {
    result.score = 1.0;
    result.brevity_penalty = 1.0;
    result.precisions = {1.0};
    return result;
  }
  if (candidate.empty()) {
    result.score = 0.0;
    result.precisions = {0.0};
    return result;
  }

  const int cand_len = static_cast<int>(candidate.size());
  const int ref_len = static_cast<int>(reference.size());
  const int orders = std::min(max_order, cand_len);

  bool any_zero = false;
  double log_sum = 0.0;
  for (int n = 1; n <= orders; ++n) {
    auto cand_ngrams = ngram_counts(candidate, n);
    auto ref_ngrams = ngram_counts(reference, n);
    long total = 0;
    long matched = 0;
    for (const auto& [key, cnt] : cand_ngrams) {
      total += cnt;
      auto it = ref_ngrams.find(key);
      if (it != ref_ngrams.end()) matched += std::min(cnt, it->second);
    }
    const double p = total > 0 ? static_cast<double>(matched) / total : 0.0;
    result.precisions.push_back(p);
    if (p <= 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(p);
    }
  }

  result.brevity_penalty =
      cand_len < ref_len
          ? std::exp(1.0 - static_cast<double>(ref_len) / cand_len)
          : 1.0;
  result.score = any_zero ? 0.0
                          : result.brevity_penalty *
                                std::exp(log_sum / result.precisions.size());
  return result;
}

}  // namespace irfeed
