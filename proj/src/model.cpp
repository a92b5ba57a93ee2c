#include "irfeed/model.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "irfeed/ir_text.hpp"
#include "irfeed/util.hpp"

namespace irfeed {

namespace {

std::string rtrim(const std::string& s) {
  size_t e = s.find_last_not_of(" \t\r");
  return e == std::string::npos ? "" : s.substr(0, e + 1);
}

struct Line {
  std::string text;     // without trailing newline
  size_t next_offset;   // offset just past this line's newline
  int number;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> lines;
  size_t pos = 0;
  int no = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    size_t end = nl == std::string::npos ? text.size() : nl;
    lines.push_back({text.substr(pos, end - pos),
                     nl == std::string::npos ? text.size() : nl + 1, ++no});
    pos = nl == std::string::npos ? text.size() : nl + 1;
  }
  return lines;
}

std::optional<int> parse_count_line(const std::string& line,
                                    const std::string& key) {
  const std::string prefix = key + ":";
  if (line.rfind(prefix, 0) != 0) return std::nullopt;
  std::istringstream rest(line.substr(prefix.size()));
  long long v;
  if (!(rest >> v)) return std::nullopt;
  std::string extra;
  if (rest >> extra) return std::nullopt;
  return static_cast<int>(v);
}

}  // namespace

GenParseResult parse_generation(const std::string& text) {
  auto lines = split_lines(text);
  size_t idx = 0;
  auto fail = [&](int line, std::string msg) {
    return GenParseResult{GenParseError{line, std::move(msg)}};
  };
  if (lines.empty()) return fail(1, "empty generation");

  Generation g;
  g.raw_text = text;

  std::string first = rtrim(lines[idx].text);
  if (first == kSureLine) {
    g.confidence = Confidence::Sure;
    ++idx;
  } else if (first == kRetryLine) {
    g.confidence = Confidence::Retry;
    ++idx;
  }

  if (idx >= lines.size()) return fail(lines.back().number, "missing passes line");
  {
    const std::string line = rtrim(lines[idx].text);
    if (line.rfind("passes:", 0) != 0)
      return fail(lines[idx].number, "expected 'passes:' line");
    std::istringstream rest(line.substr(7));
    std::string name;
    while (rest >> name) g.passes.push_back(name);
    ++idx;
  }

  if (idx >= lines.size())
    return fail(lines.back().number, "missing src_inst_count line");
  if (auto v = parse_count_line(rtrim(lines[idx].text), "src_inst_count")) {
    g.src_inst_count_pred = *v;
    ++idx;
  } else {
    return fail(lines[idx].number, "expected 'src_inst_count: N' line");
  }

  if (idx >= lines.size())
    return fail(lines.back().number, "missing tgt_inst_count line");
  if (auto v = parse_count_line(rtrim(lines[idx].text), "tgt_inst_count")) {
    g.tgt_inst_count_pred = *v;
    ++idx;
  } else {
    return fail(lines[idx].number, "expected 'tgt_inst_count: N' line");
  }

  if (idx < lines.size()) {
    if (rtrim(lines[idx].text) == "ir:") {
      g.optimized_ir = text.substr(lines[idx].next_offset);
    } else {
      for (size_t k = idx; k < lines.size(); ++k) {
        if (!rtrim(lines[k].text).empty())
          return fail(lines[k].number, "expected 'ir:' section or end of input");
      }
    }
  }
  return g;
}

std::string render_generation(const Generation& g) {
  std::ostringstream out;
  if (g.confidence == Confidence::Sure) out << kSureLine << "\n";
  if (g.confidence == Confidence::Retry) out << kRetryLine << "\n";
  out << "passes:";
  for (const auto& p : g.passes) out << " " << p;
  out << "\n";
  out << "src_inst_count: " << g.src_inst_count_pred << "\n";
  out << "tgt_inst_count: " << g.tgt_inst_count_pred << "\n";
  if (g.optimized_ir) out << "ir:\n" << *g.optimized_ir;
  return out.str();
}

std::string extract_prompt_ir(const std::string& prompt) {
  size_t start;
  if (prompt.rfind("ir:\n", 0) == 0) {
    start = 4;
  } else {
    size_t pos = prompt.find("\nir:\n");
    if (pos == std::string::npos) return "";
    start = pos + 5;
  }
  static const std::string kGenMarker = "\n--- generation ---\n";
  size_t end = prompt.find(kGenMarker, start);
  if (end == std::string::npos) return prompt.substr(start);
  return prompt.substr(start, end + 1 - start);  // keep the trailing newline
}

StubModel::StubModel(uint64_t seed, const CompilerBackend& backend)
    : seed_(seed), backend_(backend) {}

std::vector<std::string> StubModel::generate(const std::string& prompt,
                                             const GenParams& params) {
  const std::string src_ir = extract_prompt_ir(prompt);
  const uint64_t base = splitmix64(seed_ ^ fnv1a64(prompt));
  const uint64_t temp_mix = fnv1a64(temperature_bucket(params.temperature));

  std::vector<std::string> out;
  out.reserve(params.n_samples);
  for (int i = 0; i < params.n_samples; ++i) {
    std::mt19937_64 rng(
        splitmix64(base ^ temp_mix ^ (0x9e3779b97f4a7c15ull * (i + 1))));

    auto sample_pipeline = [&]() -> std::vector<std::string> {
      const auto& cat = backend_.catalog();
      if (params.temperature <= 0.0) return cat.reference_pipeline;
      std::bernoulli_distribution pick_ref(std::exp(-params.temperature));
      if (pick_ref(rng)) return cat.reference_pipeline;
      std::uniform_int_distribution<size_t> len_dist(0, 4);
      std::uniform_int_distribution<size_t> name_dist(0, cat.names.size() - 1);
      std::vector<std::string> passes(len_dist(rng));
      for (auto& p : passes) p = cat.names[name_dist(rng)];
      return passes;
    };

    const auto predicted = sample_pipeline();
    const auto answered = sample_pipeline();
    const auto pred_result = backend_.compile(src_ir, predicted);
    const auto ans_result = backend_.compile(src_ir, answered);

    Generation g;
    g.passes = answered;
    g.src_inst_count_pred = count_instructions_text(src_ir);
    g.tgt_inst_count_pred = pred_result.ok ? pred_result.inst_count : 0;
    g.confidence = (pred_result.ok && ans_result.ok &&
                    pred_result.inst_count == ans_result.inst_count)
                       ? Confidence::Sure
                       : Confidence::Retry;
    if (!params.stop_after_counts && pred_result.ok)
      g.optimized_ir = pred_result.compiled_ir;
    out.push_back(render_generation(g));
  }
  return out;
}

struct ReplayModel::Impl {
  std::unordered_map<std::string, std::string> responses;
};

ReplayModel::ReplayModel(const std::string& fixture_path)
    : impl_(std::make_shared<Impl>()) {
  std::ifstream in(fixture_path);
  if (!in) throw ModelError("cannot open fixture: " + fixture_path, false);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw ModelError("bad fixture line " + std::to_string(line_no), false);
    if (j.contains("schema")) continue;  // header line
    const std::string key = j.at("prompt_sha256").get<std::string>() + "|" +
                            std::to_string(j.at("index").get<int>()) + "|" +
                            j.at("temperature").get<std::string>();
    impl_->responses[key] = j.at("response").get<std::string>();
  }
}

std::vector<std::string> ReplayModel::generate(const std::string& prompt,
                                               const GenParams& params) {
  const std::string sha = sha256_hex(prompt);
  const std::string bucket = temperature_bucket(params.temperature);
  std::vector<std::string> out;
  for (int i = 0; i < params.n_samples; ++i) {
    const std::string key = sha + "|" + std::to_string(i) + "|" + bucket;
    auto it = impl_->responses.find(key);
    if (it == impl_->responses.end())
      throw ModelError("replay fixture miss for key " + key, false);
    out.push_back(it->second);
  }
  return out;
}

HttpModel::HttpModel(std::string endpoint, std::string api_key,
                     int timeout_seconds, int max_attempts)
    : endpoint_(std::move(endpoint)),
      api_key_(std::move(api_key)),
      timeout_seconds_(timeout_seconds),
      max_attempts_(max_attempts) {}

std::vector<std::string> HttpModel::generate(const std::string& prompt,
                                             const GenParams& params) {
  // Split endpoint into base URL and path.
  std::string base = endpoint_, path = "/";
  size_t scheme = endpoint_.find("://");
  if (scheme != std::string::npos) {
    size_t slash = endpoint_.find('/', scheme + 3);
    if (slash != std::string::npos) {
      base = endpoint_.substr(0, slash);
      path = endpoint_.substr(slash);
    }
  }

  nlohmann::json body = {
      {"prompt", prompt},
      {"temperature", params.temperature},
      {"n", params.n_samples},
      {"max_tokens", params.max_tokens},
  };
  if (params.stop_after_counts) body["stop"] = {"ir:"};

  std::string last_error;
  for (int attempt = 1; attempt <= max_attempts_; ++attempt) {
    httplib::Client client(base);
    client.set_read_timeout(timeout_seconds_, 0);
    client.set_connection_timeout(timeout_seconds_, 0);
    httplib::Headers headers;
    if (!api_key_.empty())
      headers.emplace("Authorization", "Bearer " + api_key_);
    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "http status " + std::to_string(res->status);
      continue;
    }
    auto j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded()) {
      last_error = "malformed JSON response";
      continue;
    }
    std::vector<std::string> out;
    if (j.contains("choices")) {
      for (const auto& c : j["choices"]) out.push_back(c.at("text").get<std::string>());
    } else if (j.contains("texts")) {
      for (const auto& t : j["texts"]) out.push_back(t.get<std::string>());
    } else {
      last_error = "response has neither 'choices' nor 'texts'";
      continue;
    }
    if (static_cast<int>(out.size()) != params.n_samples) {
      last_error = "expected " + std::to_string(params.n_samples) +
                   " completions, got " + std::to_string(out.size());
      continue;
    }
    return out;
  }
  throw ModelError(last_error + " (after " + std::to_string(max_attempts_) +
                       " attempts)",
                   true, max_attempts_);
}

}  // namespace irfeed
