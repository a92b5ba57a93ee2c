#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "irfeed/backend.hpp"

namespace irfeed {

enum class Confidence { Sure, Retry, Absent };

inline const char* kSureLine = "I am sure!";
inline const char* kRetryLine = "Let me try again.";

// Parsed model output. Canonical text form:
//   [I am sure! | Let me try again.]
//   passes: p1 p2 ...
//   src_inst_count: N
//   tgt_inst_count: M
//   [ir:
//   <IR text to end of input>]
struct Generation {
  Confidence confidence = Confidence::Absent;
  std::vector<std::string> passes;
  int src_inst_count_pred = 0;
  int tgt_inst_count_pred = 0;
  std::optional<std::string> optimized_ir;
  std::string raw_text;

  bool operator==(const Generation& o) const {
    return confidence == o.confidence && passes == o.passes &&
           src_inst_count_pred == o.src_inst_count_pred &&
           tgt_inst_count_pred == o.tgt_inst_count_pred &&
           optimized_ir == o.optimized_ir;
  }
};

struct GenParseError {
  int line = 0;
  std::string message;
};

using GenParseResult = std::variant<Generation, GenParseError>;

GenParseResult parse_generation(const std::string& text);
std::string render_generation(const Generation& g);

struct GenParams {
  double temperature = 0.0;
  int n_samples = 1;
  int max_tokens = 4096;
  bool stop_after_counts = false;  // Fast-Feedback early stop
};

class ModelError : public std::runtime_error {
 public:
  ModelError(const std::string& what, bool retriable, int attempts = 1)
      : std::runtime_error(what), retriable(retriable), attempts(attempts) {}
  bool retriable;
  int attempts;
};

class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  // Returns params.n_samples raw completion texts.
  virtual std::vector<std::string> generate(const std::string& prompt,
                                            const GenParams& params) = 0;
};

// Model-free stand-in: samples pass lists from the backend catalog with a
// seeded RNG and predicts counts by compiling its own samples. The
// prediction pipeline and the answered pipeline are drawn independently,
// so predictions are right or wrong depending on the draw; at temperature
// zero both collapse to the reference pipeline.
class StubModel : public ModelBackend {
 public:
  StubModel(uint64_t seed, const CompilerBackend& backend);
  std::vector<std::string> generate(const std::string& prompt,
                                    const GenParams& params) override;

 private:
  uint64_t seed_;
  const CompilerBackend& backend_;
};

// Deterministic replay from a JSONL fixture; each line is
// {"prompt_sha256": .., "index": .., "temperature": "0.0", "response": ..}.
class ReplayModel : public ModelBackend {
 public:
  explicit ReplayModel(const std::string& fixture_path);
  std::vector<std::string> generate(const std::string& prompt,
                                    const GenParams& params) override;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Completion-style HTTP adapter. POSTs JSON
// {prompt, temperature, n, max_tokens, stop} and reads either
// {"choices":[{"text":..}]} or {"texts":[..]} from the response.
class HttpModel : public ModelBackend {
 public:
  HttpModel(std::string endpoint, std::string api_key = "",
            int timeout_seconds = 60, int max_attempts = 3);
  std::vector<std::string> generate(const std::string& prompt,
                                    const GenParams& params) override;

 private:
  std::string endpoint_;
  std::string api_key_;
  int timeout_seconds_;
  int max_attempts_;
};

// Extracts the IR block from an optimize or feedback prompt (text after
// the first "ir:" line, up to the generation section marker if present).
std::string extract_prompt_ir(const std::string& prompt);

}  // namespace irfeed
