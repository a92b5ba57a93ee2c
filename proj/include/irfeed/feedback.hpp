#pragma once

#include <optional>
#include <string>

#include "irfeed/backend.hpp"
#include "irfeed/model.hpp"

namespace irfeed {

// Compiler-derived consistency metrics for one generation. Every failure
// mode is data; evaluate_generation never throws.
struct FeedbackRecord {
  bool pass_list_valid = false;
  std::vector<std::string> unknown_passes;

  int src_inst_count_pred = 0;
  int src_inst_count_actual = 0;
  bool src_count_correct = false;

  int tgt_inst_count_pred = 0;
  std::optional<int> compiled_inst_count;   // absent if compile failed/skipped
  std::optional<int> tgt_inst_cnt_error_C;  // |pred - compiled|
  bool tgt_count_correct = false;
  std::optional<std::string> compile_error;

  bool generated_ir_present = false;
  std::optional<bool> generated_ir_compilable;
  std::optional<std::string> generated_ir_error;
  std::optional<int> tgt_inst_cnt_G;        // count of the generated IR
  std::optional<double> tgt_IR_BLEU_C;      // generated vs compiled IR
  std::optional<std::string> compiled_ir;
};

enum class FeedbackFormat { Fast, Short, Long };

const char* feedback_format_name(FeedbackFormat fmt);
std::optional<FeedbackFormat> feedback_format_from_name(const std::string& name);

FeedbackRecord evaluate_generation(const std::string& src_ir,
                                   const Generation& g,
                                   const CompilerBackend& backend);

// Feedback record for a generation that failed to parse; the pass list is
// treated as invalid and the parse diagnostic becomes the compile error.
FeedbackRecord unparseable_generation_record(const std::string& src_ir,
                                             const GenParseError& err);

// Line-oriented feedback text. Short extends Fast and Long extends Short
// byte-wise (prefix containment); Long appends the compiled IR section
// when compilation succeeded.
std::string render_feedback(const FeedbackRecord& rec, FeedbackFormat fmt);

std::string build_feedback_prompt(const std::string& original_prompt,
                                  const std::string& generation_text,
                                  const std::string& feedback_text);

// Sure iff the pass list was valid and the predicted target count matched
// the compiled count.
Confidence confidence_label(const FeedbackRecord& rec);

}  // namespace irfeed
