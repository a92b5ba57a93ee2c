#include "irfeed/feedback.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "irfeed/ir_text.hpp"

namespace irfeed {

const char* feedback_format_name(FeedbackFormat fmt) {
  switch (fmt) {
    case FeedbackFormat::Fast: return "fast";
    case FeedbackFormat::Short: return "short";
    case FeedbackFormat::Long: return "long";
  }
  return "?";
}

std::optional<FeedbackFormat> feedback_format_from_name(const std::string& name) {
  if (name == "fast") return FeedbackFormat::Fast;
  if (name == "short") return FeedbackFormat::Short;
  if (name == "long") return FeedbackFormat::Long;
  return std::nullopt;
}

FeedbackRecord evaluate_generation(const std::string& src_ir,
                                   const Generation& g,
                                   const CompilerBackend& backend) {
  FeedbackRecord rec;
  rec.src_inst_count_pred = g.src_inst_count_pred;
  rec.src_inst_count_actual = count_instructions_text(src_ir);
  rec.src_count_correct = rec.src_inst_count_pred == rec.src_inst_count_actual;
  rec.tgt_inst_count_pred = g.tgt_inst_count_pred;

  auto validity = validate_pass_list(g.passes, backend.catalog());
  rec.pass_list_valid = validity.valid;
  rec.unknown_passes = validity.unknown_names;

  if (rec.pass_list_valid) {
    auto compiled = backend.compile(src_ir, g.passes);
    if (compiled.ok) {
      rec.compiled_inst_count = compiled.inst_count;
      rec.tgt_inst_cnt_error_C =
          std::abs(g.tgt_inst_count_pred - compiled.inst_count);
      rec.tgt_count_correct = *rec.tgt_inst_cnt_error_C == 0;
      rec.compiled_ir = compiled.compiled_ir;
    } else {
      rec.compile_error = compiled.error_message;
    }
  }

  rec.generated_ir_present = g.optimized_ir.has_value();
  if (rec.generated_ir_present) {
    auto check = backend.check_compilable(*g.optimized_ir);
    rec.generated_ir_compilable = check.ok;
    if (!check.ok) rec.generated_ir_error = check.message;
    rec.tgt_inst_cnt_G = count_instructions_text(*g.optimized_ir);
    if (rec.compiled_ir) {
      rec.tgt_IR_BLEU_C =
          bleu(tokenize(*g.optimized_ir), tokenize(*rec.compiled_ir)).score;
    }
  }
  return rec;
}

FeedbackRecord unparseable_generation_record(const std::string& src_ir,
                                             const GenParseError& err) {
  FeedbackRecord rec;
  rec.pass_list_valid = false;
  rec.src_inst_count_actual = count_instructions_text(src_ir);
  rec.compile_error = "generation parse error: " + err.message + " (line " +
                      std::to_string(err.line) + ")";
  return rec;
}

namespace {

std::string bool_str(bool v) { return v ? "true" : "false"; }

std::string render_fast(const FeedbackRecord& rec) {
  std::ostringstream out;
  out << "pass_list_valid: " << bool_str(rec.pass_list_valid) << "\n";
  if (!rec.unknown_passes.empty()) {
    out << "unknown_passes:";
    for (const auto& p : rec.unknown_passes) out << " " << p;
    out << "\n";
  }
  out << "src_inst_count: pred=" << rec.src_inst_count_pred
      << " actual=" << rec.src_inst_count_actual
      << " correct=" << bool_str(rec.src_count_correct) << "\n";
  if (rec.compiled_inst_count) {
    out << "tgt_inst_count: pred=" << rec.tgt_inst_count_pred
        << " compiled=" << *rec.compiled_inst_count
        << " correct=" << bool_str(rec.tgt_count_correct) << "\n";
    out << "tgt_inst_cnt_error_C: " << *rec.tgt_inst_cnt_error_C << "\n";
  } else {
    out << "tgt_inst_count: pred=" << rec.tgt_inst_count_pred << "\n";
  }
  if (rec.compile_error) out << "compile_error: " << *rec.compile_error << "\n";
  return out.str();
}

std::string render_short(const FeedbackRecord& rec) {
  std::string out = render_fast(rec);
  if (!rec.generated_ir_present) {
    out += "generated_ir: absent\n";
    return out;
  }
  out += "generated_ir: present\n";
  out += "generated_ir_compilable: " + bool_str(*rec.generated_ir_compilable) + "\n";
  if (rec.generated_ir_error)
    out += "generated_ir_error: " + *rec.generated_ir_error + "\n";
  out += "tgt_inst_cnt_G: " + std::to_string(*rec.tgt_inst_cnt_G) + "\n";
  if (rec.tgt_IR_BLEU_C) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", *rec.tgt_IR_BLEU_C);
    out += std::string("tgt_IR_BLEU_C: ") + buf + "\n";
  }
  return out;
}

}  // namespace

std::string render_feedback(const FeedbackRecord& rec, FeedbackFormat fmt) {
  switch (fmt) {
    case FeedbackFormat::Fast:
      return render_fast(rec);
    case FeedbackFormat::Short:
      return render_short(rec);
    case FeedbackFormat::Long: {
      std::string out = render_short(rec);
      if (rec.compiled_ir) {
        out += "compiled_ir:\n";
        out += *rec.compiled_ir;
        if (!rec.compiled_ir->empty() && rec.compiled_ir->back() != '\n')
          out += "\n";
      }
      return out;
    }
  }
  return "";
}

std::string build_feedback_prompt(const std::string& original_prompt,
                                  const std::string& generation_text,
                                  const std::string& feedback_text) {
  auto with_newline = [](const std::string& s) {
    if (s.empty() || s.back() == '\n') return s;
    return s + "\n";
  };
  std::string out = with_newline(original_prompt);
  out += "--- generation ---\n";
  out += with_newline(generation_text);
  out += "--- feedback ---\n";
  out += with_newline(feedback_text);
  out += "--- try again ---\n";
  return out;
}

Confidence confidence_label(const FeedbackRecord& rec) {
  return rec.pass_list_valid && rec.tgt_count_correct ? Confidence::Sure
                                                      : Confidence::Retry;
}

}  // namespace irfeed
