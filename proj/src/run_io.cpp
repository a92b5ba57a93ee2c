#include "irfeed/run_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irfeed::run_io {

namespace {

const char* kSchema = "irfeed/v1";

const char* confidence_str(Confidence c) {
  switch (c) {
    case Confidence::Sure: return "sure";
    case Confidence::Retry: return "retry";
    case Confidence::Absent: return "absent";
  }
  return "?";
}

Confidence confidence_from(const std::string& s) {
  if (s == "sure") return Confidence::Sure;
  if (s == "retry") return Confidence::Retry;
  return Confidence::Absent;
}

template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (j.contains(key)) return j.at(key).get<T>();
  return std::nullopt;
}

}  // namespace

json to_json(const Generation& g) {
  json j;
  j["confidence"] = confidence_str(g.confidence);
  j["passes"] = g.passes;
  j["src_inst_count_pred"] = g.src_inst_count_pred;
  j["tgt_inst_count_pred"] = g.tgt_inst_count_pred;
  put_opt(j, "optimized_ir", g.optimized_ir);
  j["raw_text"] = g.raw_text;
  return j;
}

json to_json(const FeedbackRecord& rec) {
  json j;
  j["pass_list_valid"] = rec.pass_list_valid;
  if (!rec.unknown_passes.empty()) j["unknown_passes"] = rec.unknown_passes;
  j["src_inst_count_pred"] = rec.src_inst_count_pred;
  j["src_inst_count_actual"] = rec.src_inst_count_actual;
  j["src_count_correct"] = rec.src_count_correct;
  j["tgt_inst_count_pred"] = rec.tgt_inst_count_pred;
  put_opt(j, "compiled_inst_count", rec.compiled_inst_count);
  put_opt(j, "tgt_inst_cnt_error_C", rec.tgt_inst_cnt_error_C);
  j["tgt_count_correct"] = rec.tgt_count_correct;
  put_opt(j, "compile_error", rec.compile_error);
  j["generated_ir_present"] = rec.generated_ir_present;
  put_opt(j, "generated_ir_compilable", rec.generated_ir_compilable);
  put_opt(j, "generated_ir_error", rec.generated_ir_error);
  put_opt(j, "tgt_inst_cnt_G", rec.tgt_inst_cnt_G);
  put_opt(j, "tgt_IR_BLEU_C", rec.tgt_IR_BLEU_C);
  put_opt(j, "compiled_ir", rec.compiled_ir);
  return j;
}

json to_json(const EpisodeResult& ep) {
  json j;
  j["example_id"] = ep.example_id;
  j["source_ir"] = ep.source_ir;
  j["chosen_passes"] = ep.chosen_passes;
  j["chosen_count"] = ep.chosen_count;
  j["oz_count"] = ep.oz_count;
  put_opt(j, "autotuner_count", ep.autotuner_count);
  if (!ep.autotuner_passes.empty()) j["autotuner_passes"] = ep.autotuner_passes;
  j["source_count"] = ep.source_count;
  j["provenance"] = ep.provenance == Provenance::Model ? "model" : "oz_fallback";
  j["failed"] = ep.failed;
  j["steps_used"] = ep.steps_used;
  json steps = json::array();
  for (const auto& s : ep.steps) {
    json sj;
    sj["parsed_ok"] = s.parsed_ok;
    sj["generation"] = to_json(s.gen);
    sj["feedback"] = to_json(s.rec);
    steps.push_back(std::move(sj));
  }
  j["steps"] = std::move(steps);
  return j;
}

json to_json(const MetricsRow& row) {
  json j;
  j["example_id"] = row.example_id;
  j["src_inst_cnt_C"] = row.src_inst_cnt_C;
  j["src_inst_cnt_G"] = row.src_inst_cnt_G;
  j["tgt_inst_cnt_G"] = row.tgt_inst_cnt_G;
  put_opt(j, "tgt_inst_cnt_C", row.tgt_inst_cnt_C);
  put_opt(j, "tgt_inst_cnt_error_C", row.tgt_inst_cnt_error_C);
  put_opt(j, "tgt_IR_BLEU_C", row.tgt_IR_BLEU_C);
  j["num_flags"] = row.num_flags;
  j["oz_count"] = row.oz_count;
  put_opt(j, "autotuner_count", row.autotuner_count);
  j["chosen_count"] = row.chosen_count;
  j["improvement_over_oz"] = row.improvement_over_oz;
  put_opt(j, "improvement_over_autotuner", row.improvement_over_autotuner);
  return j;
}

json to_json(const Summary& s) {
  json j;
  j["rows"] = s.rows;
  j["per_example_mean_improvement"] = s.per_example_mean_improvement;
  j["corpus_improvement"] = s.corpus_improvement;
  if (s.fraction_of_autotuner)
    j["fraction_of_autotuner"] = *s.fraction_of_autotuner;
  else
    j["fraction_of_autotuner"] = "undefined";
  return j;
}

MetricsRow metrics_row_from_json(const json& j) {
  MetricsRow row;
  row.example_id = j.at("example_id").get<std::string>();
  row.src_inst_cnt_C = j.at("src_inst_cnt_C").get<int>();
  row.src_inst_cnt_G = j.at("src_inst_cnt_G").get<int>();
  row.tgt_inst_cnt_G = j.at("tgt_inst_cnt_G").get<int>();
  row.tgt_inst_cnt_C = get_opt<int>(j, "tgt_inst_cnt_C");
  row.tgt_inst_cnt_error_C = get_opt<int>(j, "tgt_inst_cnt_error_C");
  row.tgt_IR_BLEU_C = get_opt<double>(j, "tgt_IR_BLEU_C");
  row.num_flags = j.at("num_flags").get<int>();
  row.oz_count = j.at("oz_count").get<int>();
  row.autotuner_count = get_opt<int>(j, "autotuner_count");
  row.chosen_count = j.at("chosen_count").get<int>();
  row.improvement_over_oz = j.at("improvement_over_oz").get<double>();
  row.improvement_over_autotuner =
      get_opt<double>(j, "improvement_over_autotuner");
  return row;
}

EpisodeResult episode_from_json(const json& j) {
  EpisodeResult ep;
  ep.example_id = j.at("example_id").get<std::string>();
  ep.source_ir = j.at("source_ir").get<std::string>();
  ep.chosen_passes = j.at("chosen_passes").get<std::vector<std::string>>();
  ep.chosen_count = j.at("chosen_count").get<int>();
  ep.oz_count = j.at("oz_count").get<int>();
  ep.autotuner_count = get_opt<int>(j, "autotuner_count");
  if (j.contains("autotuner_passes"))
    ep.autotuner_passes = j.at("autotuner_passes").get<std::vector<std::string>>();
  ep.source_count = j.at("source_count").get<int>();
  ep.provenance = j.at("provenance").get<std::string>() == "model"
                      ? Provenance::Model
                      : Provenance::OzFallback;
  ep.failed = j.at("failed").get<bool>();
  ep.steps_used = j.at("steps_used").get<int>();
  for (const auto& sj : j.at("steps")) {
    StepRecord s;
    s.parsed_ok = sj.at("parsed_ok").get<bool>();
    const auto& gj = sj.at("generation");
    s.gen.confidence = confidence_from(gj.at("confidence").get<std::string>());
    s.gen.passes = gj.at("passes").get<std::vector<std::string>>();
    s.gen.src_inst_count_pred = gj.at("src_inst_count_pred").get<int>();
    s.gen.tgt_inst_count_pred = gj.at("tgt_inst_count_pred").get<int>();
    s.gen.optimized_ir = get_opt<std::string>(gj, "optimized_ir");
    s.gen.raw_text = gj.at("raw_text").get<std::string>();
    const auto& rj = sj.at("feedback");
    s.rec.pass_list_valid = rj.at("pass_list_valid").get<bool>();
    if (rj.contains("unknown_passes"))
      s.rec.unknown_passes = rj.at("unknown_passes").get<std::vector<std::string>>();
    s.rec.src_inst_count_pred = rj.at("src_inst_count_pred").get<int>();
    s.rec.src_inst_count_actual = rj.at("src_inst_count_actual").get<int>();
    s.rec.src_count_correct = rj.at("src_count_correct").get<bool>();
    s.rec.tgt_inst_count_pred = rj.at("tgt_inst_count_pred").get<int>();
    s.rec.compiled_inst_count = get_opt<int>(rj, "compiled_inst_count");
    s.rec.tgt_inst_cnt_error_C = get_opt<int>(rj, "tgt_inst_cnt_error_C");
    s.rec.tgt_count_correct = rj.at("tgt_count_correct").get<bool>();
    s.rec.compile_error = get_opt<std::string>(rj, "compile_error");
    s.rec.generated_ir_present = rj.at("generated_ir_present").get<bool>();
    s.rec.generated_ir_compilable = get_opt<bool>(rj, "generated_ir_compilable");
    s.rec.generated_ir_error = get_opt<std::string>(rj, "generated_ir_error");
    s.rec.tgt_inst_cnt_G = get_opt<int>(rj, "tgt_inst_cnt_G");
    s.rec.tgt_IR_BLEU_C = get_opt<double>(rj, "tgt_IR_BLEU_C");
    s.rec.compiled_ir = get_opt<std::string>(rj, "compiled_ir");
    ep.steps.push_back(std::move(s));
  }
  return ep;
}

std::string render_jsonl(const std::string& kind,
                         const std::vector<json>& records) {
  std::ostringstream out;
  json header;
  header["schema"] = kSchema;
  header["kind"] = kind;
  out << header.dump() << "\n";
  for (const auto& r : records) out << r.dump() << "\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::vector<json> read_jsonl(const std::string& path,
                             const std::string& expected_kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty artifact file: " + path);
  auto header = json::parse(line);
  if (header.value("schema", "") != kSchema ||
      header.value("kind", "") != expected_kind) {
    throw std::runtime_error("bad schema header in " + path + " (expected " +
                             expected_kind + ")");
  }
  std::vector<json> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(json::parse(line));
  }
  return records;
}

void write_metrics(const std::string& path, const std::vector<MetricsRow>& rows) {
  std::vector<json> records;
  records.reserve(rows.size());
  for (const auto& r : rows) records.push_back(to_json(r));
  write_file(path, render_jsonl("metrics", records));
}

std::vector<MetricsRow> read_metrics(const std::string& path) {
  std::vector<MetricsRow> rows;
  for (const auto& j : read_jsonl(path, "metrics"))
    rows.push_back(metrics_row_from_json(j));
  return rows;
}

void write_episodes(const std::string& path,
                    const std::vector<EpisodeResult>& episodes) {
  std::vector<json> records;
  records.reserve(episodes.size());
  for (const auto& ep : episodes) records.push_back(to_json(ep));
  write_file(path, render_jsonl("episodes", records));
}

std::vector<EpisodeResult> read_episodes(const std::string& path) {
  std::vector<EpisodeResult> episodes;
  for (const auto& j : read_jsonl(path, "episodes"))
    episodes.push_back(episode_from_json(j));
  return episodes;
}

void write_labels(const std::string& path,
                  const std::vector<AutotuneLabel>& labels) {
  std::vector<json> records;
  for (const auto& l : labels) {
    json j;
    j["example_id"] = l.example_id;
    j["best_passes"] = l.best_passes;
    j["best_count"] = l.best_count;
    j["oz_count"] = l.oz_count;
    records.push_back(std::move(j));
  }
  write_file(path, render_jsonl("autotune_labels", records));
}

std::vector<AutotuneLabel> read_labels(const std::string& path) {
  std::vector<AutotuneLabel> labels;
  for (const auto& j : read_jsonl(path, "autotune_labels")) {
    AutotuneLabel l;
    l.example_id = j.at("example_id").get<std::string>();
    l.best_passes = j.at("best_passes").get<std::vector<std::string>>();
    l.best_count = j.at("best_count").get<int>();
    l.oz_count = j.at("oz_count").get<int>();
    labels.push_back(std::move(l));
  }
  return labels;
}

void write_dataset(const std::string& path,
                   const std::vector<DatasetRecord>& records) {
  std::vector<json> out;
  for (const auto& r : records) {
    json j;
    j["prompt"] = r.prompt;
    j["completion"] = r.completion;
    json meta;
    meta["example_id"] = r.example_id;
    meta["autotuner_passes"] = r.autotuner_passes;
    meta["autotuner_count"] = r.autotuner_count;
    j["meta"] = std::move(meta);
    out.push_back(std::move(j));
  }
  write_file(path, render_jsonl("finetune_dataset", out));
}

std::string metrics_table(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  out << "example_id\tsrc_inst_cnt_C\tsrc_inst_cnt_G\ttgt_inst_cnt_G\t"
         "tgt_inst_cnt_C\ttgt_inst_cnt_error_C\ttgt_IR_BLEU_C\tnum_flags\t"
         "oz_count\tautotuner_count\tchosen_count\timprovement_over_oz\t"
         "improvement_over_autotuner\n";
  auto opt_int = [](const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string("-");
  };
  for (const auto& r : rows) {
    out << r.example_id << "\t" << r.src_inst_cnt_C << "\t" << r.src_inst_cnt_G
        << "\t" << r.tgt_inst_cnt_G << "\t" << opt_int(r.tgt_inst_cnt_C) << "\t"
        << opt_int(r.tgt_inst_cnt_error_C) << "\t";
    if (r.tgt_IR_BLEU_C)
      out << *r.tgt_IR_BLEU_C;
    else
      out << "-";
    out << "\t" << r.num_flags << "\t" << r.oz_count << "\t"
        << opt_int(r.autotuner_count) << "\t" << r.chosen_count << "\t"
        << r.improvement_over_oz << "\t";
    if (r.improvement_over_autotuner)
      out << *r.improvement_over_autotuner;
    else
      out << "-";
    out << "\n";
  }
  return out.str();
}

}  // namespace irfeed::run_io
