#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "irfeed/metrics.hpp"
#include "irfeed/orchestrator.hpp"

namespace irfeed {

// Record-per-line artifact files. Every file starts with a schema header
// line {"schema":"irfeed/v1","kind":...}; serialization is key-ordered so
// identical runs produce byte-identical files.
namespace run_io {

using json = nlohmann::ordered_json;

json to_json(const Generation& g);
json to_json(const FeedbackRecord& rec);
json to_json(const EpisodeResult& ep);
json to_json(const MetricsRow& row);
json to_json(const Summary& s);

MetricsRow metrics_row_from_json(const json& j);
EpisodeResult episode_from_json(const json& j);

std::string render_jsonl(const std::string& kind,
                         const std::vector<json>& records);
void write_file(const std::string& path, const std::string& content);

// Reads a JSONL artifact, validating and dropping the header line.
std::vector<json> read_jsonl(const std::string& path,
                             const std::string& expected_kind);

void write_metrics(const std::string& path, const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> read_metrics(const std::string& path);
void write_episodes(const std::string& path,
                    const std::vector<EpisodeResult>& episodes);
std::vector<EpisodeResult> read_episodes(const std::string& path);

struct AutotuneLabel {
  std::string example_id;
  std::vector<std::string> best_passes;
  int best_count = 0;
  int oz_count = 0;
};

void write_labels(const std::string& path, const std::vector<AutotuneLabel>& labels);
std::vector<AutotuneLabel> read_labels(const std::string& path);

void write_dataset(const std::string& path, const std::vector<DatasetRecord>& records);

// Delimited table view of the metrics rows (tab-separated, one header row).
std::string metrics_table(const std::vector<MetricsRow>& rows);

}  // namespace run_io

}  // namespace irfeed
