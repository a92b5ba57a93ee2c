#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "irfeed/run_io.hpp"

using namespace irfeed;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("irfeed_run_io_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  static inline int counter = 0;
};

EpisodeResult sample_episode() {
  EpisodeResult ep;
  ep.example_id = "gen-000007";
  ep.source_ir = "func f() {\nentry:\n  ret i32 0\n}\n";
  ep.chosen_passes = {"constfold", "dce"};
  ep.chosen_count = 1;
  ep.oz_count = 1;
  ep.autotuner_count = 1;
  ep.autotuner_passes = {"dce"};
  ep.source_count = 1;
  ep.steps_used = 2;
  StepRecord step;
  step.gen.confidence = Confidence::Retry;
  step.gen.passes = {"dce"};
  step.gen.src_inst_count_pred = 1;
  step.gen.tgt_inst_count_pred = 2;
  step.rec.pass_list_valid = true;
  step.rec.compiled_inst_count = 1;
  step.rec.tgt_inst_cnt_error_C = 1;
  step.rec.tgt_IR_BLEU_C = 0.5;
  ep.steps.push_back(step);
  return ep;
}

}  // namespace

TEST_CASE("episodes round-trip through JSONL") {
  TempDir dir;
  const auto path = (dir.path / "episodes.jsonl").string();
  auto ep = sample_episode();
  run_io::write_episodes(path, {ep});
  auto back = run_io::read_episodes(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].example_id == ep.example_id);
  CHECK(back[0].source_ir == ep.source_ir);
  CHECK(back[0].chosen_passes == ep.chosen_passes);
  CHECK(back[0].autotuner_count == ep.autotuner_count);
  CHECK(back[0].autotuner_passes == ep.autotuner_passes);
  CHECK(back[0].steps_used == 2);
  REQUIRE(back[0].steps.size() == 1);
  CHECK(back[0].steps[0].gen.passes == std::vector<std::string>{"dce"});
  CHECK(back[0].steps[0].rec.tgt_inst_cnt_error_C == 1);
  CHECK(back[0].steps[0].rec.tgt_IR_BLEU_C == 0.5);
}

TEST_CASE("metrics round-trip and serialization is byte-stable") {
  TempDir dir;
  auto row = row_from_episode(sample_episode());
  const auto p1 = (dir.path / "a.jsonl").string();
  const auto p2 = (dir.path / "b.jsonl").string();
  run_io::write_metrics(p1, {row});
  run_io::write_metrics(p2, {row});

  std::ifstream f1(p1), f2(p2);
  std::string s1((std::istreambuf_iterator<char>(f1)), {});
  std::string s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(s1 == s2);
  CHECK(s1.rfind("{\"schema\":\"irfeed/v1\",\"kind\":\"metrics\"}\n", 0) == 0);

  auto back = run_io::read_metrics(p1);
  REQUIRE(back.size() == 1);
  CHECK(back[0].example_id == row.example_id);
  CHECK(back[0].tgt_inst_cnt_error_C == row.tgt_inst_cnt_error_C);
  CHECK(back[0].improvement_over_oz == row.improvement_over_oz);
}

TEST_CASE("reading rejects files with the wrong kind header") {
  TempDir dir;
  const auto path = (dir.path / "episodes.jsonl").string();
  run_io::write_episodes(path, {sample_episode()});
  CHECK_THROWS(run_io::read_metrics(path));
  CHECK_THROWS(run_io::read_jsonl((dir.path / "missing.jsonl").string(), "x"));
}

TEST_CASE("autotune labels round-trip") {
  TempDir dir;
  const auto path = (dir.path / "labels.jsonl").string();
  run_io::write_labels(path, {{"gen-000001", {"peephole", "constfold"}, 2, 4}});
  auto back = run_io::read_labels(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].example_id == "gen-000001");
  CHECK(back[0].best_passes == std::vector<std::string>{"peephole", "constfold"});
  CHECK(back[0].best_count == 2);
  CHECK(back[0].oz_count == 4);
}

TEST_CASE("metrics table has one header and one row per record") {
  auto row = row_from_episode(sample_episode());
  const std::string table = run_io::metrics_table({row, row});
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
  CHECK(table.rfind("example_id\t", 0) == 0);
  CHECK(table.find("gen-000007\t") != std::string::npos);
}
