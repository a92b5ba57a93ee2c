// irfeed: compiler-in-the-loop harness for pass-ordering optimization.
//
// Subcommands run episodes over a corpus (optimize / feedback / iterate /
// sample), search pass orderings (autotune), and post-process run
// artifacts (report / dataset). Every run directory gets a manifest.json
// that `irfeed rerun` can replay.

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "irfeed/autotuner.hpp"
#include "irfeed/backend.hpp"
#include "irfeed/corpus.hpp"
#include "irfeed/metrics.hpp"
#include "irfeed/model.hpp"
#include "irfeed/orchestrator.hpp"
#include "irfeed/report.hpp"
#include "irfeed/run_io.hpp"
#include "irfeed/util.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace irfeed;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBackend = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string backend = "mini";
  std::string ext_bin, ext_args = "{input} {passes}", ext_catalog;
  int ext_timeout = 30;
  std::string model = "stub";
  std::string fixture;
  std::string endpoint;
  std::string format = "fast";
  std::string strategy = "original_sample";
  std::string tuner = "exhaustive";
  double temperature = 0.0;
  int samples = 1;
  int steps = 5;
  int depth = 3;
  int max_evals = 100000;
  std::string corpus;  // directory of .mir files, or "gen:<size>"
  uint64_t seed = 0;
  std::string out_dir;
  int jobs = 1;
  bool oz_combine = true;
  std::string labels;                // optional labels file to join
  std::vector<std::string> runs;     // report inputs
  std::string run_dir;               // dataset input
  double train_ratio = 0.8, valid_ratio = 0.1, test_ratio = 0.1;
  int gen_size = 100;

  json to_manifest() const;
  static RunConfig from_manifest(const json& j);
};

json RunConfig::to_manifest() const {
  json j;
  j["command"] = command;
  j["backend"] = backend;
  j["ext_bin"] = ext_bin;
  j["ext_args"] = ext_args;
  j["ext_catalog"] = ext_catalog;
  j["ext_timeout"] = ext_timeout;
  j["model"] = model;
  j["fixture"] = fixture;
  j["endpoint"] = endpoint;
  j["format"] = format;
  j["strategy"] = strategy;
  j["tuner"] = tuner;
  j["temperature"] = temperature;
  j["samples"] = samples;
  j["steps"] = steps;
  j["depth"] = depth;
  j["max_evals"] = max_evals;
  j["corpus"] = corpus;
  j["seed"] = seed;
  j["out"] = out_dir;
  j["jobs"] = jobs;
  j["oz_combine"] = oz_combine;
  j["labels"] = labels;
  j["runs"] = runs;
  j["run"] = run_dir;
  j["train_ratio"] = train_ratio;
  j["valid_ratio"] = valid_ratio;
  j["test_ratio"] = test_ratio;
  j["gen_size"] = gen_size;
  return j;
}

RunConfig RunConfig::from_manifest(const json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.backend = j.value("backend", c.backend);
  c.ext_bin = j.value("ext_bin", c.ext_bin);
  c.ext_args = j.value("ext_args", c.ext_args);
  c.ext_catalog = j.value("ext_catalog", c.ext_catalog);
  c.ext_timeout = j.value("ext_timeout", c.ext_timeout);
  c.model = j.value("model", c.model);
  c.fixture = j.value("fixture", c.fixture);
  c.endpoint = j.value("endpoint", c.endpoint);
  c.format = j.value("format", c.format);
  c.strategy = j.value("strategy", c.strategy);
  c.tuner = j.value("tuner", c.tuner);
  c.temperature = j.value("temperature", c.temperature);
  c.samples = j.value("samples", c.samples);
  c.steps = j.value("steps", c.steps);
  c.depth = j.value("depth", c.depth);
  c.max_evals = j.value("max_evals", c.max_evals);
  c.corpus = j.value("corpus", c.corpus);
  c.seed = j.value("seed", c.seed);
  c.out_dir = j.value("out", c.out_dir);
  c.jobs = j.value("jobs", c.jobs);
  c.oz_combine = j.value("oz_combine", c.oz_combine);
  c.labels = j.value("labels", c.labels);
  c.runs = j.value("runs", c.runs);
  c.run_dir = j.value("run", c.run_dir);
  c.train_ratio = j.value("train_ratio", c.train_ratio);
  c.valid_ratio = j.value("valid_ratio", c.valid_ratio);
  c.test_ratio = j.value("test_ratio", c.test_ratio);
  c.gen_size = j.value("gen_size", c.gen_size);
  return c;
}

std::unique_ptr<CompilerBackend> make_backend(const RunConfig& cfg) {
  if (cfg.backend == "mini") return std::make_unique<MiniBackend>();
  if (cfg.backend == "external") {
    if (cfg.ext_bin.empty() || cfg.ext_catalog.empty())
      throw ConfigError("external backend needs --ext-bin and --ext-catalog");
    if (!fs::exists(cfg.ext_catalog))
      throw ConfigError("pass catalog file not found: " + cfg.ext_catalog);
    return std::make_unique<ExternalBackend>(cfg.ext_bin, cfg.ext_args,
                                             cfg.ext_catalog, cfg.ext_timeout);
  }
  throw ConfigError("unknown backend: " + cfg.backend);
}

std::unique_ptr<ModelBackend> make_model(const RunConfig& cfg,
                                         const CompilerBackend& backend) {
  if (cfg.model == "stub") return std::make_unique<StubModel>(cfg.seed, backend);
  if (cfg.model == "replay") {
    if (cfg.fixture.empty()) throw ConfigError("replay model needs --fixture");
    return std::make_unique<ReplayModel>(cfg.fixture);
  }
  if (cfg.model == "http") {
    std::string endpoint = cfg.endpoint;
    if (endpoint.empty()) {
      const char* env = std::getenv("MODEL_ENDPOINT");
      if (env) endpoint = env;
    }
    if (endpoint.empty())
      throw ConfigError("http model needs --endpoint or MODEL_ENDPOINT");
    const char* key = std::getenv("MODEL_API_KEY");
    return std::make_unique<HttpModel>(endpoint, key ? key : "");
  }
  throw ConfigError("unknown model: " + cfg.model);
}

std::vector<CorpusExample> load_corpus(const RunConfig& cfg) {
  if (cfg.corpus.empty()) throw ConfigError("--corpus is required");
  if (cfg.corpus.rfind("gen:", 0) == 0) {
    CorpusSpec spec;
    spec.size = std::stoi(cfg.corpus.substr(4));
    spec.seed = cfg.seed;
    return generate_corpus(spec);
  }
  if (!fs::is_directory(cfg.corpus))
    throw ConfigError("corpus directory not found: " + cfg.corpus);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(cfg.corpus)) {
    if (e.path().extension() == ".mir") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw ConfigError("no .mir files in corpus directory: " + cfg.corpus);
  std::vector<CorpusExample> corpus;
  for (const auto& p : files) {
    std::ifstream in(p);
    std::ostringstream text;
    text << in.rdbuf();
    corpus.push_back({p.stem().string(), text.str()});
  }
  return corpus;
}

FeedbackFormat parse_format(const std::string& name) {
  auto fmt = feedback_format_from_name(name);
  if (!fmt) throw ConfigError("unknown feedback format: " + name);
  return *fmt;
}

// Deterministic parallel map: worker w handles indices w, w+jobs, ...;
// results land by index so output order never depends on scheduling.
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::atomic<bool> failed{false};
  std::vector<std::string> errors(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += jobs) fn(i);
      } catch (const std::exception& e) {
        errors[w] = e.what();
        failed = true;
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failed) {
    for (const auto& e : errors)
      if (!e.empty()) throw BackendError(e);
  }
}

void attach_labels(std::vector<EpisodeResult>& episodes,
                   const std::string& labels_path) {
  if (labels_path.empty()) return;
  if (!fs::exists(labels_path))
    throw ConfigError("labels file not found: " + labels_path);
  std::map<std::string, run_io::AutotuneLabel> by_id;
  for (auto& l : run_io::read_labels(labels_path)) by_id[l.example_id] = l;
  for (auto& ep : episodes) {
    auto it = by_id.find(ep.example_id);
    if (it != by_id.end()) {
      ep.autotuner_count = it->second.best_count;
      ep.autotuner_passes = it->second.best_passes;
    }
  }
}

void write_run_artifacts(const RunConfig& cfg,
                         const std::vector<EpisodeResult>& episodes) {
  fs::create_directories(cfg.out_dir);
  run_io::write_file(fs::path(cfg.out_dir) / "manifest.json",
                     cfg.to_manifest().dump(2) + "\n");
  run_io::write_episodes(fs::path(cfg.out_dir) / "episodes.jsonl", episodes);

  std::vector<MetricsRow> rows;
  rows.reserve(episodes.size());
  for (const auto& ep : episodes) rows.push_back(row_from_episode(ep));
  run_io::write_metrics(fs::path(cfg.out_dir) / "metrics.jsonl", rows);
  run_io::write_file(fs::path(cfg.out_dir) / "metrics.tsv",
                     run_io::metrics_table(rows));
  if (!rows.empty()) {
    auto summary = aggregate(rows);
    run_io::write_file(fs::path(cfg.out_dir) / "summary.json",
                       run_io::to_json(summary).dump(2) + "\n");
    std::cerr << "corpus_improvement=" << summary.corpus_improvement
              << " mean_improvement=" << summary.per_example_mean_improvement
              << " rows=" << summary.rows << "\n";
  }
}

int cmd_gen_corpus(const RunConfig& cfg) {
  CorpusSpec spec;
  spec.size = cfg.gen_size;
  spec.seed = cfg.seed;
  auto corpus = generate_corpus(spec);
  fs::create_directories(cfg.out_dir);
  for (const auto& ex : corpus)
    run_io::write_file(fs::path(cfg.out_dir) / (ex.id + ".mir"), ex.ir_text);
  run_io::write_file(fs::path(cfg.out_dir) / "manifest.json",
                     cfg.to_manifest().dump(2) + "\n");
  std::cerr << "wrote " << corpus.size() << " programs to " << cfg.out_dir
            << "\n";
  return kExitOk;
}

int cmd_episodes(const RunConfig& cfg) {
  auto backend = make_backend(cfg);
  auto model = make_model(cfg, *backend);
  auto corpus = load_corpus(cfg);
  const FeedbackFormat fmt = parse_format(cfg.format);

  std::vector<EpisodeResult> episodes(corpus.size());
  parallel_for(static_cast<int>(corpus.size()), cfg.jobs, [&](int i) {
    const auto& ex = corpus[i];
    if (cfg.command == "optimize") {
      episodes[i] = sample_optimize(ex.id, ex.ir_text, *model, *backend, 1,
                                    cfg.temperature, cfg.oz_combine);
    } else if (cfg.command == "feedback") {
      episodes[i] = iterate_feedback(ex.id, ex.ir_text, fmt, *model, *backend,
                                     2, cfg.oz_combine, cfg.temperature);
    } else if (cfg.command == "iterate") {
      episodes[i] = iterate_feedback(ex.id, ex.ir_text, fmt, *model, *backend,
                                     cfg.steps, cfg.oz_combine, cfg.temperature);
    } else {  // sample
      auto kind = strategy_kind_from_name(cfg.strategy);
      if (!kind) throw ConfigError("unknown strategy: " + cfg.strategy);
      SamplingStrategy strat{*kind, cfg.temperature, cfg.samples};
      episodes[i] = run_strategy(ex.id, ex.ir_text, strat, fmt, *model,
                                 *backend, cfg.oz_combine);
    }
  });

  attach_labels(episodes, cfg.labels);
  write_run_artifacts(cfg, episodes);
  return kExitOk;
}

int cmd_autotune(const RunConfig& cfg) {
  auto backend = make_backend(cfg);
  auto corpus = load_corpus(cfg);

  SearchBudget budget;
  budget.max_depth = cfg.depth;
  budget.max_evals = cfg.max_evals;
  budget.seed = cfg.seed;
  if (cfg.tuner == "exhaustive")
    budget.strategy = SearchBudget::Strategy::Exhaustive;
  else if (cfg.tuner == "random")
    budget.strategy = SearchBudget::Strategy::Random;
  else if (cfg.tuner == "greedy")
    budget.strategy = SearchBudget::Strategy::Greedy;
  else
    throw ConfigError("unknown tuner strategy: " + cfg.tuner);

  std::vector<std::optional<run_io::AutotuneLabel>> labels(corpus.size());
  parallel_for(static_cast<int>(corpus.size()), cfg.jobs, [&](int i) {
    const auto& ex = corpus[i];
    try {
      auto result = autotune(ex.ir_text, *backend, budget);
      auto oz = backend->compile(ex.ir_text, backend->catalog().reference_pipeline);
      labels[i] = run_io::AutotuneLabel{ex.id, result.best_passes,
                                        result.best_count, oz.inst_count};
    } catch (const AutotuneError& e) {
      std::cerr << "autotune failed for " << ex.id << ": " << e.what() << "\n";
    }
  });

  std::vector<run_io::AutotuneLabel> out;
  for (auto& l : labels)
    if (l) out.push_back(std::move(*l));
  fs::create_directories(cfg.out_dir);
  run_io::write_labels(fs::path(cfg.out_dir) / "labels.jsonl", out);
  run_io::write_file(fs::path(cfg.out_dir) / "manifest.json",
                     cfg.to_manifest().dump(2) + "\n");
  std::cerr << "wrote " << out.size() << " labels (" << corpus.size() - out.size()
            << " failed)\n";
  return kExitOk;
}

int cmd_report(const RunConfig& cfg) {
  if (cfg.runs.empty()) throw ConfigError("report needs at least one --runs dir");
  fs::create_directories(cfg.out_dir);

  // Best-of-n comparison across runs: one point per run, keyed by its
  // manifest's sample count and temperature.
  std::map<std::string, report::Series> curves;
  std::vector<MetricsRow> primary_rows;

  for (size_t ri = 0; ri < cfg.runs.size(); ++ri) {
    const auto& dir = cfg.runs[ri];
    const fs::path metrics_path = fs::path(dir) / "metrics.jsonl";
    if (!fs::exists(metrics_path))
      throw ConfigError("missing artifact: " + metrics_path.string());
    auto rows = run_io::read_metrics(metrics_path);
    if (ri == 0) primary_rows = rows;

    const fs::path manifest_path = fs::path(dir) / "manifest.json";
    double temp = 0.0;
    int n = 0;
    if (fs::exists(manifest_path)) {
      std::ifstream in(manifest_path);
      auto manifest = json::parse(in);
      temp = manifest.value("temperature", 0.0);
      n = manifest.value("samples", 0);
    }
    auto summary = aggregate(rows);
    curves["T=" + temperature_bucket(temp)].name = "T=" + temperature_bucket(temp);
    curves["T=" + temperature_bucket(temp)].points.push_back(
        {static_cast<double>(n), summary.corpus_improvement});
  }

  if (primary_rows.size() >= 2) {
    auto matrix = pearson_matrix(primary_rows, metric_field_names());
    run_io::write_file(fs::path(cfg.out_dir) / "correlation.txt",
                       report::correlation_text(matrix));
    run_io::write_file(fs::path(cfg.out_dir) / "correlation.csv",
                       report::correlation_csv(matrix));
  }

  auto hist = error_histogram(primary_rows, "tgt_inst_cnt_error_C",
                              {1, 2, 3, 5, 10, 100, 100000});
  run_io::write_file(fs::path(cfg.out_dir) / "error_histogram.csv",
                     report::histogram_csv(hist, "tgt_inst_cnt_error_C"));
  std::vector<std::pair<std::string, double>> bars;
  bars.push_back({"0", static_cast<double>(hist.zero.count)});
  for (const auto& b : hist.buckets)
    bars.push_back({"[" + std::to_string(static_cast<int>(b.lo)) + ",",
                    static_cast<double>(b.count)});
  run_io::write_file(fs::path(cfg.out_dir) / "error_histogram.svg",
                     report::svg_bar_chart("tgt_inst_cnt_error_C distribution", bars));

  run_io::write_file(fs::path(cfg.out_dir) / "subsets.tsv",
                     report::subset_summary_text(primary_rows));

  std::vector<report::Series> series;
  for (auto& [_, s] : curves) {
    std::sort(s.points.begin(), s.points.end());
    series.push_back(s);
  }
  if (!series.empty()) {
    std::ostringstream curve_csv;
    curve_csv << "series,n_samples,corpus_improvement\n";
    for (const auto& s : series)
      for (auto [x, y] : s.points)
        curve_csv << s.name << "," << x << "," << y << "\n";
    run_io::write_file(fs::path(cfg.out_dir) / "sampling_curves.csv",
                       curve_csv.str());
    run_io::write_file(
        fs::path(cfg.out_dir) / "sampling_curves.svg",
        report::svg_line_chart("best-of-n improvement over -Oz", "n samples",
                               "corpus improvement", series));
  }
  run_io::write_file(fs::path(cfg.out_dir) / "manifest.json",
                     cfg.to_manifest().dump(2) + "\n");
  return kExitOk;
}

int cmd_dataset(const RunConfig& cfg) {
  if (cfg.run_dir.empty()) throw ConfigError("dataset needs --run");
  const fs::path episodes_path = fs::path(cfg.run_dir) / "episodes.jsonl";
  if (!fs::exists(episodes_path))
    throw ConfigError("missing artifact: " + episodes_path.string());
  auto episodes = run_io::read_episodes(episodes_path);
  attach_labels(episodes, cfg.labels);

  auto backend = make_backend(cfg);
  int skipped = 0;
  auto records = emit_finetune_dataset(episodes, parse_format(cfg.format),
                                       *backend, &skipped);
  auto split = split_dataset(records, cfg.train_ratio, cfg.valid_ratio,
                             cfg.test_ratio, cfg.seed);
  fs::create_directories(cfg.out_dir);
  run_io::write_dataset(fs::path(cfg.out_dir) / "train.jsonl", split.train);
  run_io::write_dataset(fs::path(cfg.out_dir) / "valid.jsonl", split.valid);
  run_io::write_dataset(fs::path(cfg.out_dir) / "test.jsonl", split.test);
  run_io::write_file(fs::path(cfg.out_dir) / "manifest.json",
                     cfg.to_manifest().dump(2) + "\n");
  std::cerr << "dataset: " << split.train.size() << " train, "
            << split.valid.size() << " valid, " << split.test.size()
            << " test, " << skipped << " skipped (no label)\n";
  return kExitOk;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "gen-corpus") return cmd_gen_corpus(cfg);
  if (cfg.command == "optimize" || cfg.command == "feedback" ||
      cfg.command == "iterate" || cfg.command == "sample")
    return cmd_episodes(cfg);
  if (cfg.command == "autotune") return cmd_autotune(cfg);
  if (cfg.command == "report") return cmd_report(cfg);
  if (cfg.command == "dataset") return cmd_dataset(cfg);
  throw ConfigError("unknown command: " + cfg.command);
}

void add_backend_model_opts(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--backend", cfg.backend, "compiler backend: mini|external");
  cmd->add_option("--ext-bin", cfg.ext_bin, "external optimizer binary path");
  cmd->add_option("--ext-args", cfg.ext_args,
                  "argument template with {input} and {passes}");
  cmd->add_option("--ext-catalog", cfg.ext_catalog,
                  "pass catalog file for the external backend");
  cmd->add_option("--ext-timeout", cfg.ext_timeout,
                  "external tool timeout in seconds");
  cmd->add_option("--model", cfg.model, "model backend: stub|replay|http");
  cmd->add_option("--fixture", cfg.fixture, "replay fixture file");
  cmd->add_option("--endpoint", cfg.endpoint, "completion endpoint URL");
  cmd->add_option("--seed", cfg.seed, "seed for stub model / generator");
  cmd->add_option("--jobs", cfg.jobs, "worker threads");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compiler-in-the-loop feedback harness"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen = app.add_subcommand("gen-corpus", "generate a seeded mini-IR corpus");
  gen->add_option("--size", cfg.gen_size, "number of programs");
  gen->add_option("--seed", cfg.seed, "generator seed");
  gen->add_option("--out", cfg.out_dir, "output directory")->required();

  for (const char* name : {"optimize", "feedback", "iterate", "sample"}) {
    auto* cmd = app.add_subcommand(
        name, std::string("run ") + name + " episodes over a corpus");
    add_backend_model_opts(cmd, cfg);
    cmd->add_option("--format", cfg.format, "feedback format: fast|short|long");
    cmd->add_option("--strategy", cfg.strategy,
                    "sampling strategy (sample command)");
    cmd->add_option("--temperature", cfg.temperature, "sampling temperature");
    cmd->add_option("--samples", cfg.samples, "samples per example");
    cmd->add_option("--steps", cfg.steps, "max feedback steps");
    cmd->add_option("--corpus", cfg.corpus, "corpus dir or gen:<size>")->required();
    cmd->add_option("--labels", cfg.labels, "autotune labels to join");
    cmd->add_option("--out", cfg.out_dir, "run output directory")->required();
    cmd->add_flag("--oz-combine,!--no-oz-combine", cfg.oz_combine,
                  "include -Oz as a fallback candidate");
  }

  auto* tune = app.add_subcommand("autotune", "search pass orderings for labels");
  add_backend_model_opts(tune, cfg);
  tune->add_option("--tuner", cfg.tuner, "exhaustive|random|greedy");
  tune->add_option("--depth", cfg.depth, "max pipeline depth");
  tune->add_option("--max-evals", cfg.max_evals, "evaluation budget");
  tune->add_option("--corpus", cfg.corpus, "corpus dir or gen:<size>")->required();
  tune->add_option("--out", cfg.out_dir, "output directory")->required();

  auto* rep = app.add_subcommand("report", "tables and charts from run artifacts");
  rep->add_option("--runs", cfg.runs, "run directories (first is primary)")
      ->required();
  rep->add_option("--out", cfg.out_dir, "output directory")->required();

  auto* ds = app.add_subcommand("dataset", "emit fine-tuning dataset from a run");
  add_backend_model_opts(ds, cfg);
  ds->add_option("--run", cfg.run_dir, "episodes run directory")->required();
  ds->add_option("--labels", cfg.labels, "autotune labels file");
  ds->add_option("--format", cfg.format, "feedback format for prompts");
  ds->add_option("--train-ratio", cfg.train_ratio, "train split ratio");
  ds->add_option("--valid-ratio", cfg.valid_ratio, "validation split ratio");
  ds->add_option("--test-ratio", cfg.test_ratio, "test split ratio");
  ds->add_option("--out", cfg.out_dir, "output directory")->required();

  auto* rerun = app.add_subcommand("rerun", "re-execute a run from its manifest");
  std::string manifest_path;
  rerun->add_option("manifest", manifest_path, "manifest.json path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitConfig : kExitOk;
  }

  try {
    if (rerun->parsed()) {
      if (!fs::exists(manifest_path))
        throw ConfigError("manifest not found: " + manifest_path);
      std::ifstream in(manifest_path);
      cfg = RunConfig::from_manifest(json::parse(in));
    } else {
      cfg.command = app.get_subcommands().front()->get_name();
    }
    return dispatch(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBackend;
  }
}
