// Copyright 2026 The Descend Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "descend/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "descend/coverage.hpp"
#include "descend/crawler.hpp"
#include "descend/digest.hpp"
#include "descend/errors.hpp"
#include "descend/fixture_gen.hpp"
#include "descend/json_io.hpp"
#include "descend/page_driver.hpp"
#include "descend/path_analysis.hpp"
#include "descend/policy.hpp"
#include "descend/report.hpp"
#include "descend/stats.hpp"
#include "descend/warc_metadata.hpp"

#ifndef DESCEND_VERSION
#define DESCEND_VERSION "dev"
#endif

namespace descend::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kEndpointEnv = "DESCEND_TIMEMAP_ENDPOINT";

// Bad flags, values or paths: exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct GenOptions {
  std::string out;
  std::string preset = "random";
  std::uint64_t seed = 1;
  std::size_t count = 10;
  RandomFixtureSpec spec;
};

struct CrawlOptions {
  std::string seeds;
  std::string fixtures;
  CrawlLimits limits;
  bool emit_metadata = false;
  std::size_t markup_bytes = SimulatedDriverOptions{}.markup_bytes;
  std::string timestamp = "1970-01-01T00:00:00Z";
};

struct CoverageCliOptions {
  std::string endpoint;
  std::string holdings;
  int attempts = 3;
  int politeness_ms = 100;
  std::size_t per_host = 2;
};

struct EstimateOptions {
  std::string policy = "max-roi";
  CrawlRates rates;
  std::vector<double> sizes;
  std::vector<double> times;
  double baseline_size = 0;
  double baseline_time = 0;
  double metadata_record_bytes = 16450;
  std::string accounting = "per-descendant";
  MeanResourceSizes mean_sizes;
  double extrapolate_uris = 0;
  double extrapolate_bytes = 0;
  int months = 12;
};

struct Globals {
  std::string run_dir = "run";
  std::size_t workers = 1;
  std::vector<std::string> session_params;
};

SessionPatterns patterns_of(const Globals& g) {
  return g.session_params.empty() ? SessionPatterns::defaults() : SessionPatterns(g.session_params);
}

template <typename F>
void parallel_for(std::size_t n, std::size_t workers, F&& body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < std::min(workers, n); ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
}

std::string input_name(const fs::path& p, const fs::path& run_dir) {
  std::error_code ec;
  auto rel = fs::relative(p, run_dir, ec);
  if (!ec && !rel.empty() && rel.native().rfind("..", 0) != 0) return rel.generic_string();
  return p.generic_string();
}

void write_manifest(const fs::path& dir, const std::string& stage, const json& config,
                    const std::vector<fs::path>& inputs) {
  json digests = json::object();
  for (const auto& p : inputs) digests[input_name(p, dir)] = sha256_file_hex(p);
  json manifest{{"tool", "descend"}, {"version", DESCEND_VERSION}, {"stage", stage}, {"config", config},
                {"inputs", digests}};
  json_io::write_file(dir / ("manifest-" + stage + ".json"), manifest);
}

std::vector<std::string> read_seed_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot read seed list " + path.string());
  std::vector<std::string> seeds;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    seeds.push_back(line.substr(b, e - b + 1));
  }
  return seeds;
}

std::vector<fs::path> fixture_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && entry.path().extension() == ".json" && name.rfind("manifest-", 0) != 0) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string numbered(std::size_t i, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04zu%s", i, ext);
  return buf;
}

void reset_dir(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
}

// ---- stages ----

int cmd_gen_fixture(const GenOptions& o) {
  if (o.out.empty()) throw ConfigError("gen-fixture needs --out");
  json config{{"preset", o.preset}, {"seed", o.seed}};
  if (o.preset == "reference") {
    const auto corpus = reference_corpus(o.seed);
    write_corpus(o.out, corpus.fixtures, corpus.holdings);
    std::cout << "wrote " << corpus.fixtures.size() << " fixtures and holdings.txt to " << o.out << "\n";
  } else if (o.preset == "random") {
    try {
      o.spec.validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    config["count"] = o.count;
    config["breadth"] = o.spec.breadth;
    config["depth"] = o.spec.depth;
    config["overlap"] = o.spec.overlap;
    config["resources"] = o.spec.resources_per_state;
    config["max_states"] = o.spec.max_states;
    write_corpus(o.out, random_corpus(o.spec, o.count, o.seed));
    std::cout << "wrote " << o.count << " fixtures to " << o.out << "\n";
  } else {
    throw ConfigError("unknown preset '" + o.preset + "' (expected random or reference)");
  }
  write_manifest(o.out, "gen-fixture", config, {});
  return kOk;
}

int cmd_crawl(const Globals& g, const CrawlOptions& o) {
  if (o.fixtures.empty()) throw ConfigError("crawl needs --fixtures");
  if (!fs::is_directory(o.fixtures)) throw ConfigError("fixture directory " + o.fixtures + " does not exist");
  const fs::path seeds_path = o.seeds.empty() ? fs::path(o.fixtures) / "seeds.txt" : fs::path(o.seeds);
  if (!fs::exists(seeds_path)) throw ConfigError("seed list " + seeds_path.string() + " does not exist");
  const auto timestamp = parse_iso8601(o.timestamp);
  if (!timestamp) throw ConfigError("--timestamp must look like 2015-06-01T00:00:00Z");
  try {
    o.limits.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  const SessionPatterns patterns = patterns_of(g);
  const auto raw_seeds = read_seed_list(seeds_path);
  std::vector<UriR> seeds;
  for (const auto& s : raw_seeds) seeds.push_back(canonicalize(s, patterns));

  auto library = std::make_shared<FixtureLibrary>(patterns);
  std::vector<fs::path> inputs{seeds_path};
  for (const auto& f : fixture_files(o.fixtures)) {
    library->add(read_fixture_file(f, patterns));
    inputs.push_back(f);
  }

  const fs::path run(g.run_dir);
  reset_dir(run / "crawl");
  if (o.emit_metadata) reset_dir(run / "metadata");

  if (seeds.empty()) std::cerr << "warning: seed list " << seeds_path.string() << " is empty\n";

  std::vector<std::size_t> notes(seeds.size());
  parallel_for(seeds.size(), g.workers, [&](std::size_t i) {
    SimulatedDriver driver(library, SimulatedDriverOptions{o.markup_bytes});
    CrawlResult result;
    result.tree = build_tree(seeds[i], driver, o.limits);
    result.classification = classify(result.tree);
    notes[i] = result.tree.notes().size();
    json_io::write_file(run / "crawl" / numbered(i, ".json"), crawl_result_to_json(result));
    if (o.emit_metadata) {
      const PageHandle root = driver.load(seeds[i]);
      std::vector<DescendantMetadataRecord> records;
      for (const auto& state : result.tree.nodes()) {
        if (state.level == 0) continue;
        auto markup = driver.execute(root, state.script).handle.rendered_markup;
        records.push_back(emit_record(state, result.tree, *timestamp, std::move(markup)));
      }
      json_io::write_text(run / "metadata" / numbered(i, ".ndjson"), serialize_record_stream(records));
    }
  });

  json index = json::array();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    index.push_back({{"seed", seeds[i].canonical()}, {"file", numbered(i, ".json")}, {"notes", notes[i]}});
  }
  json_io::write_file(run / "crawl" / "index.json", json{{"seeds", index}});

  json config{{"fixtures", o.fixtures},
              {"seeds", seeds_path.generic_string()},
              {"max_depth", o.limits.max_depth},
              {"max_events_per_state", o.limits.max_events_per_state},
              {"max_states_per_seed", o.limits.max_states_per_seed},
              {"explosion_threshold", o.limits.explosion_threshold},
              {"emit_metadata", o.emit_metadata},
              {"markup_bytes", o.markup_bytes},
              {"timestamp", o.timestamp},
              {"session_params", patterns.patterns()}};
  write_manifest(run, "crawl", config, inputs);
  std::cout << "crawled " << seeds.size() << " seeds into " << (run / "crawl").string() << "\n";
  return kOk;
}

std::vector<fs::path> crawl_files(const fs::path& run) {
  const json index = json_io::read_file(run / "crawl" / "index.json");
  std::vector<fs::path> files;
  for (const auto& e : index.at("seeds")) files.push_back(run / "crawl" / e.at("file").get<std::string>());
  return files;
}

int cmd_analyze(const Globals& g) {
  const fs::path run(g.run_dir);
  const auto files = crawl_files(run);
  std::vector<SeedAnalysis> analyses(files.size());
  parallel_for(files.size(), g.workers, [&](std::size_t i) {
    const CrawlResult r = crawl_result_from_json(json_io::read_file(files[i]));
    analyses[i] = SeedAnalysis{r.classification, analyze_tree(r.tree)};
  });
  json seeds = json::array();
  for (const auto& a : analyses) seeds.push_back(seed_analysis_to_json(a));
  json out{{"seeds", seeds}};
  if (analyses.empty()) {
    std::cerr << "warning: no crawled seeds to analyze\n";
    out["corpus"] = nullptr;
  } else {
    out["corpus"] = corpus_stats_to_json(aggregate(analyses));
  }
  json_io::write_file(run / "analysis.json", out);
  std::vector<fs::path> inputs{run / "crawl" / "index.json"};
  inputs.insert(inputs.end(), files.begin(), files.end());
  write_manifest(run, "analyze", json::object(), inputs);
  std::cout << "analyzed " << analyses.size() << " seeds into " << (run / "analysis.json").string() << "\n";
  return kOk;
}

std::vector<SeedAnalysis> load_analyses(const fs::path& run) {
  const json j = json_io::read_file(run / "analysis.json");
  std::vector<SeedAnalysis> out;
  for (const auto& s : j.at("seeds")) out.push_back(seed_analysis_from_json(s));
  return out;
}

int cmd_coverage(const Globals& g, CoverageCliOptions o) {
  if (const char* env = std::getenv(kEndpointEnv); env != nullptr && *env != '\0') o.endpoint = env;
  if (o.endpoint.empty() == o.holdings.empty()) {
    throw ConfigError("coverage needs exactly one of --endpoint (or $" + std::string(kEndpointEnv) +
                      ") and --holdings");
  }
  if (!o.holdings.empty() && !fs::exists(o.holdings)) throw ConfigError("holdings file " + o.holdings + " does not exist");

  const fs::path run(g.run_dir);
  const auto analyses = load_analyses(run);
  const auto frontier = corpus_frontier(analyses);

  std::unique_ptr<ArchiveBackend> backend;
  json config;
  std::vector<fs::path> inputs{run / "analysis.json"};
  if (!o.holdings.empty()) {
    backend = std::make_unique<MockArchive>(MockArchive::from_holdings_file(o.holdings));
    config["holdings"] = o.holdings;
    inputs.push_back(o.holdings);
  } else {
    HttpBackendOptions http;
    http.endpoint = o.endpoint;
    http.attempts = o.attempts;
    http.politeness_delay = std::chrono::milliseconds(o.politeness_ms);
    http.per_host_concurrency = o.per_host;
    try {
      backend = std::make_unique<HttpTimeMapBackend>(http);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    config["endpoint"] = o.endpoint;
  }
  const auto report = coverage(frontier, *backend, CoverageOptions{g.workers});
  json_io::write_file(run / "coverage.json", coverage_to_json(report));
  std::string csv = "level,total,archived,unarchived,failed,fraction_unarchived\n";
  for (const auto& l : report.levels) {
    csv += std::to_string(l.level) + "," + std::to_string(l.total) + "," + std::to_string(l.archived) + "," +
           std::to_string(l.unarchived) + "," + std::to_string(l.failed) + "," +
           std::to_string(round_half_up(l.fraction_unarchived, 4)) + "\n";
    std::cout << "level " << l.level << ": " << l.unarchived << "/" << (l.total - l.failed) << " unarchived ("
              << round_half_up(100 * l.fraction_unarchived, 2) << "%)"
              << (l.failed ? ", " + std::to_string(l.failed) + " lookups failed" : std::string()) << "\n";
  }
  json_io::write_text(run / "coverage.csv", csv);
  write_manifest(run, "coverage", config, inputs);
  if (report.errors) std::cerr << "warning: " << report.errors << " TimeMap lookups failed\n";
  return kOk;
}

std::map<int, double> by_level(const std::vector<double>& v) {
  std::map<int, double> m;
  for (std::size_t i = 0; i < v.size(); ++i) m[static_cast<int>(i)] = v[i];
  return m;
}

void print_estimate(const CrawlEstimate& e, const CrawlPolicy& policy) {
  std::printf("%-9s %12s %10s %10s %10s %10s\n", "level", "time_s", "size", "time_x", "size_x", "marginal");
  std::printf("%-9s %12.2f %10.0f %10s %10s %10s\n", "baseline", e.baseline_time_s, e.baseline_size, "-", "-", "-");
  for (const auto& l : e.levels) {
    char marginal[32];
    if (l.marginal) {
      std::snprintf(marginal, sizeof marginal, "%.2f", round_half_up(*l.marginal, 2));
    } else {
      std::snprintf(marginal, sizeof marginal, "undefined");
    }
    std::printf("%-9s %12.2f %10.0f %10s %10s %10s\n", ("s" + std::to_string(l.level)).c_str(), l.time_s, l.size,
                format_ratio(l.time_ratio).c_str(), format_ratio(l.size_ratio).c_str(), marginal);
  }
  std::string levels;
  for (int l : policy.levels_included) levels += (levels.empty() ? "" : ",") + std::to_string(l);
  std::printf("policy %s crawls levels {%s}\n", policy_name(policy.kind).c_str(), levels.c_str());
}

int cmd_estimate(const Globals& g, const EstimateOptions& o, bool out_given) {
  PolicyKind kind;
  MetadataAccounting accounting;
  try {
    kind = policy_from_name(o.policy);
    o.rates.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (o.accounting == "per-descendant") {
    accounting = MetadataAccounting::kPerDescendant;
  } else if (o.accounting == "per-seed") {
    accounting = MetadataAccounting::kPerSeed;
  } else {
    throw ConfigError("--accounting must be per-descendant or per-seed");
  }

  const fs::path run(g.run_dir);
  json out;
  std::vector<fs::path> inputs;
  CrawlEstimate estimate;
  if (!o.sizes.empty()) {
    if (!(o.baseline_size > 0)) throw ConfigError("--sizes needs a positive --baseline-size");
    if (!o.times.empty()) {
      if (o.times.size() != o.sizes.size()) throw ConfigError("--times and --sizes need the same number of levels");
      if (!(o.baseline_time > 0)) throw ConfigError("--times needs a positive --baseline-time");
      estimate = estimate_crawl(by_level(o.sizes), o.baseline_size, by_level(o.times), o.baseline_time);
    } else {
      estimate = model_crawl(by_level(o.sizes), o.baseline_size, o.rates);
    }
  } else {
    const auto analyses = load_analyses(run);
    inputs.push_back(run / "analysis.json");
    std::map<int, double> sizes;
    for (const auto& [level, n] : level_contributions(analyses)) sizes[level] = static_cast<double>(n);
    const double baseline = o.baseline_size > 0 ? o.baseline_size : (sizes.count(0) ? sizes[0] : 0.0);
    estimate = model_crawl(sizes, baseline, o.rates);
    if (!analyses.empty()) {
      const CorpusStats stats = aggregate(analyses);
      StorageEstimate storage = estimate_storage(stats, o.mean_sizes, o.metadata_record_bytes, accounting);
      if (o.extrapolate_uris > 0) {
        storage = extrapolate(CrawlVolume{o.extrapolate_uris, o.extrapolate_bytes}, storage,
                              static_cast<double>(analyses.size()), o.months);
      }
      out["storage"] = storage_to_json(storage);
    }
  }
  const CrawlPolicy policy = select_policy(kind, estimate);
  out["crawl"] = crawl_estimate_to_json(estimate);
  out["policy"] = policy_to_json(policy);
  out["policies"] = {{"max-coverage", policy_to_json(select_policy(PolicyKind::kMaxCoverage, estimate))},
                     {"max-roi", policy_to_json(select_policy(PolicyKind::kMaxRoi, estimate))}};
  print_estimate(estimate, policy);

  if (o.sizes.empty() || out_given) {
    json config{{"policy", o.policy},
                {"baseline_rate", o.rates.baseline_rate},
                {"descendant_rate", o.rates.descendant_rate},
                {"sizes", o.sizes},
                {"times", o.times},
                {"baseline_size", o.baseline_size},
                {"baseline_time", o.baseline_time},
                {"metadata_record_bytes", o.metadata_record_bytes},
                {"accounting", o.accounting},
                {"mean_level0_bytes", o.mean_sizes.level0_bytes},
                {"mean_descendant_bytes", o.mean_sizes.descendant_bytes},
                {"extrapolate_uris", o.extrapolate_uris},
                {"extrapolate_bytes", o.extrapolate_bytes},
                {"months", o.months}};
    json_io::write_file(run / "estimate.json", out);
    write_manifest(run, "estimate", config, inputs);
  }
  return kOk;
}

int cmd_report(const Globals& g) {
  const fs::path run(g.run_dir);
  ReportInputs in;
  in.seeds = load_analyses(run);
  std::vector<fs::path> inputs{run / "analysis.json"};
  if (fs::exists(run / "coverage.json")) {
    in.coverage = json_io::read_file(run / "coverage.json");
    inputs.push_back(run / "coverage.json");
  }
  if (fs::exists(run / "estimate.json")) {
    in.estimate = json_io::read_file(run / "estimate.json");
    inputs.push_back(run / "estimate.json");
  }
  reset_dir(run / "report");
  const auto files = render_report(in);
  for (const auto& f : files) json_io::write_text(run / "report" / f.name, f.contents);
  write_manifest(run, "report", json::object(), inputs);
  std::cout << "wrote " << files.size() << " report files to " << (run / "report").string() << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Crawl client-side descendant states, analyze their resource frontier, audit archival coverage"};
  app.set_config("--config", "", "TOML config file; flags override it");
  app.set_version_flag("--version", DESCEND_VERSION);
  app.require_subcommand(1);

  Globals g;
  auto add_run_dir = [&](CLI::App* sub) {
    sub->add_option("--out,--run", g.run_dir, "run directory")->capture_default_str();
  };

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-fixture", "generate simulator fixtures");
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_option("--preset", gen.preset, "random or reference")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "number of fixtures (random preset)")->capture_default_str();
  gen_cmd->add_option("--breadth", gen.spec.breadth, "max events per state")->capture_default_str();
  gen_cmd->add_option("--depth", gen.spec.depth, "deepest state level")->capture_default_str();
  gen_cmd->add_option("--overlap", gen.spec.overlap, "chance a request repeats an earlier URI")->capture_default_str();
  gen_cmd->add_option("--resources", gen.spec.resources_per_state, "max requests per state")->capture_default_str();
  gen_cmd->add_option("--max-states", gen.spec.max_states, "state cap per fixture")->capture_default_str();

  CrawlOptions crawl;
  auto* crawl_cmd = app.add_subcommand("crawl", "build state trees for every seed");
  add_run_dir(crawl_cmd);
  crawl_cmd->add_option("--fixtures", crawl.fixtures, "fixture directory")->required();
  crawl_cmd->add_option("--seeds", crawl.seeds, "seed list (default: <fixtures>/seeds.txt)");
  crawl_cmd->add_option("--max-depth", crawl.limits.max_depth)->capture_default_str();
  crawl_cmd->add_option("--max-events", crawl.limits.max_events_per_state)->capture_default_str();
  crawl_cmd->add_option("--max-states", crawl.limits.max_states_per_seed)->capture_default_str();
  crawl_cmd->add_option("--explosion-threshold", crawl.limits.explosion_threshold)->capture_default_str();
  crawl_cmd->add_flag("--emit-metadata", crawl.emit_metadata, "write per-descendant metadata records");
  crawl_cmd->add_option("--markup-bytes", crawl.markup_bytes, "synthetic markup size")->capture_default_str();
  crawl_cmd->add_option("--timestamp", crawl.timestamp, "startedDateTime of metadata records")->capture_default_str();

  auto* analyze_cmd = app.add_subcommand("analyze", "compute paths, frontiers and corpus statistics");
  add_run_dir(analyze_cmd);

  CoverageCliOptions cov;
  auto* cov_cmd = app.add_subcommand("coverage", "look the frontier up in a web archive");
  add_run_dir(cov_cmd);
  cov_cmd->add_option("--endpoint", cov.endpoint, "TimeMap URL template ({uri} is substituted)");
  cov_cmd->add_option("--holdings", cov.holdings, "mock archive holdings file");
  cov_cmd->add_option("--attempts", cov.attempts)->capture_default_str();
  cov_cmd->add_option("--politeness-ms", cov.politeness_ms)->capture_default_str();
  cov_cmd->add_option("--per-host", cov.per_host, "concurrent requests per archive host")->capture_default_str();

  EstimateOptions est;
  auto* est_cmd = app.add_subcommand("estimate", "crawl time, policy and storage estimates");
  auto* est_out = est_cmd->add_option("--out,--run", g.run_dir, "run directory")->capture_default_str();
  est_cmd->add_option("--policy", est.policy, "max-roi or max-coverage")->capture_default_str();
  est_cmd->add_option("--baseline-rate", est.rates.baseline_rate, "URIs/s without descendants")->capture_default_str();
  est_cmd->add_option("--descendant-rate", est.rates.descendant_rate, "URIs/s with descendants")->capture_default_str();
  est_cmd->add_option("--sizes", est.sizes, "frontier size per level, comma separated")->delimiter(',');
  est_cmd->add_option("--times", est.times, "crawl seconds per level, comma separated")->delimiter(',');
  est_cmd->add_option("--baseline-size", est.baseline_size);
  est_cmd->add_option("--baseline-time", est.baseline_time);
  est_cmd->add_option("--metadata-record-bytes", est.metadata_record_bytes)->capture_default_str();
  est_cmd->add_option("--accounting", est.accounting, "per-descendant or per-seed")->capture_default_str();
  est_cmd->add_option("--mean-level0-bytes", est.mean_sizes.level0_bytes)->capture_default_str();
  est_cmd->add_option("--mean-descendant-bytes", est.mean_sizes.descendant_bytes)->capture_default_str();
  est_cmd->add_option("--extrapolate-uris", est.extrapolate_uris, "monthly base crawl URIs");
  est_cmd->add_option("--extrapolate-bytes", est.extrapolate_bytes, "monthly base crawl bytes");
  est_cmd->add_option("--months", est.months)->capture_default_str();

  auto* report_cmd = app.add_subcommand("report", "render tables and figure series");
  add_run_dir(report_cmd);

  for (auto* sub : {crawl_cmd, analyze_cmd, cov_cmd, est_cmd}) {
    sub->add_option("--workers", g.workers, "parallel workers")->capture_default_str()->check(CLI::PositiveNumber);
  }
  crawl_cmd->add_option("--session-param", g.session_params, "query keys stripped during canonicalization");
  analyze_cmd->add_option("--session-param", g.session_params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen_fixture(gen);
    if (crawl_cmd->parsed()) return cmd_crawl(g, crawl);
    if (analyze_cmd->parsed()) return cmd_analyze(g);
    if (cov_cmd->parsed()) return cmd_coverage(g, cov);
    if (est_cmd->parsed()) return cmd_estimate(g, est, est_out->count() > 0);
    if (report_cmd->parsed()) return cmd_report(g);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStageFailure;
  }
  return kConfigError;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace descend::cli
