/*
 * Copyright 2026 The neighevo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line driver. Uses only the C interface of libneighevo.

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "neighevo/neighevo.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

// Carries a library status up to main, which maps it to an exit code.
struct Failure {
  ne_status status;
  std::string message;
};

struct UsageError {
  std::string message;
};

void check(ne_status status) {
  if (status != NE_OK) throw Failure{status, ne_last_error()};
}

int exit_code(ne_status status) {
  switch (status) {
    case NE_OK: return 0;
    case NE_ERR_INVALID_ARGUMENT: return kExitUsage;
    case NE_ERR_CONTRACT:
    case NE_ERR_INTERNAL: return kExitInternal;
    default: return kExitData;
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Network = std::unique_ptr<ne_network, Deleter<ne_network, ne_network_free>>;
using Events = std::unique_ptr<ne_events, Deleter<ne_events, ne_events_free>>;
using Profile = std::unique_ptr<ne_profile, Deleter<ne_profile, ne_profile_free>>;
using Patterns = std::unique_ptr<ne_patterns, Deleter<ne_patterns, ne_patterns_free>>;
using Clustering = std::unique_ptr<ne_clustering, Deleter<ne_clustering, ne_clustering_free>>;
using Stats = std::unique_ptr<ne_stats, Deleter<ne_stats, ne_stats_free>>;

unsigned default_threads() {
  if (const char* env = std::getenv("NS_THREADS")) {
    char* end = nullptr;
    errno = 0;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (errno == 0 && end != env && *end == '\0' && v > 0 && v <= 1024)
      return static_cast<unsigned>(v);
    throw UsageError{std::string("NS_THREADS must be a positive integer, got '") + env + "'"};
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string join(const fs::path& dir, const std::string& name) { return (dir / name).string(); }

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{NE_ERR_IO, "cannot create " + dir.string() + ": " + ec.message()};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Failure{NE_ERR_IO, "cannot write " + path};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{NE_ERR_IO, "cannot open " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// 64-bit FNV-1a; stable across platforms, unlike std::hash.
std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- shared option groups

struct SliceFlags {
  std::string format = "temporal";
  std::optional<std::int64_t> origin;
  std::int64_t length = 0;
  std::int64_t overlap = 0;
  std::optional<std::size_t> count;

  void add(CLI::App& app) {
    app.add_option("--format", format, "Input format")
        ->check(CLI::IsMember({"temporal", "presliced"}));
    app.add_option("--origin", origin, "Start of slice 0 (default: earliest timestamp)");
    app.add_option("--slice-len", length, "Slice length, in timestamp units");
    app.add_option("--overlap", overlap, "Overlap between consecutive slices");
    app.add_option("--count", count, "Maximum number of slices");
  }

  ne_slice_options options() const {
    ne_slice_options o{};
    o.has_origin = origin.has_value();
    o.origin = origin.value_or(0);
    o.length = length;
    o.overlap = overlap;
    o.has_count = count.has_value();
    o.count = count.value_or(0);
    return o;
  }

  ordered_json to_json() const {
    ordered_json j;
    j["format"] = format;
    j["origin"] = origin ? ordered_json(*origin) : ordered_json(nullptr);
    j["slice_len"] = length;
    j["overlap"] = overlap;
    j["count"] = count ? ordered_json(*count) : ordered_json(nullptr);
    return j;
  }
};

Network load_network(const std::string& path, const SliceFlags& flags) {
  ne_network* raw = nullptr;
  if (flags.format == "presliced") {
    check(ne_network_load_presliced(path.c_str(), &raw));
  } else {
    if (flags.length <= 0) throw UsageError{"--slice-len is required for temporal input"};
    const auto o = flags.options();
    check(ne_network_load_temporal(path.c_str(), &o, &raw));
  }
  return Network(raw);
}

struct MiningFlags {
  std::optional<double> min_sup;
  double scan_step = 0.1;
  std::size_t top_k = 10;
  std::size_t min_len = 1;

  void add(CLI::App& app) {
    app.add_option("--min-sup", min_sup, "Closed mode: minimum support rate (scan when unset)");
    app.add_option("--scan-step", scan_step, "Decrement of the support scan");
    app.add_option("--top-k", top_k, "Top-k mode: number of patterns");
    app.add_option("--min-len", min_len, "Top-k mode: minimum itemsets per pattern");
  }

  ne_mining_options options(ne_mining_mode mode) const {
    ne_mining_options o;
    ne_mining_options_init(&o);
    o.mode = mode;
    o.has_min_sup = min_sup.has_value();
    o.min_sup = min_sup.value_or(0.0);
    o.scan_step = scan_step;
    o.k = top_k;
    o.min_length = min_len;
    // A support floor only makes sense for the closed miner.
    if (mode == NE_MINE_TOPK) o.has_min_sup = 0;
    return o;
  }

  ordered_json to_json() const {
    ordered_json j;
    j["min_sup"] = min_sup ? ordered_json(*min_sup) : ordered_json(nullptr);
    j["scan_step"] = scan_step;
    j["top_k"] = top_k;
    j["min_len"] = min_len;
    return j;
  }
};

struct ClusterFlags {
  std::string linkage = "average";
  std::size_t k_max = 15;
  std::optional<std::size_t> dtw_window;

  void add(CLI::App& app) {
    app.add_option("--linkage", linkage, "single, complete or average")
        ->check(CLI::IsMember({"single", "complete", "average"}));
    app.add_option("--k-max", k_max, "Largest cut evaluated");
    app.add_option("--dtw-window", dtw_window, "Sakoe-Chiba band half-width");
  }

  ne_cluster_options options(unsigned threads) const {
    ne_cluster_options o;
    ne_cluster_options_init(&o);
    check(ne_parse_linkage(linkage.c_str(), &o.linkage));
    o.k_max = k_max;
    o.has_dtw_window = dtw_window.has_value();
    o.dtw_window = dtw_window.value_or(0);
    o.threads = threads;
    return o;
  }

  ordered_json to_json() const {
    ordered_json j;
    j["linkage"] = linkage;
    j["k_max"] = k_max;
    j["dtw_window"] = dtw_window ? ordered_json(*dtw_window) : ordered_json(nullptr);
    return j;
  }
};

// ---- stage bodies, shared by the single commands and the pipeline

std::vector<std::string> write_event_stage(const ne_network* net, unsigned threads,
                                           const fs::path& out, Events* keep_events,
                                           Profile* keep_profile) {
  ne_events* raw_events = nullptr;
  check(ne_events_build(net, threads, &raw_events));
  Events events(raw_events);
  ne_profile* raw_profile = nullptr;
  check(ne_profile_from_events(events.get(), net, &raw_profile));
  Profile profile(raw_profile);

  check(ne_events_write_csv(events.get(), net, join(out, "events.csv").c_str()));
  check(ne_profile_write_jsonl(profile.get(), join(out, "events.jsonl").c_str()));
  check(ne_profile_write_sequences(profile.get(), join(out, "sequences.jsonl").c_str()));

  ordered_json summary;
  summary["nodes"] = ne_network_node_count(net);
  summary["slices"] = ne_network_slice_count(net);
  summary["intervals"] = ne_profile_interval_count(profile.get());
  summary["records"] = ne_events_record_count(events.get());
  ordered_json kinds;
  for (char k : std::string("BDMSEC"))
    kinds[std::string(1, k)] = ne_events_kind_count(events.get(), k);
  summary["records_by_kind"] = kinds;
  write_text(join(out, "summary.json"), summary.dump(2) + "\n");

  if (keep_events) *keep_events = std::move(events);
  if (keep_profile) *keep_profile = std::move(profile);
  return {"events.csv", "events.jsonl", "sequences.jsonl", "summary.json"};
}

Patterns mine(const ne_profile* profile, const ne_mining_options& options,
              const std::vector<std::string>& cluster) {
  std::vector<const char*> names;
  names.reserve(cluster.size());
  for (const auto& c : cluster) names.push_back(c.c_str());
  ne_patterns* raw = nullptr;
  check(ne_patterns_mine(profile, &options, names.data(), names.size(), &raw));
  return Patterns(raw);
}

Profile load_profile(const std::string& path) {
  ne_profile* raw = nullptr;
  check(ne_profile_load_jsonl(path.c_str(), &raw));
  return Profile(raw);
}

// Reads `node,cluster,silhouette` and returns the nodes labelled `id`.
std::vector<std::string> cluster_members(const std::string& path, std::size_t id) {
  std::istringstream in(read_text(path));
  std::string line;
  std::vector<std::string> members;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) continue;  // header
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = a == std::string::npos ? a : line.find(',', a + 1);
    if (b == std::string::npos)
      throw Failure{NE_ERR_PARSE, path + ": line " + std::to_string(line_no) + ": expected 3 fields"};
    if (line.substr(a + 1, b - a - 1) == std::to_string(id)) members.push_back(line.substr(0, a));
  }
  if (members.empty())
    throw UsageError{path + ": no node belongs to cluster " + std::to_string(id)};
  return members;
}

std::vector<std::string> write_cluster_stage(const ne_profile* profile,
                                             const ne_cluster_options& options,
                                             const fs::path& out, Clustering* keep) {
  ne_clustering* raw = nullptr;
  check(ne_cluster_run(profile, &options, &raw));
  Clustering c(raw);
  check(ne_clustering_write_assignments(c.get(), join(out, "clusters.csv").c_str()));
  check(ne_clustering_write_curve(c.get(), join(out, "asw.csv").c_str()));
  check(ne_clustering_write_dendrogram(c.get(), join(out, "dendrogram.txt").c_str()));
  check(ne_clustering_write_distances(c.get(), join(out, "distances.csv").c_str()));
  std::cout << "k=" << ne_clustering_k(c.get()) << " asw=" << ne_clustering_asw(c.get()) << "\n";
  if (keep) *keep = std::move(c);
  return {"clusters.csv", "asw.csv", "dendrogram.txt", "distances.csv"};
}

std::vector<std::string> write_stats_stage(const ne_network* net, const ne_events* events,
                                           double alpha, const fs::path& out) {
  ne_stats* raw = nullptr;
  check(ne_stats_compute(net, events, &raw));
  Stats stats(raw);
  check(ne_stats_write_counts(stats.get(), join(out, "counts.csv").c_str()));
  check(ne_stats_write_activity(stats.get(), join(out, "activity.csv").c_str()));
  check(ne_stats_write_regressions(stats.get(), alpha, join(out, "regressions.json").c_str()));
  return {"counts.csv", "activity.csv", "regressions.json"};
}

// ---- pipeline configuration file

template <typename T>
void take(const ordered_json& j, const char* key, T& field) {
  if (j.contains(key) && !j.at(key).is_null()) field = j.at(key).get<T>();
}

template <typename T>
void take(const ordered_json& j, const char* key, std::optional<T>& field) {
  if (j.contains(key)) {
    if (j.at(key).is_null())
      field.reset();
    else
      field = j.at(key).get<T>();
  }
}

struct PipelineConfig {
  std::string input;
  SliceFlags slice;
  MiningFlags mining;
  ClusterFlags cluster;
  double alpha = 0.05;
  std::string out;
  unsigned threads = 1;
  std::uint64_t seed = 0;

  void load(const std::string& path) {
    ordered_json j;
    try {
      j = ordered_json::parse(read_text(path));
      take(j, "input", input);
      take(j, "out", out);
      take(j, "threads", threads);
      take(j, "seed", seed);
      take(j, "alpha", alpha);
      if (j.contains("slice")) {
        const auto& s = j["slice"];
        take(s, "format", slice.format);
        take(s, "origin", slice.origin);
        take(s, "slice_len", slice.length);
        take(s, "overlap", slice.overlap);
        take(s, "count", slice.count);
      }
      if (j.contains("mining")) {
        const auto& m = j["mining"];
        take(m, "min_sup", mining.min_sup);
        take(m, "scan_step", mining.scan_step);
        take(m, "top_k", mining.top_k);
        take(m, "min_len", mining.min_len);
      }
      if (j.contains("cluster")) {
        const auto& c = j["cluster"];
        take(c, "linkage", cluster.linkage);
        take(c, "k_max", cluster.k_max);
        take(c, "dtw_window", cluster.dtw_window);
      }
    } catch (const nlohmann::json::exception& e) {
      throw Failure{NE_ERR_PARSE, path + ": " + e.what()};
    }
  }

  void validate() const {
    if (input.empty()) throw UsageError{"pipeline needs an input file"};
    if (out.empty()) throw UsageError{"pipeline needs an output directory"};
    if (slice.format != "temporal" && slice.format != "presliced")
      throw UsageError{"format must be temporal or presliced"};
    if (slice.format == "temporal") {
      if (slice.length <= 0) throw UsageError{"slice length must be positive"};
      if (slice.overlap < 0 || slice.overlap >= slice.length)
        throw UsageError{"overlap must lie in [0, slice length)"};
    }
    if (mining.min_sup && !(*mining.min_sup > 0.0 && *mining.min_sup <= 1.0))
      throw UsageError{"min_sup must lie in (0, 1]"};
    if (!(mining.scan_step > 0.0 && mining.scan_step < 1.0))
      throw UsageError{"scan_step must lie in (0, 1)"};
    if (mining.top_k == 0) throw UsageError{"top_k must be positive"};
    if (mining.min_len == 0) throw UsageError{"min_len must be positive"};
    if (cluster.k_max < 2) throw UsageError{"k_max must be at least 2"};
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError{"alpha must lie in (0, 1)"};
    if (threads == 0) throw UsageError{"threads must be positive"};
  }

  ordered_json to_json() const {
    ordered_json j;
    j["input"] = input;
    j["slice"] = slice.to_json();
    j["mining"] = mining.to_json();
    j["cluster"] = cluster.to_json();
    j["alpha"] = alpha;
    j["out"] = out;
    j["threads"] = threads;
    j["seed"] = seed;
    return j;
  }
};

void run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  const fs::path out = cfg.out;
  ensure_dir(out);
  // Thread count does not influence any artifact, so it stays out of the
  // provenance record to keep reruns byte-identical.
  auto recorded = cfg.to_json();
  recorded.erase("threads");
  write_text(join(out, "config.json"), recorded.dump(2) + "\n");

  ordered_json stages = ordered_json::array();
  auto record = [&](const char* stage, const std::vector<std::string>& files) {
    ordered_json entry;
    entry["stage"] = stage;
    ordered_json list = ordered_json::array();
    for (const auto& f : files)
      list.push_back({{"path", f}, {"fnv1a64", fnv1a_hex(read_text(join(out, f)))}});
    entry["files"] = list;
    stages.push_back(entry);
  };

  auto net = load_network(cfg.input, cfg.slice);
  check(ne_network_write_presliced(net.get(), join(out, "network.txt").c_str()));
  record("slice", {"network.txt"});

  Events events;
  Profile profile;
  record("events", write_event_stage(net.get(), cfg.threads, out, &events, &profile));

  auto closed = mine(profile.get(), cfg.mining.options(NE_MINE_CLOSED), {});
  check(ne_patterns_write_json(closed.get(), join(out, "patterns_closed.json").c_str()));
  auto topk = mine(profile.get(), cfg.mining.options(NE_MINE_TOPK), {});
  check(ne_patterns_write_json(topk.get(), join(out, "patterns_topk.json").c_str()));
  record("mine", {"patterns_closed.json", "patterns_topk.json"});

  Clustering clustering;
  record("cluster", write_cluster_stage(profile.get(), cfg.cluster.options(cfg.threads), out,
                                        &clustering));

  std::vector<std::string> cluster_files;
  const std::size_t k = ne_clustering_k(clustering.get());
  const std::size_t n = ne_profile_node_count(profile.get());
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::string> members;
    for (std::size_t v = 0; v < n; ++v)
      if (ne_clustering_label(clustering.get(), v) == c)
        members.emplace_back(ne_profile_label(profile.get(), v));
    const std::string stem = "cluster_" + std::to_string(c);
    auto pc = mine(profile.get(), cfg.mining.options(NE_MINE_CLOSED), members);
    check(ne_patterns_write_json(pc.get(), join(out, stem + "_closed.json").c_str()));
    auto pt = mine(profile.get(), cfg.mining.options(NE_MINE_TOPK), members);
    check(ne_patterns_write_json(pt.get(), join(out, stem + "_topk.json").c_str()));
    cluster_files.push_back(stem + "_closed.json");
    cluster_files.push_back(stem + "_topk.json");
  }
  record("cluster_mine", cluster_files);

  record("stats", write_stats_stage(net.get(), events.get(), cfg.alpha, out));

  ordered_json manifest;
  manifest["version"] = ne_version();
  manifest["config_fnv1a64"] = fnv1a_hex(read_text(join(out, "config.json")));
  manifest["stages"] = stages;
  write_text(join(out, "manifest.json"), manifest.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neighborhood evolution events, patterns and clusters for dynamic networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ne_version()));

  unsigned threads = 0;
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "Worker threads (default: NS_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
  };

  // slice
  std::string input, out;
  SliceFlags slice;
  auto* cmd_slice = app.add_subcommand("slice", "Cut a temporal edge list into time slices");
  cmd_slice->add_option("--input", input, "Temporal edge list")->required();
  cmd_slice->add_option("--out", out, "Presliced output file")->required();
  slice.add(*cmd_slice);

  // events
  auto* cmd_events = app.add_subcommand("events", "Detect neighborhood events");
  cmd_events->add_option("--input", input, "Network file")->required();
  cmd_events->add_option("--out", out, "Output directory")->required();
  slice.add(*cmd_events);
  add_threads(cmd_events);

  // mine
  std::string mode = "closed", clusters_path;
  std::optional<std::size_t> cluster_id;
  MiningFlags mining;
  auto* cmd_mine = app.add_subcommand("mine", "Mine sequential patterns from events.jsonl");
  cmd_mine->add_option("--input", input, "events.jsonl")->required();
  cmd_mine->add_option("--out", out, "Patterns JSON file")->required();
  cmd_mine->add_option("--mode", mode, "closed or topk")
      ->check(CLI::IsMember({"closed", "topk"}));
  cmd_mine->add_option("--clusters", clusters_path, "clusters.csv for cluster-scoped mining");
  cmd_mine->add_option("--cluster", cluster_id, "Cluster to mine")->needs("--clusters");
  mining.add(*cmd_mine);

  // cluster
  ClusterFlags cluster;
  auto* cmd_cluster = app.add_subcommand("cluster", "Cluster nodes by their event-count series");
  cmd_cluster->add_option("--input", input, "events.jsonl")->required();
  cmd_cluster->add_option("--out", out, "Output directory")->required();
  cluster.add(*cmd_cluster);
  add_threads(cmd_cluster);

  // stats
  std::string events_path;
  double alpha = 0.05;
  auto* cmd_stats = app.add_subcommand("stats", "Per-interval event counts and regressions");
  cmd_stats->add_option("--network", input, "Presliced network file")->required();
  cmd_stats->add_option("--events", events_path, "events.csv")->required();
  cmd_stats->add_option("--out", out, "Output directory")->required();
  cmd_stats->add_option("--alpha", alpha, "Significance level");

  // pipeline
  std::string config_path;
  PipelineConfig pipeline;
  auto* cmd_pipeline = app.add_subcommand("pipeline", "Run every stage");
  cmd_pipeline->add_option("--config", config_path, "JSON configuration");
  cmd_pipeline->add_option("--input", input, "Network file");
  cmd_pipeline->add_option("--out", out, "Output directory");
  cmd_pipeline->add_option("--alpha", alpha, "Significance level");
  cmd_pipeline->add_option("--seed", pipeline.seed, "Recorded for randomized test utilities");
  slice.add(*cmd_pipeline);
  mining.add(*cmd_pipeline);
  cluster.add(*cmd_pipeline);
  add_threads(cmd_pipeline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (threads == 0) threads = default_threads();

    if (cmd_slice->parsed()) {
      slice.format = "temporal";
      auto net = load_network(input, slice);
      check(ne_network_write_presliced(net.get(), out.c_str()));
      std::cout << ne_network_node_count(net.get()) << " nodes, "
                << ne_network_slice_count(net.get()) << " slices, "
                << ne_network_dropped_self_loops(net.get()) << " self-loops dropped\n";
    } else if (cmd_events->parsed()) {
      auto net = load_network(input, slice);
      ensure_dir(out);
      write_event_stage(net.get(), threads, out, nullptr, nullptr);
    } else if (cmd_mine->parsed()) {
      auto profile = load_profile(input);
      std::vector<std::string> members;
      if (!clusters_path.empty()) {
        if (!cluster_id) throw UsageError{"--clusters needs --cluster"};
        members = cluster_members(clusters_path, *cluster_id);
      }
      const auto m = mode == "topk" ? NE_MINE_TOPK : NE_MINE_CLOSED;
      auto options = mining.options(m);
      auto patterns = mine(profile.get(), options, members);
      check(ne_patterns_write_json(patterns.get(), out.c_str()));
      std::cout << ne_patterns_count(patterns.get()) << " patterns";
      if (ne_patterns_scan_threshold(patterns.get()) >= 0.0)
        std::cout << " at min_sup " << ne_patterns_scan_threshold(patterns.get());
      std::cout << "\n";
    } else if (cmd_cluster->parsed()) {
      auto profile = load_profile(input);
      ensure_dir(out);
      write_cluster_stage(profile.get(), cluster.options(threads), out, nullptr);
    } else if (cmd_stats->parsed()) {
      ne_network* raw_net = nullptr;
      check(ne_network_load_presliced(input.c_str(), &raw_net));
      Network net(raw_net);
      ne_events* raw_events = nullptr;
      check(ne_events_load_csv(net.get(), events_path.c_str(), &raw_events));
      Events events(raw_events);
      ensure_dir(out);
      write_stats_stage(net.get(), events.get(), alpha, out);
    } else if (cmd_pipeline->parsed()) {
      if (!config_path.empty()) pipeline.load(config_path);
      // Flags given on the command line win over the file.
      if (cmd_pipeline->count("--input")) pipeline.input = input;
      if (cmd_pipeline->count("--out")) pipeline.out = out;
      if (cmd_pipeline->count("--alpha")) pipeline.alpha = alpha;
      if (cmd_pipeline->count("--threads") || config_path.empty()) pipeline.threads = threads;
      for (const char* f : {"--format", "--origin", "--slice-len", "--overlap", "--count"})
        if (cmd_pipeline->count(f)) {
          if (std::string(f) == "--format") pipeline.slice.format = slice.format;
          if (std::string(f) == "--origin") pipeline.slice.origin = slice.origin;
          if (std::string(f) == "--slice-len") pipeline.slice.length = slice.length;
          if (std::string(f) == "--overlap") pipeline.slice.overlap = slice.overlap;
          if (std::string(f) == "--count") pipeline.slice.count = slice.count;
        }
      if (cmd_pipeline->count("--min-sup")) pipeline.mining.min_sup = mining.min_sup;
      if (cmd_pipeline->count("--scan-step")) pipeline.mining.scan_step = mining.scan_step;
      if (cmd_pipeline->count("--top-k")) pipeline.mining.top_k = mining.top_k;
      if (cmd_pipeline->count("--min-len")) pipeline.mining.min_len = mining.min_len;
      if (cmd_pipeline->count("--linkage")) pipeline.cluster.linkage = cluster.linkage;
      if (cmd_pipeline->count("--k-max")) pipeline.cluster.k_max = cluster.k_max;
      if (cmd_pipeline->count("--dtw-window")) pipeline.cluster.dtw_window = cluster.dtw_window;
      run_pipeline(pipeline);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const Failure& e) {
    std::cerr << "error (" << ne_status_string(e.status) << "): " << e.message << "\n";
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
