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

// Exercises the shared library through its C header only.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "neighevo/neighevo.h"

#ifndef NEIGHEVO_TEST_DATA
#error "NEIGHEVO_TEST_DATA must point at tests/data"
#endif

namespace fs = std::filesystem;

namespace {

std::string fixture() { return std::string(NEIGHEVO_TEST_DATA) + "/fig1.txt"; }

fs::path scratch_dir(const char* name) {
  auto dir = fs::temp_directory_path() / (std::string("neighevo_capi_") + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("status strings and version") {
  CHECK(std::strlen(ne_version()) > 0);
  CHECK(std::string(ne_status_string(NE_OK)) == "ok");
  CHECK(std::string(ne_status_string(NE_ERR_PARSE)).size() > 0);
  ne_network_free(nullptr);
  ne_events_free(nullptr);
  ne_profile_free(nullptr);
  ne_patterns_free(nullptr);
  ne_clustering_free(nullptr);
  ne_stats_free(nullptr);
}

TEST_CASE("full run through the C interface") {
  const auto dir = scratch_dir("full");
  ne_network* net = nullptr;
  REQUIRE(ne_network_load_presliced(fixture().c_str(), &net) == NE_OK);
  CHECK(ne_network_node_count(net) == 11);
  CHECK(ne_network_slice_count(net) == 3);
  CHECK(std::string(ne_network_label(net, 0)) == "v1");
  CHECK(ne_network_label(net, 11) == nullptr);

  ne_events* events = nullptr;
  REQUIRE(ne_events_build(net, 2, &events) == NE_OK);
  CHECK(ne_events_record_count(events) > 0);
  std::size_t by_kind = 0;
  for (char k : std::string("BDMSEC")) by_kind += ne_events_kind_count(events, k);
  CHECK(by_kind == ne_events_record_count(events));
  CHECK(ne_events_kind_count(events, 'X') == 0);

  const auto csv = (dir / "events.csv").string();
  REQUIRE(ne_events_write_csv(events, net, csv.c_str()) == NE_OK);
  ne_events* reloaded = nullptr;
  REQUIRE(ne_events_load_csv(net, csv.c_str(), &reloaded) == NE_OK);
  CHECK(ne_events_record_count(reloaded) == ne_events_record_count(events));

  ne_profile* profile = nullptr;
  REQUIRE(ne_profile_from_events(events, net, &profile) == NE_OK);
  const auto jsonl = (dir / "events.jsonl").string();
  REQUIRE(ne_profile_write_jsonl(profile, jsonl.c_str()) == NE_OK);
  ne_profile* loaded = nullptr;
  REQUIRE(ne_profile_load_jsonl(jsonl.c_str(), &loaded) == NE_OK);
  CHECK(ne_profile_node_count(loaded) == 11);
  CHECK(ne_profile_interval_count(loaded) == 2);

  ne_mining_options mo;
  ne_mining_options_init(&mo);
  mo.has_min_sup = 1;
  mo.min_sup = 0.5;
  ne_patterns* patterns = nullptr;
  REQUIRE(ne_patterns_mine(loaded, &mo, nullptr, 0, &patterns) == NE_OK);
  CHECK(ne_patterns_count(patterns) > 0);
  CHECK(ne_patterns_scan_threshold(patterns) < 0.0);
  ne_patterns_free(patterns);

  mo.has_min_sup = 0;
  REQUIRE(ne_patterns_mine(loaded, &mo, nullptr, 0, &patterns) == NE_OK);
  CHECK(ne_patterns_scan_threshold(patterns) > 0.0);
  ne_patterns_free(patterns);

  const char* cluster[] = {"v1", "v2"};
  mo.mode = NE_MINE_TOPK;
  REQUIRE(ne_patterns_mine(loaded, &mo, cluster, 2, &patterns) == NE_OK);
  const auto pj = (dir / "patterns.json").string();
  REQUIRE(ne_patterns_write_json(patterns, pj.c_str()) == NE_OK);
  CHECK(slurp(pj).find("growth_rate") != std::string::npos);
  ne_patterns_free(patterns);

  const char* unknown[] = {"nobody"};
  CHECK(ne_patterns_mine(loaded, &mo, unknown, 1, &patterns) == NE_ERR_INVALID_ARGUMENT);
  CHECK(patterns == nullptr);
  CHECK(std::string(ne_last_error()).find("nobody") != std::string::npos);

  ne_cluster_options co;
  ne_cluster_options_init(&co);
  REQUIRE(ne_parse_linkage("complete", &co.linkage) == NE_OK);
  CHECK(co.linkage == NE_LINK_COMPLETE);
  CHECK(ne_parse_linkage("ward", &co.linkage) == NE_ERR_INVALID_ARGUMENT);
  ne_clustering* clustering = nullptr;
  REQUIRE(ne_cluster_run(loaded, &co, &clustering) == NE_OK);
  const auto k = ne_clustering_k(clustering);
  CHECK(k >= 2);
  CHECK(std::fabs(ne_clustering_asw(clustering)) <= 1.0);
  CHECK(ne_clustering_label(clustering, 0) < k);
  for (const char* name : {"clusters.csv", "asw.csv", "dendrogram.txt", "distances.csv"}) {
    const auto p = (dir / name).string();
    if (std::string(name) == "clusters.csv") CHECK(ne_clustering_write_assignments(clustering, p.c_str()) == NE_OK);
    if (std::string(name) == "asw.csv") CHECK(ne_clustering_write_curve(clustering, p.c_str()) == NE_OK);
    if (std::string(name) == "dendrogram.txt") CHECK(ne_clustering_write_dendrogram(clustering, p.c_str()) == NE_OK);
    if (std::string(name) == "distances.csv") CHECK(ne_clustering_write_distances(clustering, p.c_str()) == NE_OK);
    CHECK(fs::file_size(p) > 0);
  }

  ne_stats* stats = nullptr;
  REQUIRE(ne_stats_compute(net, events, &stats) == NE_OK);
  CHECK(ne_stats_write_counts(stats, (dir / "counts.csv").string().c_str()) == NE_OK);
  CHECK(ne_stats_write_activity(stats, (dir / "activity.csv").string().c_str()) == NE_OK);
  CHECK(ne_stats_write_regressions(stats, 0.05, (dir / "reg.json").string().c_str()) == NE_OK);
  CHECK(ne_stats_write_regressions(stats, 2.0, (dir / "reg.json").string().c_str()) ==
        NE_ERR_INVALID_ARGUMENT);
  CHECK(ne_stats_regression_count(stats) == 0);  // two intervals are too few

  ne_stats_free(stats);
  ne_clustering_free(clustering);
  ne_profile_free(loaded);
  ne_profile_free(profile);
  ne_events_free(reloaded);
  ne_events_free(events);
  ne_network_free(net);
}

TEST_CASE("temporal loading through the C interface") {
  const auto dir = scratch_dir("temporal");
  const auto path = (dir / "edges.txt").string();
  std::ofstream(path) << "a b 100\nb c 112\nc c 113\n";
  ne_slice_options so{};
  so.length = 10;
  so.overlap = 5;
  ne_network* net = nullptr;
  // An origin of 0 adds empty windows ahead of the first edge.
  so.has_origin = 1;
  so.origin = 0;
  REQUIRE(ne_network_load_temporal(path.c_str(), &so, &net) == NE_OK);
  CHECK(ne_network_slice_count(net) > 3);
  ne_network_free(net);
  so.has_origin = 0;
  REQUIRE(ne_network_load_temporal(path.c_str(), &so, &net) == NE_OK);
  CHECK(ne_network_slice_count(net) == 3);
  CHECK(ne_network_dropped_self_loops(net) == 1);
  CHECK(ne_network_edge_count(net) == 3);
  const auto out = (dir / "slices.txt").string();
  REQUIRE(ne_network_write_presliced(net, out.c_str()) == NE_OK);
  CHECK(slurp(out) == "0 a b\n1 b c\n2 b c\n");
  ne_network_free(net);

  so.overlap = 10;
  CHECK(ne_network_load_temporal(path.c_str(), &so, &net) == NE_ERR_INVALID_ARGUMENT);

  std::ofstream(path) << "a a 1\nb b 2\n";
  so.overlap = 0;
  CHECK(ne_network_load_temporal(path.c_str(), &so, &net) == NE_ERR_EMPTY_NETWORK);
  CHECK(net == nullptr);
}

TEST_CASE("errors are reported with codes and messages") {
  ne_network* net = nullptr;
  CHECK(ne_network_load_presliced("/nonexistent/file", &net) == NE_ERR_IO);
  CHECK(net == nullptr);
  CHECK(std::string(ne_last_error()).find("/nonexistent/file") != std::string::npos);
  CHECK(ne_network_load_presliced(nullptr, &net) == NE_ERR_INVALID_ARGUMENT);
  CHECK(ne_network_load_presliced(fixture().c_str(), nullptr) == NE_ERR_INVALID_ARGUMENT);
  CHECK(ne_events_build(nullptr, 1, nullptr) == NE_ERR_INVALID_ARGUMENT);

  const auto dir = scratch_dir("errors");
  const auto bad = (dir / "bad.txt").string();
  std::ofstream(bad) << "0 a b\n2 a c\n";
  CHECK(ne_network_load_presliced(bad.c_str(), &net) == NE_ERR_LOAD);
  CHECK(std::string(ne_last_error()).find("bad.txt") != std::string::npos);
  std::ofstream(bad) << "a b x\n";
  ne_slice_options so{};
  so.length = 5;
  CHECK(ne_network_load_temporal(bad.c_str(), &so, &net) == NE_ERR_PARSE);
  CHECK(std::string(ne_last_error()).find("line 1") != std::string::npos);

  REQUIRE(ne_network_load_presliced(fixture().c_str(), &net) == NE_OK);
  CHECK(ne_network_write_presliced(net, "/nonexistent/dir/out.txt") == NE_ERR_IO);
  ne_network_free(net);
}
