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

#include "neighevo/neighevo.h"

#include <algorithm>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <unordered_map>

#include "neighevo/clustering.hpp"
#include "neighevo/error.hpp"
#include "neighevo/events.hpp"
#include "neighevo/evolution_stats.hpp"
#include "neighevo/pattern_mining.hpp"
#include "neighevo/sequence_db.hpp"
#include "neighevo/temporal_graph.hpp"

struct ne_network {
  neighevo::DynamicNetwork net;
  std::size_t dropped = 0;
};

struct ne_events {
  neighevo::EventDatabase db;
};

struct ne_profile {
  neighevo::EventProfile profile;
};

struct ne_patterns {
  std::vector<neighevo::SequentialPattern> patterns;
  double scan_threshold = -1.0;
};

struct ne_clustering {
  std::vector<std::string> labels;
  neighevo::DistanceMatrix distances;
  neighevo::Dendrogram tree;
  neighevo::CutSelection selection;
};

struct ne_stats {
  neighevo::EventCountTable counts;
  std::vector<neighevo::SliceActivity> activity;
  std::vector<neighevo::NamedRegression> regressions;
};

namespace {

using neighevo::Error;
using neighevo::ErrorCode;

thread_local std::string last_error;

ne_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return NE_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse: return NE_ERR_PARSE;
    case ErrorCode::kLoad: return NE_ERR_LOAD;
    case ErrorCode::kEmptyNetwork: return NE_ERR_EMPTY_NETWORK;
    case ErrorCode::kIndex: return NE_ERR_INDEX;
    case ErrorCode::kContract: return NE_ERR_CONTRACT;
    case ErrorCode::kUndefinedGrowth: return NE_ERR_UNDEFINED_GROWTH;
    case ErrorCode::kDegenerateRegression: return NE_ERR_DEGENERATE_REGRESSION;
    case ErrorCode::kSizeGuard: return NE_ERR_SIZE_GUARD;
    case ErrorCode::kIo: return NE_ERR_IO;
    case ErrorCode::kInternal: return NE_ERR_INTERNAL;
  }
  return NE_ERR_INTERNAL;
}

template <typename F>
ne_status guarded(F&& body) noexcept {
  try {
    body();
    last_error.clear();
    return NE_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NE_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NE_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return NE_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

std::ifstream open_in(const char* path) {
  require(path, "path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, std::string("cannot open ") + path);
  return in;
}

template <typename F>
void write_file(const char* path, F&& writer) {
  require(path, "path");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, std::string("cannot create ") + path);
  writer(out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, std::string("write failed: ") + path);
}

// Prefixes loader errors with the file they came from.
template <typename F>
auto with_path(const char* path, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(path) + ": " + e.what());
  }
}

}  // namespace

extern "C" {

const char* ne_version(void) { return "0.1.0"; }

const char* ne_status_string(ne_status status) {
  switch (status) {
    case NE_OK: return "ok";
    case NE_ERR_INVALID_ARGUMENT: return neighevo::to_string(ErrorCode::kInvalidArgument);
    case NE_ERR_PARSE: return neighevo::to_string(ErrorCode::kParse);
    case NE_ERR_LOAD: return neighevo::to_string(ErrorCode::kLoad);
    case NE_ERR_EMPTY_NETWORK: return neighevo::to_string(ErrorCode::kEmptyNetwork);
    case NE_ERR_INDEX: return neighevo::to_string(ErrorCode::kIndex);
    case NE_ERR_CONTRACT: return neighevo::to_string(ErrorCode::kContract);
    case NE_ERR_UNDEFINED_GROWTH: return neighevo::to_string(ErrorCode::kUndefinedGrowth);
    case NE_ERR_DEGENERATE_REGRESSION:
      return neighevo::to_string(ErrorCode::kDegenerateRegression);
    case NE_ERR_SIZE_GUARD: return neighevo::to_string(ErrorCode::kSizeGuard);
    case NE_ERR_IO: return neighevo::to_string(ErrorCode::kIo);
    case NE_ERR_INTERNAL: return neighevo::to_string(ErrorCode::kInternal);
  }
  return "unknown status";
}

const char* ne_last_error(void) { return last_error.c_str(); }

// ---- networks

ne_status ne_network_load_temporal(const char* path, const ne_slice_options* options,
                                   ne_network** out) {
  return guarded([&] {
    require(options, "options");
    require(out, "out");
    *out = nullptr;
    auto in = open_in(path);
    auto list = with_path(path, [&] { return neighevo::parse_temporal_edges(in); });
    neighevo::SliceConfig cfg;
    cfg.length = options->length;
    cfg.overlap = options->overlap;
    if (options->has_count) cfg.count = options->count;
    if (options->has_origin) {
      cfg.origin = options->origin;
    } else {
      if (list.edges.empty())
        throw Error(ErrorCode::kEmptyNetwork, std::string(path) + ": no temporal edges");
      cfg.origin = std::min_element(list.edges.begin(), list.edges.end(),
                                    [](const auto& a, const auto& b) { return a.time < b.time; })
                       ->time;
    }
    auto handle = std::make_unique<ne_network>();
    handle->net = neighevo::build_slices(list.edges, cfg);
    handle->dropped = list.dropped_self_loops;
    *out = handle.release();
  });
}

ne_status ne_network_load_presliced(const char* path, ne_network** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto in = open_in(path);
    auto handle = std::make_unique<ne_network>();
    handle->net = with_path(path, [&] { return neighevo::load_presliced(in); });
    *out = handle.release();
  });
}

ne_status ne_network_write_presliced(const ne_network* net, const char* path) {
  return guarded([&] {
    require(net, "network");
    write_file(path, [&](std::ostream& o) { neighevo::write_presliced(o, net->net); });
  });
}

size_t ne_network_node_count(const ne_network* net) { return net ? net->net.node_count() : 0; }
size_t ne_network_slice_count(const ne_network* net) { return net ? net->net.slice_count() : 0; }
size_t ne_network_edge_count(const ne_network* net) {
  return net ? net->net.total_edge_count() : 0;
}
size_t ne_network_dropped_self_loops(const ne_network* net) { return net ? net->dropped : 0; }

const char* ne_network_label(const ne_network* net, size_t node) {
  if (!net || node >= net->net.node_count()) return nullptr;
  return net->net.labels()[node].c_str();
}

void ne_network_free(ne_network* net) { delete net; }

// ---- events

ne_status ne_events_build(const ne_network* net, unsigned threads, ne_events** out) {
  return guarded([&] {
    require(net, "network");
    require(out, "out");
    *out = nullptr;
    auto handle = std::make_unique<ne_events>();
    handle->db = neighevo::build_event_db(net->net, {std::max(1u, threads)});
    *out = handle.release();
  });
}

ne_status ne_events_load_csv(const ne_network* net, const char* path, ne_events** out) {
  return guarded([&] {
    require(net, "network");
    require(out, "out");
    *out = nullptr;
    auto in = open_in(path);
    auto handle = std::make_unique<ne_events>();
    handle->db = with_path(path, [&] { return neighevo::read_events_csv(in, net->net); });
    *out = handle.release();
  });
}

ne_status ne_events_write_csv(const ne_events* events, const ne_network* net,
                              const char* path) {
  return guarded([&] {
    require(events, "events");
    require(net, "network");
    write_file(path, [&](std::ostream& o) {
      neighevo::write_events_csv(o, events->db, net->net.labels());
    });
  });
}

size_t ne_events_record_count(const ne_events* events) {
  return events ? events->db.records().size() : 0;
}

size_t ne_events_kind_count(const ne_events* events, char kind) {
  if (!events) return 0;
  const auto k = neighevo::kind_from_letter(kind);
  if (!k) return 0;
  return static_cast<size_t>(std::count_if(events->db.records().begin(),
                                           events->db.records().end(),
                                           [&](const auto& r) { return r.kind == *k; }));
}

void ne_events_free(ne_events* events) { delete events; }

ne_status ne_profile_from_events(const ne_events* events, const ne_network* net,
                                 ne_profile** out) {
  return guarded([&] {
    require(events, "events");
    require(net, "network");
    require(out, "out");
    *out = nullptr;
    auto handle = std::make_unique<ne_profile>();
    handle->profile = neighevo::make_profile(events->db, net->net.labels());
    *out = handle.release();
  });
}

ne_status ne_profile_load_jsonl(const char* path, ne_profile** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto in = open_in(path);
    auto handle = std::make_unique<ne_profile>();
    handle->profile = with_path(path, [&] { return neighevo::read_events_jsonl(in); });
    *out = handle.release();
  });
}

ne_status ne_profile_write_jsonl(const ne_profile* profile, const char* path) {
  return guarded([&] {
    require(profile, "profile");
    write_file(path, [&](std::ostream& o) { neighevo::write_events_jsonl(o, profile->profile); });
  });
}

ne_status ne_profile_write_sequences(const ne_profile* profile, const char* path) {
  return guarded([&] {
    require(profile, "profile");
    const auto db = neighevo::to_sequence_db(profile->profile);
    write_file(path, [&](std::ostream& o) {
      neighevo::write_sequence_db_jsonl(o, db, profile->profile.labels);
    });
  });
}

size_t ne_profile_node_count(const ne_profile* profile) {
  return profile ? profile->profile.node_count() : 0;
}
size_t ne_profile_interval_count(const ne_profile* profile) {
  return profile ? profile->profile.interval_count : 0;
}
const char* ne_profile_label(const ne_profile* profile, size_t node) {
  if (!profile || node >= profile->profile.node_count()) return nullptr;
  return profile->profile.labels[node].c_str();
}
void ne_profile_free(ne_profile* profile) { delete profile; }

// ---- pattern mining

void ne_mining_options_init(ne_mining_options* options) {
  if (!options) return;
  const neighevo::MiningConfig defaults;
  options->mode = NE_MINE_CLOSED;
  options->min_sup = 0.0;
  options->has_min_sup = 0;
  options->scan_step = defaults.scan_step;
  options->k = defaults.k;
  options->min_length = defaults.min_length;
}

ne_status ne_patterns_mine(const ne_profile* profile, const ne_mining_options* options,
                           const char* const* cluster, size_t cluster_size,
                           ne_patterns** out) {
  return guarded([&] {
    require(profile, "profile");
    require(options, "options");
    require(out, "out");
    *out = nullptr;
    neighevo::MiningConfig cfg;
    switch (options->mode) {
      case NE_MINE_CLOSED: cfg.mode = neighevo::MiningConfig::Mode::kClosed; break;
      case NE_MINE_TOPK: cfg.mode = neighevo::MiningConfig::Mode::kTopK; break;
      default: throw Error(ErrorCode::kInvalidArgument, "unknown mining mode");
    }
    if (options->has_min_sup) cfg.min_sup = options->min_sup;
    cfg.scan_step = options->scan_step;
    cfg.k = options->k;
    cfg.min_length = options->min_length;
    cfg.validate();

    const auto full = neighevo::to_sequence_db(profile->profile);
    std::vector<neighevo::NodeId> members;
    if (cluster_size > 0) {
      require(cluster, "cluster");
      std::unordered_map<std::string_view, neighevo::NodeId> index;
      const auto& labels = profile->profile.labels;
      for (std::size_t i = 0; i < labels.size(); ++i)
        index.emplace(labels[i], static_cast<neighevo::NodeId>(i));
      for (size_t i = 0; i < cluster_size; ++i) {
        require(cluster[i], "cluster label");
        const auto it = index.find(cluster[i]);
        if (it == index.end())
          throw Error(ErrorCode::kInvalidArgument,
                      std::string("cluster node '") + cluster[i] + "' is not in the profile");
        members.push_back(it->second);
      }
    }
    const auto db = members.empty() ? full : full.restrict_to(members);

    auto handle = std::make_unique<ne_patterns>();
    if (cfg.mode == neighevo::MiningConfig::Mode::kTopK) {
      handle->patterns =
          neighevo::mine_topk_longest(db, cfg.k, cfg.min_length, cfg.min_sup.value_or(0.0));
    } else if (cfg.min_sup) {
      handle->patterns = neighevo::mine_closed(db, *cfg.min_sup);
    } else {
      auto steps = neighevo::min_sup_scan(db, cfg.scan_step);
      if (!steps.empty()) {
        handle->scan_threshold = steps.back().min_sup;
        handle->patterns = std::move(steps.back().patterns);
      }
    }
    if (!members.empty()) neighevo::attach_growth_rates(handle->patterns, full, members);
    *out = handle.release();
  });
}

size_t ne_patterns_count(const ne_patterns* patterns) {
  return patterns ? patterns->patterns.size() : 0;
}
double ne_patterns_scan_threshold(const ne_patterns* patterns) {
  return patterns ? patterns->scan_threshold : -1.0;
}
ne_status ne_patterns_write_json(const ne_patterns* patterns, const char* path) {
  return guarded([&] {
    require(patterns, "patterns");
    write_file(path,
               [&](std::ostream& o) { neighevo::write_patterns_json(o, patterns->patterns); });
  });
}
void ne_patterns_free(ne_patterns* patterns) { delete patterns; }

// ---- clustering

void ne_cluster_options_init(ne_cluster_options* options) {
  if (!options) return;
  options->linkage = NE_LINK_AVERAGE;
  options->k_max = 15;
  options->dtw_window = 0;
  options->has_dtw_window = 0;
  options->threads = 1;
}

ne_status ne_parse_linkage(const char* name, ne_linkage* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    switch (neighevo::parse_linkage(name)) {
      case neighevo::Linkage::kSingle: *out = NE_LINK_SINGLE; break;
      case neighevo::Linkage::kComplete: *out = NE_LINK_COMPLETE; break;
      case neighevo::Linkage::kAverage: *out = NE_LINK_AVERAGE; break;
    }
  });
}

ne_status ne_cluster_run(const ne_profile* profile, const ne_cluster_options* options,
                         ne_clustering** out) {
  return guarded([&] {
    require(profile, "profile");
    require(options, "options");
    require(out, "out");
    *out = nullptr;
    neighevo::Linkage linkage;
    switch (options->linkage) {
      case NE_LINK_SINGLE: linkage = neighevo::Linkage::kSingle; break;
      case NE_LINK_COMPLETE: linkage = neighevo::Linkage::kComplete; break;
      case NE_LINK_AVERAGE: linkage = neighevo::Linkage::kAverage; break;
      default: throw Error(ErrorCode::kInvalidArgument, "unknown linkage");
    }
    const auto& p = profile->profile;
    std::vector<neighevo::CountSeries> series;
    series.reserve(p.node_count());
    for (std::size_t v = 0; v < p.node_count(); ++v)
      series.push_back(neighevo::event_count_series(p, static_cast<neighevo::NodeId>(v)));
    neighevo::DtwOptions dtw;
    if (options->has_dtw_window) dtw.window = options->dtw_window;

    auto handle = std::make_unique<ne_clustering>();
    handle->labels = p.labels;
    handle->distances = neighevo::distance_matrix(series, dtw, std::max(1u, options->threads));
    handle->tree = neighevo::agglomerate(handle->distances, linkage);
    handle->selection =
        neighevo::select_best_cut(handle->tree, handle->distances, options->k_max);
    *out = handle.release();
  });
}

size_t ne_clustering_k(const ne_clustering* c) { return c ? c->selection.k : 0; }
double ne_clustering_asw(const ne_clustering* c) { return c ? c->selection.report.average : 0.0; }
size_t ne_clustering_label(const ne_clustering* c, size_t node) {
  if (!c || node >= c->selection.labels.size()) return static_cast<size_t>(-1);
  return c->selection.labels[node];
}

ne_status ne_clustering_write_assignments(const ne_clustering* c, const char* path) {
  return guarded([&] {
    require(c, "clustering");
    write_file(path,
               [&](std::ostream& o) { neighevo::write_clusters_csv(o, c->labels, c->selection); });
  });
}

ne_status ne_clustering_write_curve(const ne_clustering* c, const char* path) {
  return guarded([&] {
    require(c, "clustering");
    write_file(path, [&](std::ostream& o) { neighevo::write_asw_curve_csv(o, c->selection); });
  });
}

ne_status ne_clustering_write_dendrogram(const ne_clustering* c, const char* path) {
  return guarded([&] {
    require(c, "clustering");
    write_file(path, [&](std::ostream& o) { neighevo::write_dendrogram(o, c->tree, c->labels); });
  });
}

ne_status ne_clustering_write_distances(const ne_clustering* c, const char* path) {
  return guarded([&] {
    require(c, "clustering");
    write_file(path,
               [&](std::ostream& o) { neighevo::write_distance_csv(o, c->distances, c->labels); });
  });
}

void ne_clustering_free(ne_clustering* c) { delete c; }

// ---- statistics

ne_status ne_stats_compute(const ne_network* net, const ne_events* events, ne_stats** out) {
  return guarded([&] {
    require(net, "network");
    require(events, "events");
    require(out, "out");
    *out = nullptr;
    if (events->db.node_count() != net->net.node_count() ||
        events->db.slice_count() != net->net.slice_count())
      throw Error(ErrorCode::kContract, "events were not built from this network");
    auto handle = std::make_unique<ne_stats>();
    handle->counts = neighevo::per_interval_counts(events->db);
    handle->activity = neighevo::alive_and_density(net->net);
    handle->regressions = neighevo::activity_regressions(handle->counts, handle->activity);
    *out = handle.release();
  });
}

ne_status ne_stats_write_counts(const ne_stats* stats, const char* path) {
  return guarded([&] {
    require(stats, "stats");
    write_file(path, [&](std::ostream& o) { neighevo::write_counts_csv(o, stats->counts); });
  });
}

ne_status ne_stats_write_activity(const ne_stats* stats, const char* path) {
  return guarded([&] {
    require(stats, "stats");
    write_file(path, [&](std::ostream& o) { neighevo::write_activity_csv(o, stats->activity); });
  });
}

ne_status ne_stats_write_regressions(const ne_stats* stats, double alpha, const char* path) {
  return guarded([&] {
    require(stats, "stats");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
    write_file(path, [&](std::ostream& o) {
      neighevo::write_regression_json(o, stats->regressions, alpha);
    });
  });
}

size_t ne_stats_regression_count(const ne_stats* stats) {
  return stats ? stats->regressions.size() : 0;
}

void ne_stats_free(ne_stats* stats) { delete stats; }

}  // extern "C"
