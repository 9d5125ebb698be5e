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

/* C interface of the neighevo shared library. Every call returns an
 * ne_status; on failure ne_last_error() holds a message for the calling
 * thread. Objects are opaque and released with their *_free function, which
 * accepts NULL. */

#ifndef NEIGHEVO_NEIGHEVO_H_
#define NEIGHEVO_NEIGHEVO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(NEIGHEVO_BUILDING_LIBRARY)
#define NE_API __attribute__((visibility("default")))
#else
#define NE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ne_status {
  NE_OK = 0,
  NE_ERR_INVALID_ARGUMENT = 1,
  NE_ERR_PARSE = 2,
  NE_ERR_LOAD = 3,
  NE_ERR_EMPTY_NETWORK = 4,
  NE_ERR_INDEX = 5,
  NE_ERR_CONTRACT = 6,
  NE_ERR_UNDEFINED_GROWTH = 7,
  NE_ERR_DEGENERATE_REGRESSION = 8,
  NE_ERR_SIZE_GUARD = 9,
  NE_ERR_IO = 10,
  NE_ERR_INTERNAL = 11
} ne_status;

typedef struct ne_network ne_network;
typedef struct ne_events ne_events;
typedef struct ne_profile ne_profile;
typedef struct ne_patterns ne_patterns;
typedef struct ne_clustering ne_clustering;
typedef struct ne_stats ne_stats;

NE_API const char* ne_version(void);
NE_API const char* ne_status_string(ne_status status);
/* Message of the last failed call on this thread; "" if none. */
NE_API const char* ne_last_error(void);

/* ---- networks ---------------------------------------------------------- */

typedef struct ne_slice_options {
  int64_t origin;
  int has_origin; /* 0: start at the earliest timestamp */
  int64_t length;
  int64_t overlap;
  size_t count;
  int has_count; /* 0: as many slices as the data needs */
} ne_slice_options;

/* Reads a `<src> <dst> <time>` edge list and slices it. */
NE_API ne_status ne_network_load_temporal(const char* path, const ne_slice_options* options,
                                          ne_network** out);
NE_API ne_status ne_network_load_presliced(const char* path, ne_network** out);
NE_API ne_status ne_network_write_presliced(const ne_network* net, const char* path);
NE_API size_t ne_network_node_count(const ne_network* net);
NE_API size_t ne_network_slice_count(const ne_network* net);
NE_API size_t ne_network_edge_count(const ne_network* net);
/* Self-loops skipped while loading. */
NE_API size_t ne_network_dropped_self_loops(const ne_network* net);
NE_API const char* ne_network_label(const ne_network* net, size_t node);
NE_API void ne_network_free(ne_network* net);

/* ---- events ------------------------------------------------------------ */

NE_API ne_status ne_events_build(const ne_network* net, unsigned threads, ne_events** out);
/* Reads an events CSV written for `net`. */
NE_API ne_status ne_events_load_csv(const ne_network* net, const char* path, ne_events** out);
NE_API ne_status ne_events_write_csv(const ne_events* events, const ne_network* net,
                                     const char* path);
NE_API size_t ne_events_record_count(const ne_events* events);
/* Records of one kind, given by its letter (B, D, M, S, E or C). */
NE_API size_t ne_events_kind_count(const ne_events* events, char kind);
NE_API void ne_events_free(ne_events* events);

/* Per node and interval: event itemset and record count. */
NE_API ne_status ne_profile_from_events(const ne_events* events, const ne_network* net,
                                        ne_profile** out);
NE_API ne_status ne_profile_load_jsonl(const char* path, ne_profile** out);
NE_API ne_status ne_profile_write_jsonl(const ne_profile* profile, const char* path);
NE_API ne_status ne_profile_write_sequences(const ne_profile* profile, const char* path);
NE_API size_t ne_profile_node_count(const ne_profile* profile);
NE_API size_t ne_profile_interval_count(const ne_profile* profile);
NE_API const char* ne_profile_label(const ne_profile* profile, size_t node);
NE_API void ne_profile_free(ne_profile* profile);

/* ---- pattern mining ---------------------------------------------------- */

typedef enum ne_mining_mode {
  NE_MINE_CLOSED = 0, /* fixed min_sup, or a descending scan without one */
  NE_MINE_TOPK = 1
} ne_mining_mode;

typedef struct ne_mining_options {
  ne_mining_mode mode;
  double min_sup;
  int has_min_sup;
  double scan_step;
  size_t k;
  size_t min_length;
} ne_mining_options;

NE_API void ne_mining_options_init(ne_mining_options* options);

/* Mines the whole profile, or only the listed nodes when cluster_size > 0;
 * cluster-scoped results carry growth rates against the remaining nodes. */
NE_API ne_status ne_patterns_mine(const ne_profile* profile, const ne_mining_options* options,
                                  const char* const* cluster, size_t cluster_size,
                                  ne_patterns** out);
NE_API size_t ne_patterns_count(const ne_patterns* patterns);
/* Threshold the scan settled on; negative when no scan ran. */
NE_API double ne_patterns_scan_threshold(const ne_patterns* patterns);
NE_API ne_status ne_patterns_write_json(const ne_patterns* patterns, const char* path);
NE_API void ne_patterns_free(ne_patterns* patterns);

/* ---- clustering -------------------------------------------------------- */

typedef enum ne_linkage { NE_LINK_SINGLE = 0, NE_LINK_COMPLETE = 1, NE_LINK_AVERAGE = 2 } ne_linkage;

typedef struct ne_cluster_options {
  ne_linkage linkage;
  size_t k_max;
  size_t dtw_window;
  int has_dtw_window;
  unsigned threads;
} ne_cluster_options;

NE_API void ne_cluster_options_init(ne_cluster_options* options);
NE_API ne_status ne_parse_linkage(const char* name, ne_linkage* out);

NE_API ne_status ne_cluster_run(const ne_profile* profile, const ne_cluster_options* options,
                                ne_clustering** out);
NE_API size_t ne_clustering_k(const ne_clustering* clustering);
NE_API double ne_clustering_asw(const ne_clustering* clustering);
NE_API size_t ne_clustering_label(const ne_clustering* clustering, size_t node);
/* node,cluster,silhouette */
NE_API ne_status ne_clustering_write_assignments(const ne_clustering* clustering,
                                                 const char* path);
/* k,asw */
NE_API ne_status ne_clustering_write_curve(const ne_clustering* clustering, const char* path);
NE_API ne_status ne_clustering_write_dendrogram(const ne_clustering* clustering,
                                                const char* path);
NE_API ne_status ne_clustering_write_distances(const ne_clustering* clustering,
                                               const char* path);
NE_API void ne_clustering_free(ne_clustering* clustering);

/* ---- statistics -------------------------------------------------------- */

NE_API ne_status ne_stats_compute(const ne_network* net, const ne_events* events,
                                  ne_stats** out);
/* interval,kind,nodes,records */
NE_API ne_status ne_stats_write_counts(const ne_stats* stats, const char* path);
/* slice,alive,density */
NE_API ne_status ne_stats_write_activity(const ne_stats* stats, const char* path);
NE_API ne_status ne_stats_write_regressions(const ne_stats* stats, double alpha,
                                            const char* path);
NE_API size_t ne_stats_regression_count(const ne_stats* stats);
NE_API void ne_stats_free(ne_stats* stats);

#ifdef __cplusplus
}
#endif

#endif /* NEIGHEVO_NEIGHEVO_H_ */
