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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace neighevo {

using NodeId = std::uint32_t;
using Timestamp = std::int64_t;

// Undirected link stored in canonical order (u < v).
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct TemporalEdge {
  std::string source;
  std::string target;
  Timestamp time = 0;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

struct TemporalEdgeList {
  std::vector<TemporalEdge> edges;
  std::size_t dropped_self_loops = 0;
};

// Reads `<src> <dst> <timestamp>` lines; `#` starts a comment line.
// Extra trailing fields are ignored. Self-loops are dropped and counted.
TemporalEdgeList parse_temporal_edges(std::istream& in);
void write_temporal_edges(std::ostream& out, std::span<const TemporalEdge> edges);

// Windowing of a temporal edge list. Window t covers
// [origin + t*(length - overlap), origin + t*(length - overlap) + length).
struct SliceConfig {
  Timestamp origin = 0;
  Timestamp length = 1;
  Timestamp overlap = 0;
  std::optional<std::size_t> count;

  void validate() const;
  Timestamp step() const noexcept { return length - overlap; }
  Timestamp window_start(std::size_t t) const noexcept {
    return origin + static_cast<Timestamp>(t) * step();
  }

  // Inclusive range [first, last] of uncapped window indices containing
  // time, or nullopt when time precedes the origin.
  std::optional<std::pair<std::size_t, std::size_t>> windows_containing(
      Timestamp time) const;
};

// Label ordering that compares embedded digit runs numerically, so that
// "v2" < "v10". Total order: falls back to plain comparison on ties.
bool natural_less(std::string_view a, std::string_view b) noexcept;

// A dynamic network: a fixed node universe observed over theta time slices.
// Immutable once constructed; safe to share across threads for reading.
class DynamicNetwork {
 public:
  DynamicNetwork() = default;

  // Edges are canonicalised: endpoints ordered, self-loops dropped,
  // duplicates removed. Throws on out-of-range endpoints or duplicate labels.
  DynamicNetwork(std::vector<std::string> labels,
                 std::vector<std::vector<Edge>> slices);

  // Convenience for id-based construction; labels are the decimal ids.
  static DynamicNetwork from_ids(std::size_t node_count,
                                 std::vector<std::vector<Edge>> slices);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t slice_count() const noexcept { return slices_.size(); }
  std::size_t interval_count() const noexcept {
    return slices_.empty() ? 0 : slices_.size() - 1;
  }

  const std::string& label(NodeId v) const;
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

  // Sorted neighbours of v in slice t. Throws kIndex on bad arguments.
  std::span<const NodeId> neighbors(NodeId v, std::size_t t) const;
  std::size_t degree(NodeId v, std::size_t t) const {
    return neighbors(v, t).size();
  }
  bool has_edge(std::size_t t, NodeId a, NodeId b) const;
  std::span<const Edge> edges(std::size_t t) const;
  std::size_t total_edge_count() const noexcept;

  // Same nodes, slices in reverse chronological order.
  DynamicNetwork reversed() const;

  friend bool operator==(const DynamicNetwork& a, const DynamicNetwork& b);

 private:
  struct Slice {
    std::vector<Edge> edges;
    std::vector<std::size_t> offsets;
    std::vector<NodeId> adjacency;
  };

  static Slice make_slice(std::vector<Edge> edges, std::size_t n);
  void check_slice(std::size_t t) const;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Slice> slices_;
};

DynamicNetwork build_slices(std::span<const TemporalEdge> edges,
                            const SliceConfig& cfg);

// Reads `<slice> <src> <dst>` lines. A line holding only `<slice>` declares
// a slice without links. Slice indices must be contiguous from 0.
DynamicNetwork load_presliced(std::istream& in);

// Emits slices in order, links sorted by (u, v); empty slices as a bare index.
void write_presliced(std::ostream& out, const DynamicNetwork& net);

// First-order neighbourhood of v at t (v excluded), as an owned vector.
std::vector<NodeId> neighborhood(const DynamicNetwork& net, NodeId v,
                                 std::size_t t);

}  // namespace neighevo
