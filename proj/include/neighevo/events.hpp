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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "neighevo/temporal_graph.hpp"

namespace neighevo {

// Canonical order B < D < M < S < E < C is the enumerator order.
enum class EventKind : std::uint8_t {
  kBirth,
  kDeath,
  kMerge,
  kSplit,
  kExpansion,
  kContraction,
};

inline constexpr std::array<EventKind, 6> kAllEventKinds = {
    EventKind::kBirth, EventKind::kDeath,     EventKind::kMerge,
    EventKind::kSplit, EventKind::kExpansion, EventKind::kContraction};

char kind_letter(EventKind kind) noexcept;
std::optional<EventKind> kind_from_letter(char letter) noexcept;

// Birth<->Death, Merge<->Split, Expansion<->Contraction.
EventKind dual(EventKind kind) noexcept;

enum class ComponentSide : std::uint8_t { kPrev, kNext };

// Birth, merge and expansion describe a component at t+1 (a matrix column);
// the others a component at t (a row).
constexpr ComponentSide side_of(EventKind kind) noexcept {
  return kind == EventKind::kBirth || kind == EventKind::kMerge ||
                 kind == EventKind::kExpansion
             ? ComponentSide::kNext
             : ComponentSide::kPrev;
}

// Set of event kinds, stored as a 6-bit mask.
class Itemset {
 public:
  constexpr Itemset() = default;
  constexpr explicit Itemset(std::uint8_t bits) : bits_(bits & 0x3F) {}
  Itemset(std::initializer_list<EventKind> kinds) {
    for (auto k : kinds) insert(k);
  }

  // Accepts letters in any order, e.g. "BDE"; throws on unknown letters.
  static Itemset from_letters(std::string_view letters);

  constexpr std::uint8_t bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool contains(EventKind k) const noexcept {
    return bits_ & (1u << static_cast<unsigned>(k));
  }
  constexpr bool subset_of(Itemset other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr void insert(EventKind k) noexcept {
    bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(k));
  }
  std::size_t size() const noexcept;
  // Highest kind in canonical order; undefined on an empty set.
  EventKind last() const noexcept;

  // "BDE" form, canonical order.
  std::string letters() const;
  // "(B,D,E)" form.
  std::string to_string() const;

  friend constexpr bool operator==(Itemset, Itemset) = default;
  // Lexicographic on the canonical kind lists.
  friend std::strong_ordering operator<=>(Itemset a, Itemset b) noexcept;

 private:
  std::uint8_t bits_ = 0;
};

// The ego-components of a node at one slice, ordered by smallest member.
struct NeighborhoodPartition {
  NodeId node = 0;
  std::size_t slice = 0;
  std::vector<std::vector<NodeId>> components;

  std::size_t component_count() const noexcept { return components.size(); }
  std::size_t member_count() const noexcept;
};

NeighborhoodPartition ego_components(const DynamicNetwork& net, NodeId v,
                                     std::size_t t);

// Confusion matrix between the partitions of one node at t and t+1:
// cell (i, j) = |C_t^i intersect C_{t+1}^j|. Keeps the component sizes
// of both sides, which the event rules need.
class EventMatrix {
 public:
  EventMatrix() = default;
  EventMatrix(NodeId node, std::size_t interval,
              std::vector<std::uint32_t> row_sizes,
              std::vector<std::uint32_t> col_sizes,
              std::vector<std::uint32_t> cells);

  NodeId node() const noexcept { return node_; }
  std::size_t interval() const noexcept { return interval_; }
  std::size_t rows() const noexcept { return row_sizes_.size(); }
  std::size_t cols() const noexcept { return col_sizes_.size(); }
  std::uint32_t at(std::size_t i, std::size_t j) const noexcept {
    return cells_[i * cols() + j];
  }
  std::uint32_t row_size(std::size_t i) const noexcept { return row_sizes_[i]; }
  std::uint32_t col_size(std::size_t j) const noexcept { return col_sizes_[j]; }
  std::uint64_t row_sum(std::size_t i) const noexcept;
  std::uint64_t col_sum(std::size_t j) const noexcept;
  std::uint64_t total() const noexcept;

  std::vector<std::vector<std::uint32_t>> to_nested() const;

 private:
  NodeId node_ = 0;
  std::size_t interval_ = 0;
  std::vector<std::uint32_t> row_sizes_;
  std::vector<std::uint32_t> col_sizes_;
  std::vector<std::uint32_t> cells_;
};

// Throws kContract unless the partitions belong to the same node at
// consecutive slices.
EventMatrix event_matrix(const NeighborhoodPartition& at_t,
                         const NeighborhoodPartition& at_next);

bool partitions_identical(const EventMatrix& m);

struct EventRecord {
  NodeId node = 0;
  std::uint32_t interval = 0;
  EventKind kind = EventKind::kBirth;
  std::uint32_t component = 0;       // column for B/M/E, row for D/S/C
  std::uint32_t component_size = 0;  // size of that component

  ComponentSide side() const noexcept { return side_of(kind); }

  friend auto operator<=>(const EventRecord& a, const EventRecord& b) {
    return std::tie(a.node, a.interval, a.kind, a.component) <=>
           std::tie(b.node, b.interval, b.kind, b.component);
  }
  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// Records ordered by (kind, component).
std::vector<EventRecord> detect_events(const EventMatrix& m);

// All events of a dynamic network, indexed by (node, interval).
class EventDatabase {
 public:
  EventDatabase() = default;
  // Sorts the records and validates them against the shape.
  EventDatabase(std::size_t node_count, std::size_t slice_count,
                std::vector<EventRecord> records);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t slice_count() const noexcept { return slice_count_; }
  std::size_t interval_count() const noexcept {
    return slice_count_ ? slice_count_ - 1 : 0;
  }

  std::span<const EventRecord> records() const noexcept { return records_; }
  std::span<const EventRecord> records(NodeId v, std::size_t interval) const;
  Itemset itemset(NodeId v, std::size_t interval) const;
  std::uint32_t count(NodeId v, std::size_t interval) const;
  bool empty() const noexcept { return records_.empty(); }

  friend bool operator==(const EventDatabase&, const EventDatabase&) = default;

 private:
  std::size_t cell(NodeId v, std::size_t interval) const;

  std::size_t node_count_ = 0;
  std::size_t slice_count_ = 0;
  std::vector<EventRecord> records_;
  std::vector<std::size_t> offsets_;
  std::vector<Itemset> itemsets_;
};

struct BuildOptions {
  unsigned threads = 1;
};

// Runs detection for every node and consecutive slice pair. Requires
// theta >= 2. Output does not depend on the thread count.
EventDatabase build_event_db(const DynamicNetwork& net,
                             const BuildOptions& options = {});

// Per (node, interval) event-type itemset and record count: everything the
// mining and clustering stages consume.
struct EventProfile {
  std::vector<std::string> labels;
  std::size_t interval_count = 0;
  std::vector<Itemset> itemsets;      // node-major, interval_count per node
  std::vector<std::uint32_t> counts;  // same layout

  std::size_t node_count() const noexcept { return labels.size(); }
  Itemset itemset(NodeId v, std::size_t t) const {
    return itemsets[static_cast<std::size_t>(v) * interval_count + t];
  }
  std::uint32_t count(NodeId v, std::size_t t) const {
    return counts[static_cast<std::size_t>(v) * interval_count + t];
  }

  friend bool operator==(const EventProfile&, const EventProfile&) = default;
};

EventProfile make_profile(const EventDatabase& db,
                          std::span<const std::string> labels);

// CSV: node,interval,kind,component_side,component_index,component_size
void write_events_csv(std::ostream& out, const EventDatabase& db,
                      std::span<const std::string> labels);
EventDatabase read_events_csv(std::istream& in, const DynamicNetwork& net);

// JSON lines, one object per (node, interval), event-free pairs included:
// {"node":"v1","interval":0,"itemset":"BMSEC","count":6}
void write_events_jsonl(std::ostream& out, const EventProfile& profile);
EventProfile read_events_jsonl(std::istream& in);

}  // namespace neighevo
