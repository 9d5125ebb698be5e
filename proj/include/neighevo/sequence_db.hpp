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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neighevo/events.hpp"

namespace neighevo {

// A sequence of itemsets; as a mining pattern every itemset is non-empty.
using Pattern = std::vector<Itemset>;

// "(B,D)(E)"
std::string pattern_to_string(std::span<const Itemset> pattern);
// Inverse of pattern_to_string; also accepts "<...>" around the itemsets.
Pattern parse_pattern(std::string_view text);

struct SequenceEntry {
  std::uint32_t interval = 0;
  Itemset itemset;

  friend bool operator==(const SequenceEntry&, const SequenceEntry&) = default;
};

// Event-free intervals are omitted, so intervals are strictly increasing and
// every itemset is non-empty.
struct NodeSequence {
  NodeId node = 0;
  std::vector<SequenceEntry> entries;

  Pattern itemsets() const;
  friend bool operator==(const NodeSequence&, const NodeSequence&) = default;
};

class SequenceDatabase {
 public:
  SequenceDatabase() = default;
  // total_nodes is the support denominator and must be at least the number
  // of sequences given.
  SequenceDatabase(std::size_t total_nodes, std::vector<NodeSequence> sequences);

  std::size_t total_nodes() const noexcept { return total_nodes_; }
  std::span<const NodeSequence> sequences() const noexcept { return sequences_; }

  // Sub-database over the given nodes; its denominator is their count.
  SequenceDatabase restrict_to(std::span<const NodeId> nodes) const;

 private:
  std::size_t total_nodes_ = 0;
  std::vector<NodeSequence> sequences_;
};

SequenceDatabase to_sequence_db(const EventDatabase& events);
SequenceDatabase to_sequence_db(const EventProfile& profile);

// True iff some strictly increasing embedding maps every itemset of
// `needle` into a superset in `haystack`.
bool is_subsequence(std::span<const Itemset> needle,
                    std::span<const Itemset> haystack);
bool is_subsequence(std::span<const Itemset> needle, const NodeSequence& haystack);

struct Support {
  std::size_t count = 0;
  double rate = 0.0;
};

Support support(const SequenceDatabase& db, std::span<const Itemset> pattern);

// Ratio of the pattern's support rate inside `cluster` to its rate over the
// remaining nodes of db. +inf when only the cluster supports it; throws
// kUndefinedGrowth when nobody does.
double growth_rate(const SequenceDatabase& db, std::span<const Itemset> pattern,
                   std::span<const NodeId> cluster);

struct CountSeries {
  NodeId node = 0;
  std::vector<std::uint32_t> counts;
};

CountSeries event_count_series(const EventDatabase& events, NodeId v);
CountSeries event_count_series(const EventProfile& profile, NodeId v);

// {"node":"v1","entries":[[0,"BMSEC"],[1,"BDC"]]}
void write_sequence_db_jsonl(std::ostream& out, const SequenceDatabase& db,
                             std::span<const std::string> labels);

}  // namespace neighevo
