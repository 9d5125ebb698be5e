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

#include "neighevo/sequence_db.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "neighevo/detail/text_format.hpp"
#include "neighevo/error.hpp"

namespace neighevo {

std::string pattern_to_string(std::span<const Itemset> pattern) {
  std::string out;
  for (auto h : pattern) out += h.to_string();
  return out;
}

Pattern parse_pattern(std::string_view text) {
  text = detail::trim(text);
  if (text.starts_with('<') && text.ends_with('>')) {
    text.remove_prefix(1);
    text.remove_suffix(1);
  }
  Pattern out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '(')
      throw Error(ErrorCode::kInvalidArgument,
                  "pattern must be a list of '(...)' itemsets");
    const auto close = text.find(')', i);
    if (close == std::string_view::npos)
      throw Error(ErrorCode::kInvalidArgument, "unterminated itemset in pattern");
    std::string letters;
    for (char c : text.substr(i + 1, close - i - 1))
      if (c != ',' && c != ' ') letters += c;
    auto h = Itemset::from_letters(letters);
    if (h.empty())
      throw Error(ErrorCode::kInvalidArgument, "empty itemset in pattern");
    out.push_back(h);
    i = close + 1;
  }
  return out;
}

Pattern NodeSequence::itemsets() const {
  Pattern out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.itemset);
  return out;
}

SequenceDatabase::SequenceDatabase(std::size_t total_nodes,
                                   std::vector<NodeSequence> sequences)
    : total_nodes_(total_nodes), sequences_(std::move(sequences)) {
  if (total_nodes_ < sequences_.size())
    throw Error(ErrorCode::kContract,
                "support denominator smaller than the number of sequences");
  for (const auto& s : sequences_) {
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
      if (s.entries[i].itemset.empty())
        throw Error(ErrorCode::kContract, "node sequence holds an empty itemset");
      if (i > 0 && s.entries[i].interval <= s.entries[i - 1].interval)
        throw Error(ErrorCode::kContract,
                    "node sequence intervals must strictly increase");
    }
  }
}

SequenceDatabase SequenceDatabase::restrict_to(std::span<const NodeId> nodes) const {
  NodeId max_id = 0;
  for (const auto& s : sequences_) max_id = std::max(max_id, s.node);
  constexpr auto kAbsent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> position(sequences_.empty() ? 0 : max_id + std::size_t{1}, kAbsent);
  for (std::size_t i = 0; i < sequences_.size(); ++i) position[sequences_[i].node] = i;

  std::vector<NodeSequence> picked;
  picked.reserve(nodes.size());
  for (NodeId v : nodes) {
    if (v >= position.size() || position[v] == kAbsent)
      throw Error(ErrorCode::kIndex,
                  "node " + std::to_string(v) + " has no sequence in the database");
    picked.push_back(sequences_[position[v]]);
  }
  const std::size_t total = picked.size();
  return SequenceDatabase(total, std::move(picked));
}

namespace {
template <typename Source>
SequenceDatabase collect(const Source& source, std::size_t n, std::size_t intervals) {
  std::vector<NodeSequence> sequences(n);
  for (NodeId v = 0; v < n; ++v) {
    sequences[v].node = v;
    for (std::size_t t = 0; t < intervals; ++t) {
      const auto h = source.itemset(v, t);
      if (!h.empty())
        sequences[v].entries.push_back({static_cast<std::uint32_t>(t), h});
    }
  }
  return SequenceDatabase(n, std::move(sequences));
}
}  // namespace

SequenceDatabase to_sequence_db(const EventDatabase& events) {
  return collect(events, events.node_count(), events.interval_count());
}

SequenceDatabase to_sequence_db(const EventProfile& profile) {
  return collect(profile, profile.node_count(), profile.interval_count);
}

bool is_subsequence(std::span<const Itemset> needle,
                    std::span<const Itemset> haystack) {
  // Matching each itemset at its earliest possible position is optimal.
  std::size_t j = 0;
  for (auto h : needle) {
    while (j < haystack.size() && !h.subset_of(haystack[j])) ++j;
    if (j == haystack.size()) return false;
    ++j;
  }
  return true;
}

bool is_subsequence(std::span<const Itemset> needle, const NodeSequence& haystack) {
  std::size_t j = 0;
  const auto& entries = haystack.entries;
  for (auto h : needle) {
    while (j < entries.size() && !h.subset_of(entries[j].itemset)) ++j;
    if (j == entries.size()) return false;
    ++j;
  }
  return true;
}

namespace {
void check_pattern(std::span<const Itemset> pattern) {
  if (pattern.empty())
    throw Error(ErrorCode::kContract, "pattern must not be empty");
  for (auto h : pattern)
    if (h.empty())
      throw Error(ErrorCode::kContract, "pattern itemsets must not be empty");
}
}  // namespace

Support support(const SequenceDatabase& db, std::span<const Itemset> pattern) {
  check_pattern(pattern);
  Support s;
  for (const auto& seq : db.sequences())
    if (is_subsequence(pattern, seq)) ++s.count;
  s.rate = db.total_nodes() ? static_cast<double>(s.count) /
                                  static_cast<double>(db.total_nodes())
                            : 0.0;
  return s;
}

double growth_rate(const SequenceDatabase& db, std::span<const Itemset> pattern,
                   std::span<const NodeId> cluster) {
  check_pattern(pattern);
  std::vector<NodeId> members(cluster.begin(), cluster.end());
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end())
    throw Error(ErrorCode::kContract, "cluster lists a node twice");
  if (members.empty() || members.size() >= db.total_nodes())
    throw Error(ErrorCode::kContract,
                "cluster must be a non-empty strict subset of the nodes");

  std::size_t inside = 0, outside = 0, found = 0;
  for (const auto& seq : db.sequences()) {
    const bool member = std::binary_search(members.begin(), members.end(), seq.node);
    found += member;
    if (!is_subsequence(pattern, seq)) continue;
    (member ? inside : outside) += 1;
  }
  if (found != members.size())
    throw Error(ErrorCode::kIndex, "cluster names a node outside the database");

  const double rate_in = static_cast<double>(inside) / static_cast<double>(members.size());
  const double rate_out = static_cast<double>(outside) /
                          static_cast<double>(db.total_nodes() - members.size());
  if (inside == 0 && outside == 0)
    throw Error(ErrorCode::kUndefinedGrowth,
                "pattern " + pattern_to_string(pattern) + " is supported by no node");
  if (outside == 0) return std::numeric_limits<double>::infinity();
  return rate_in / rate_out;
}

CountSeries event_count_series(const EventDatabase& events, NodeId v) {
  if (v >= events.node_count())
    throw Error(ErrorCode::kIndex, "node id " + std::to_string(v) + " out of range");
  CountSeries s{v, {}};
  s.counts.reserve(events.interval_count());
  for (std::size_t t = 0; t < events.interval_count(); ++t)
    s.counts.push_back(events.count(v, t));
  return s;
}

CountSeries event_count_series(const EventProfile& profile, NodeId v) {
  if (v >= profile.node_count())
    throw Error(ErrorCode::kIndex, "node id " + std::to_string(v) + " out of range");
  CountSeries s{v, {}};
  s.counts.reserve(profile.interval_count);
  for (std::size_t t = 0; t < profile.interval_count; ++t)
    s.counts.push_back(profile.count(v, t));
  return s;
}

void write_sequence_db_jsonl(std::ostream& out, const SequenceDatabase& db,
                             std::span<const std::string> labels) {
  for (const auto& seq : db.sequences()) {
    if (seq.node >= labels.size())
      throw Error(ErrorCode::kIndex, "label table too small for the database");
    out << "{\"node\":\"" << detail::json_escape(labels[seq.node])
        << "\",\"entries\":[";
    for (std::size_t i = 0; i < seq.entries.size(); ++i) {
      if (i) out << ',';
      out << '[' << seq.entries[i].interval << ",\""
          << seq.entries[i].itemset.letters() << "\"]";
    }
    out << "]}\n";
  }
}

}  // namespace neighevo
