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

// Exhaustive reference miners. Deliberately naive: candidates are every
// sub-sequence of every node sequence, supports come from a backtracking
// embedding search, and closure is a pairwise super-sequence check.

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "neighevo/error.hpp"
#include "neighevo/pattern_mining.hpp"

namespace neighevo {

namespace {

using Bits = std::vector<std::uint8_t>;

bool embeds_from(const Bits& needle, std::size_t i, const Bits& hay, std::size_t j) {
  if (i == needle.size()) return true;
  for (std::size_t q = j; q < hay.size(); ++q)
    if ((needle[i] & hay[q]) == needle[i] && embeds_from(needle, i + 1, hay, q + 1))
      return true;
  return false;
}

bool embeds(const Bits& needle, const Bits& hay) { return embeds_from(needle, 0, hay, 0); }

std::vector<Bits> sequences_of(const SequenceDatabase& db, const BruteForceLimits& limits) {
  if (db.sequences().size() > limits.max_sequences)
    throw Error(ErrorCode::kSizeGuard,
                "brute force refuses databases with more than " +
                    std::to_string(limits.max_sequences) + " sequences (got " +
                    std::to_string(db.sequences().size()) + ")");
  std::vector<Bits> out;
  std::size_t candidates = 0;
  for (const auto& s : db.sequences()) {
    if (s.entries.size() > limits.max_sequence_length)
      throw Error(ErrorCode::kSizeGuard,
                  "brute force refuses sequences longer than " +
                      std::to_string(limits.max_sequence_length) + " itemsets");
    Bits row;
    std::size_t product = 1;
    for (const auto& e : s.entries) {
      row.push_back(e.itemset.bits());
      product *= std::size_t{1} << e.itemset.size();
    }
    candidates += product;
    if (candidates > limits.max_candidates)
      throw Error(ErrorCode::kSizeGuard,
                  "brute force candidate space exceeds " +
                      std::to_string(limits.max_candidates) + " sub-sequences");
    out.push_back(std::move(row));
  }
  return out;
}

void subsequences(const Bits& seq, std::size_t p, Bits& current, std::set<Bits>& out) {
  if (p == seq.size()) {
    if (!current.empty()) out.insert(current);
    return;
  }
  subsequences(seq, p + 1, current, out);
  // Every non-empty sub-itemset of position p.
  for (std::uint8_t sub = seq[p]; sub != 0; sub = static_cast<std::uint8_t>((sub - 1) & seq[p])) {
    current.push_back(sub);
    subsequences(seq, p + 1, current, out);
    current.pop_back();
  }
}

struct Scored {
  Bits bits;
  std::size_t count;
};

std::vector<Scored> score_all(const SequenceDatabase& db, const BruteForceLimits& limits) {
  const auto seqs = sequences_of(db, limits);
  std::set<Bits> candidates;
  Bits scratch;
  for (const auto& s : seqs) subsequences(s, 0, scratch, candidates);
  std::vector<Scored> out;
  for (const auto& c : candidates) {
    std::size_t count = 0;
    for (const auto& s : seqs) count += embeds(c, s);
    out.push_back({c, count});
  }
  return out;
}

SequentialPattern to_pattern(const Scored& s, std::size_t total) {
  SequentialPattern p;
  for (auto b : s.bits) p.itemsets.push_back(Itemset(b));
  p.support_count = s.count;
  p.support_rate = static_cast<double>(s.count) / static_cast<double>(total);
  return p;
}

}  // namespace

std::vector<SequentialPattern> brute_force_frequent(const SequenceDatabase& db,
                                                    double min_sup,
                                                    const BruteForceLimits& limits) {
  if (!(min_sup > 0.0 && min_sup <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "min_sup must lie in (0, 1]");
  if (db.total_nodes() == 0) return {};
  const std::size_t min_count = min_support_count(min_sup, db.total_nodes());
  std::vector<SequentialPattern> out;
  for (const auto& s : score_all(db, limits))
    if (s.count >= min_count) out.push_back(to_pattern(s, db.total_nodes()));
  std::sort(out.begin(), out.end(), ranks_before);
  return out;
}

std::vector<SequentialPattern> brute_force_patterns(const SequenceDatabase& db,
                                                    double min_sup,
                                                    const BruteForceLimits& limits) {
  if (!(min_sup > 0.0 && min_sup <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "min_sup must lie in (0, 1]");
  if (db.total_nodes() == 0) return {};
  const std::size_t min_count = min_support_count(min_sup, db.total_nodes());
  std::vector<Scored> frequent;
  for (auto& s : score_all(db, limits))
    if (s.count >= min_count) frequent.push_back(std::move(s));

  // A pattern has an equally supported proper super-pattern iff one of its
  // one-item extensions does: the extension is still contained in that
  // super-pattern, and support cannot grow along the way.
  std::map<Bits, std::size_t> counts;
  for (const auto& s : frequent) counts.emplace(s.bits, s.count);
  auto same_count = [&](const Bits& b, std::size_t count) {
    const auto it = counts.find(b);
    return it != counts.end() && it->second == count;
  };
  std::vector<SequentialPattern> out;
  for (const auto& a : frequent) {
    bool closed = true;
    Bits ext = a.bits;
    for (std::size_t p = 0; p < ext.size() && closed; ++p)
      for (unsigned k = 0; k < 6 && closed; ++k) {
        const auto bit = static_cast<std::uint8_t>(1u << k);
        if (ext[p] & bit) continue;
        ext[p] |= bit;
        if (same_count(ext, a.count)) closed = false;
        ext[p] = a.bits[p];
      }
    for (std::size_t p = 0; p <= a.bits.size() && closed; ++p)
      for (unsigned k = 0; k < 6 && closed; ++k) {
        Bits longer = a.bits;
        longer.insert(longer.begin() + static_cast<std::ptrdiff_t>(p),
                      static_cast<std::uint8_t>(1u << k));
        if (same_count(longer, a.count)) closed = false;
      }
    if (closed) out.push_back(to_pattern(a, db.total_nodes()));
  }
  std::sort(out.begin(), out.end(), ranks_before);
  return out;
}

std::vector<SequentialPattern> brute_force_topk(const SequenceDatabase& db, std::size_t k,
                                                std::size_t min_length,
                                                double min_sup_floor,
                                                const BruteForceLimits& limits) {
  if (db.total_nodes() == 0) return {};
  const std::size_t floor_count =
      min_sup_floor > 0.0 ? min_support_count(min_sup_floor, db.total_nodes()) : 1;
  std::vector<SequentialPattern> out;
  for (const auto& s : score_all(db, limits))
    if (s.count >= floor_count && s.bits.size() >= min_length)
      out.push_back(to_pattern(s, db.total_nodes()));
  std::sort(out.begin(), out.end(), ranks_before);
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace neighevo
