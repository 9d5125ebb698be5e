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
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "neighevo/sequence_db.hpp"

namespace neighevo {

struct SequentialPattern {
  Pattern itemsets;
  std::size_t support_count = 0;
  double support_rate = 0.0;
  // Set only by cluster-scoped mining; nullopt inside means undefined (0/0).
  std::optional<std::optional<double>> growth_rate;

  std::size_t length() const noexcept { return itemsets.size(); }
  friend bool operator==(const SequentialPattern&, const SequentialPattern&) = default;
};

// Canonical lexicographic order over itemset lists.
std::strong_ordering compare_patterns(std::span<const Itemset> a,
                                      std::span<const Itemset> b);

// Output order: higher support, then longer, then canonical order.
bool ranks_before(const SequentialPattern& a, const SequentialPattern& b);

// Smallest support count whose rate reaches min_sup (never below 1).
std::size_t min_support_count(double min_sup, std::size_t total_nodes);

struct MiningConfig {
  enum class Mode { kClosed, kTopK };

  Mode mode = Mode::kClosed;
  // Closed mode: fixed threshold, or a descending scan when unset.
  std::optional<double> min_sup;
  double scan_step = 0.1;
  // Top-k mode.
  std::size_t k = 10;
  std::size_t min_length = 1;

  void validate() const;
};

// Closed frequent sequential patterns with rate >= min_sup.
std::vector<SequentialPattern> mine_closed(const SequenceDatabase& db, double min_sup);

// Every frequent pattern (closed or not) with rate >= min_sup.
std::vector<SequentialPattern> mine_frequent(const SequenceDatabase& db, double min_sup);

// The k best patterns of at least min_length itemsets, ranked by
// ranks_before. min_sup_floor = 0 admits any pattern supported at least once.
std::vector<SequentialPattern> mine_topk_longest(const SequenceDatabase& db,
                                                 std::size_t k,
                                                 std::size_t min_length,
                                                 double min_sup_floor = 0.0);

struct ScanStep {
  double min_sup = 0.0;
  std::vector<SequentialPattern> patterns;
};

// Runs mine_closed at 1.0, 1 - step, ... while the threshold stays at or
// above 0.1, stopping at the first non-empty result.
std::vector<ScanStep> min_sup_scan(const SequenceDatabase& db, double scan_step = 0.1);

// Exhaustive reference miners for small databases.
struct BruteForceLimits {
  std::size_t max_sequences = 16;
  std::size_t max_sequence_length = 6;
  std::size_t max_candidates = 2'000'000;
};

std::vector<SequentialPattern> brute_force_patterns(const SequenceDatabase& db,
                                                    double min_sup,
                                                    const BruteForceLimits& limits = {});
std::vector<SequentialPattern> brute_force_frequent(const SequenceDatabase& db,
                                                    double min_sup,
                                                    const BruteForceLimits& limits = {});
std::vector<SequentialPattern> brute_force_topk(const SequenceDatabase& db, std::size_t k,
                                                std::size_t min_length,
                                                double min_sup_floor = 0.0,
                                                const BruteForceLimits& limits = {});

// Fills growth_rate for patterns mined inside `cluster`, relative to the
// rest of `full`.
void attach_growth_rates(std::vector<SequentialPattern>& patterns,
                         const SequenceDatabase& full,
                         std::span<const NodeId> cluster);

// [{"pattern":"(B,D)(E)","count":3,"rate":0.5,"growth_rate":"inf"}, ...]
void write_patterns_json(std::ostream& out, std::span<const SequentialPattern> patterns);

}  // namespace neighevo
