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

#include "neighevo/pattern_mining.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>

#include "neighevo/detail/text_format.hpp"
#include "neighevo/error.hpp"

namespace neighevo {

std::strong_ordering compare_patterns(std::span<const Itemset> a,
                                      std::span<const Itemset> b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

bool ranks_before(const SequentialPattern& a, const SequentialPattern& b) {
  if (a.support_count != b.support_count) return a.support_count > b.support_count;
  if (a.length() != b.length()) return a.length() > b.length();
  return compare_patterns(a.itemsets, b.itemsets) < 0;
}

std::size_t min_support_count(double min_sup, std::size_t total_nodes) {
  const double raw = std::ceil(min_sup * static_cast<double>(total_nodes) - 1e-9);
  return raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
}

void MiningConfig::validate() const {
  if (mode == Mode::kClosed) {
    if (min_sup && !(*min_sup > 0.0 && *min_sup <= 1.0))
      throw Error(ErrorCode::kInvalidArgument, "min_sup must lie in (0, 1]");
    if (!(scan_step > 0.0 && scan_step < 1.0))
      throw Error(ErrorCode::kInvalidArgument, "scan step must lie in (0, 1)");
  } else {
    if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
    if (min_length == 0)
      throw Error(ErrorCode::kInvalidArgument, "min_length must be positive");
  }
}

namespace {

constexpr unsigned kAlphabet = 6;

// Itemsets of every sequence plus suffix unions for quick S-extension tests.
struct Corpus {
  std::vector<std::vector<std::uint8_t>> items;
  std::vector<std::vector<std::uint8_t>> suffix;  // suffix[s][p] = OR of items[s][p..]

  explicit Corpus(const SequenceDatabase& db) {
    for (const auto& seq : db.sequences()) {
      std::vector<std::uint8_t> row;
      row.reserve(seq.entries.size());
      for (const auto& e : seq.entries) row.push_back(e.itemset.bits());
      std::vector<std::uint8_t> suf(row.size() + 1, 0);
      for (std::size_t p = row.size(); p-- > 0;) suf[p] = suf[p + 1] | row[p];
      items.push_back(std::move(row));
      suffix.push_back(std::move(suf));
    }
  }
};

// Sequences supporting a pattern, each with every position at which the
// pattern's last itemset can close an embedding.
struct Projection {
  std::vector<std::uint32_t> seq;
  std::vector<std::uint32_t> offsets{0};
  std::vector<std::uint32_t> pos;

  std::size_t support() const noexcept { return seq.size(); }
  std::uint32_t first(std::size_t i) const noexcept { return pos[offsets[i]]; }
  std::span<const std::uint32_t> positions(std::size_t i) const noexcept {
    return {pos.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
  void close_sequence(std::uint32_t s, std::size_t start) {
    if (pos.size() == start) return;
    seq.push_back(s);
    offsets.push_back(static_cast<std::uint32_t>(pos.size()));
  }
};

// Depth-first pattern growth. The visitor sees every pattern whose support
// reaches visitor.threshold() (re-read before each child) and that
// visitor.worth() accepts.
template <typename Visitor>
class Grower {
 public:
  Grower(const Corpus& corpus, Visitor& visitor) : corpus_(corpus), visitor_(visitor) {}

  void run() {
    std::array<std::size_t, kAlphabet> counts{};
    for (const auto& suf : corpus_.suffix)
      for (unsigned x = 0; x < kAlphabet; ++x) counts[x] += (suf[0] >> x) & 1u;
    for (unsigned x = 0; x < kAlphabet; ++x) {
      if (counts[x] < visitor_.threshold()) continue;
      Projection proj;
      const auto bit = static_cast<std::uint8_t>(1u << x);
      for (std::uint32_t s = 0; s < corpus_.items.size(); ++s) {
        const std::size_t start = proj.pos.size();
        for (std::uint32_t p = 0; p < corpus_.items[s].size(); ++p)
          if (corpus_.items[s][p] & bit) proj.pos.push_back(p);
        proj.close_sequence(s, start);
      }
      pattern_.push_back(Itemset(bit));
      if (visitor_.worth(pattern_, proj)) explore(proj);
      pattern_.pop_back();
    }
  }

 private:
  void explore(const Projection& proj) {
    visitor_.visit(pattern_, proj);

    std::array<std::size_t, kAlphabet> i_count{}, s_count{};
    const auto last = pattern_.back();
    const unsigned above = static_cast<unsigned>(last.last()) + 1;
    for (std::size_t i = 0; i < proj.support(); ++i) {
      const auto& row = corpus_.items[proj.seq[i]];
      std::uint8_t here = 0;
      for (auto p : proj.positions(i)) here |= row[p];
      const std::uint8_t later = corpus_.suffix[proj.seq[i]][proj.first(i) + 1];
      for (unsigned x = above; x < kAlphabet; ++x) i_count[x] += (here >> x) & 1u;
      for (unsigned x = 0; x < kAlphabet; ++x) s_count[x] += (later >> x) & 1u;
    }

    for (unsigned x = above; x < kAlphabet; ++x) {
      if (i_count[x] < visitor_.threshold()) continue;
      const auto bit = static_cast<std::uint8_t>(1u << x);
      Projection child;
      for (std::size_t i = 0; i < proj.support(); ++i) {
        const auto& row = corpus_.items[proj.seq[i]];
        const std::size_t start = child.pos.size();
        for (auto p : proj.positions(i))
          if (row[p] & bit) child.pos.push_back(p);
        child.close_sequence(proj.seq[i], start);
      }
      const Itemset saved = pattern_.back();
      pattern_.back() = Itemset(static_cast<std::uint8_t>(saved.bits() | bit));
      if (visitor_.worth(pattern_, child)) explore(child);
      pattern_.back() = saved;
    }

    for (unsigned x = 0; x < kAlphabet; ++x) {
      if (s_count[x] < visitor_.threshold()) continue;
      const auto bit = static_cast<std::uint8_t>(1u << x);
      Projection child;
      for (std::size_t i = 0; i < proj.support(); ++i) {
        const auto& row = corpus_.items[proj.seq[i]];
        const std::size_t start = child.pos.size();
        for (std::uint32_t q = proj.first(i) + 1; q < row.size(); ++q)
          if (row[q] & bit) child.pos.push_back(q);
        child.close_sequence(proj.seq[i], start);
      }
      pattern_.push_back(Itemset(bit));
      if (visitor_.worth(pattern_, child)) explore(child);
      pattern_.pop_back();
    }
  }

  const Corpus& corpus_;
  Visitor& visitor_;
  Pattern pattern_;
};

std::string pattern_key(std::span<const Itemset> pattern) {
  std::string key;
  key.reserve(pattern.size());
  for (auto h : pattern) key.push_back(static_cast<char>(h.bits()));
  return key;
}

struct CollectAll {
  std::size_t min_count;
  std::size_t total;
  std::vector<SequentialPattern> found;

  std::size_t threshold() const { return min_count; }
  bool worth(const Pattern&, const Projection&) const { return true; }
  void visit(const Pattern& p, const Projection& proj) {
    found.push_back({p, proj.support(),
                     static_cast<double>(proj.support()) / static_cast<double>(total),
                     std::nullopt});
  }
};

std::vector<SequentialPattern> all_frequent(const SequenceDatabase& db, double min_sup) {
  if (!(min_sup > 0.0 && min_sup <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "min_sup must lie in (0, 1]");
  if (db.total_nodes() == 0) return {};
  Corpus corpus(db);
  CollectAll visitor{min_support_count(min_sup, db.total_nodes()), db.total_nodes(), {}};
  Grower<CollectAll>(corpus, visitor).run();
  return std::move(visitor.found);
}

void sort_ranked(std::vector<SequentialPattern>& patterns) {
  std::sort(patterns.begin(), patterns.end(), ranks_before);
}

// A pattern is closed iff no single-item extension keeps its support: any
// equal-support super-sequence is reachable through such extensions, each
// of which has support squeezed between the two.
bool has_equal_support_extension(
    const SequentialPattern& p,
    const std::unordered_map<std::string, std::size_t>& support_of) {
  Pattern probe = p.itemsets;
  auto matches = [&] {
    auto it = support_of.find(pattern_key(probe));
    return it != support_of.end() && it->second == p.support_count;
  };
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const Itemset saved = probe[i];
    for (auto k : kAllEventKinds) {
      if (saved.contains(k)) continue;
      probe[i] = saved;
      probe[i].insert(k);
      if (matches()) return true;
    }
    probe[i] = saved;
  }
  for (std::size_t i = 0; i <= p.itemsets.size(); ++i) {
    for (auto k : kAllEventKinds) {
      probe = p.itemsets;
      probe.insert(probe.begin() + static_cast<std::ptrdiff_t>(i), Itemset{k});
      if (matches()) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<SequentialPattern> mine_frequent(const SequenceDatabase& db, double min_sup) {
  auto found = all_frequent(db, min_sup);
  sort_ranked(found);
  return found;
}

std::vector<SequentialPattern> mine_closed(const SequenceDatabase& db, double min_sup) {
  auto frequent = all_frequent(db, min_sup);
  std::unordered_map<std::string, std::size_t> support_of;
  support_of.reserve(frequent.size());
  for (const auto& p : frequent) support_of.emplace(pattern_key(p.itemsets), p.support_count);

  std::vector<SequentialPattern> closed;
  for (auto& p : frequent)
    if (!has_equal_support_extension(p, support_of)) closed.push_back(std::move(p));
  sort_ranked(closed);
  return closed;
}

namespace {

struct TopK {
  std::size_t k;
  std::size_t min_length;
  std::size_t floor_count;
  std::size_t total;
  const Corpus* corpus;
  std::set<SequentialPattern, decltype(&ranks_before)> best{&ranks_before};

  std::size_t threshold() const {
    if (best.size() < k) return floor_count;
    return std::max(floor_count, std::prev(best.end())->support_count);
  }

  // Upper bound on the support of this pattern or any descendant that is
  // long enough: a supporting sequence needs room for the missing itemsets
  // after the earliest closing position of the current last itemset.
  bool worth(const Pattern& p, const Projection& proj) const {
    if (p.size() >= min_length) return true;
    const std::size_t missing = min_length - p.size();
    std::size_t room = 0;
    for (std::size_t i = 0; i < proj.support(); ++i) {
      const std::size_t len = corpus->items[proj.seq[i]].size();
      if (len - 1 - proj.first(i) >= missing) ++room;
    }
    return room >= threshold();
  }

  void visit(const Pattern& p, const Projection& proj) {
    if (p.size() < min_length || proj.support() < threshold()) return;
    SequentialPattern candidate{p, proj.support(),
                                static_cast<double>(proj.support()) /
                                    static_cast<double>(total),
                                std::nullopt};
    if (best.size() < k) {
      best.insert(std::move(candidate));
    } else if (ranks_before(candidate, *std::prev(best.end()))) {
      best.erase(std::prev(best.end()));
      best.insert(std::move(candidate));
    }
  }
};

}  // namespace

std::vector<SequentialPattern> mine_topk_longest(const SequenceDatabase& db,
                                                 std::size_t k,
                                                 std::size_t min_length,
                                                 double min_sup_floor) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (min_length == 0)
    throw Error(ErrorCode::kInvalidArgument, "min_length must be positive");
  if (min_sup_floor < 0.0 || min_sup_floor > 1.0)
    throw Error(ErrorCode::kInvalidArgument, "support floor must lie in [0, 1]");
  if (db.total_nodes() == 0) return {};
  Corpus corpus(db);
  TopK visitor{k, min_length,
               min_sup_floor > 0.0 ? min_support_count(min_sup_floor, db.total_nodes()) : 1,
               db.total_nodes(), &corpus};
  Grower<TopK>(corpus, visitor).run();
  return {visitor.best.begin(), visitor.best.end()};
}

std::vector<ScanStep> min_sup_scan(const SequenceDatabase& db, double scan_step) {
  constexpr double kScanFloor = 0.1;
  if (!(scan_step > 0.0 && scan_step < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "scan step must lie in (0, 1)");
  std::vector<ScanStep> steps;
  for (std::size_t i = 0;; ++i) {
    // Rounded so that repeated subtraction does not drift (0.7 stays 0.7).
    const double threshold =
        std::round((1.0 - static_cast<double>(i) * scan_step) * 1e9) / 1e9;
    if (threshold < kScanFloor - 1e-9) break;
    steps.push_back({threshold, mine_closed(db, threshold)});
    if (!steps.back().patterns.empty()) break;
  }
  return steps;
}

void attach_growth_rates(std::vector<SequentialPattern>& patterns,
                         const SequenceDatabase& full,
                         std::span<const NodeId> cluster) {
  for (auto& p : patterns) {
    try {
      p.growth_rate = std::optional<double>(growth_rate(full, p.itemsets, cluster));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUndefinedGrowth) throw;
      p.growth_rate = std::optional<double>{};
    }
  }
}

void write_patterns_json(std::ostream& out, std::span<const SequentialPattern> patterns) {
  if (patterns.empty()) {
    out << "[]\n";
    return;
  }
  out << "[\n";
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& p = patterns[i];
    out << "  {\"pattern\":\"" << pattern_to_string(p.itemsets)
        << "\",\"count\":" << p.support_count
        << ",\"rate\":" << detail::format_double(p.support_rate);
    if (p.growth_rate) {
      out << ",\"growth_rate\":";
      if (!*p.growth_rate)
        out << "null";
      else if (std::isinf(**p.growth_rate))
        out << "\"inf\"";
      else
        out << detail::format_double(**p.growth_rate);
    }
    out << '}' << (i + 1 < patterns.size() ? ",\n" : "\n");
  }
  out << "]\n";
}

}  // namespace neighevo
