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

#include <algorithm>
#include <bit>
#include <limits>
#include <memory>

#include "neighevo/detail/parallel.hpp"
#include "neighevo/error.hpp"
#include "neighevo/events.hpp"

namespace neighevo {

// ---------------------------------------------------------------------------
// Kinds and itemsets

char kind_letter(EventKind kind) noexcept {
  static constexpr char kLetters[] = {'B', 'D', 'M', 'S', 'E', 'C'};
  return kLetters[static_cast<unsigned>(kind)];
}

std::optional<EventKind> kind_from_letter(char letter) noexcept {
  switch (letter) {
    case 'B': return EventKind::kBirth;
    case 'D': return EventKind::kDeath;
    case 'M': return EventKind::kMerge;
    case 'S': return EventKind::kSplit;
    case 'E': return EventKind::kExpansion;
    case 'C': return EventKind::kContraction;
    default: return std::nullopt;
  }
}

EventKind dual(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::kBirth: return EventKind::kDeath;
    case EventKind::kDeath: return EventKind::kBirth;
    case EventKind::kMerge: return EventKind::kSplit;
    case EventKind::kSplit: return EventKind::kMerge;
    case EventKind::kExpansion: return EventKind::kContraction;
    case EventKind::kContraction: return EventKind::kExpansion;
  }
  return kind;
}

Itemset Itemset::from_letters(std::string_view letters) {
  Itemset set;
  for (char c : letters) {
    auto kind = kind_from_letter(c);
    if (!kind)
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("unknown event kind letter '") + c + "'");
    set.insert(*kind);
  }
  return set;
}

std::size_t Itemset::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(bits_));
}

EventKind Itemset::last() const noexcept {
  return static_cast<EventKind>(std::bit_width(bits_) - 1);
}

std::string Itemset::letters() const {
  std::string out;
  for (auto k : kAllEventKinds)
    if (contains(k)) out += kind_letter(k);
  return out;
}

std::string Itemset::to_string() const {
  std::string out = "(";
  for (auto k : kAllEventKinds) {
    if (!contains(k)) continue;
    if (out.size() > 1) out += ',';
    out += kind_letter(k);
  }
  out += ')';
  return out;
}

std::strong_ordering operator<=>(Itemset a, Itemset b) noexcept {
  for (auto k : kAllEventKinds) {
    const bool in_a = a.contains(k), in_b = b.contains(k);
    if (in_a == in_b) continue;
    // First position where the sorted kind lists differ: the list holding k
    // sorts first unless the other list has no kinds left after k.
    const auto above = static_cast<std::uint8_t>(
        ~((1u << (static_cast<unsigned>(k) + 1)) - 1));
    if (in_a)
      return Itemset(b.bits_ & above).empty() ? std::strong_ordering::greater
                                              : std::strong_ordering::less;
    return Itemset(a.bits_ & above).empty() ? std::strong_ordering::less
                                            : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t NeighborhoodPartition::member_count() const noexcept {
  std::size_t total = 0;
  for (const auto& c : components) total += c.size();
  return total;
}

// ---------------------------------------------------------------------------
// Ego-components and event matrices

namespace {

// Per-node scratch labels that reset in O(1) by bumping an epoch.
class NodeMarker {
 public:
  explicit NodeMarker(std::size_t n) : stamp_(n, 0), value_(n, 0) {}

  void reset() {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  void set(NodeId v, std::uint32_t value) {
    stamp_[v] = epoch_;
    value_[v] = value;
  }
  bool has(NodeId v) const { return stamp_[v] == epoch_; }
  std::uint32_t get(NodeId v) const { return value_[v]; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> value_;
  std::uint32_t epoch_ = 1;
};

struct Scratch {
  explicit Scratch(std::size_t n) : local(n), column(n) {}
  NodeMarker local;
  NodeMarker column;
  std::vector<char> visited;
  std::vector<NodeId> queue;
};

// Breadth-first search restricted to N_t(v); v and its links are never
// entered since v is not marked.
void partition_into(const DynamicNetwork& net, NodeId v, std::size_t t,
                    Scratch& s, NeighborhoodPartition& out) {
  out.node = v;
  out.slice = t;
  out.components.clear();
  const auto nb = net.neighbors(v, t);
  s.local.reset();
  for (std::size_t i = 0; i < nb.size(); ++i)
    s.local.set(nb[i], static_cast<std::uint32_t>(i));
  s.visited.assign(nb.size(), 0);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (s.visited[i]) continue;
    s.visited[i] = 1;
    s.queue.clear();
    s.queue.push_back(nb[i]);
    for (std::size_t head = 0; head < s.queue.size(); ++head) {
      for (NodeId w : net.neighbors(s.queue[head], t)) {
        if (!s.local.has(w)) continue;
        auto& seen = s.visited[s.local.get(w)];
        if (seen) continue;
        seen = 1;
        s.queue.push_back(w);
      }
    }
    std::sort(s.queue.begin(), s.queue.end());
    out.components.emplace_back(s.queue.begin(), s.queue.end());
  }
}

EventMatrix matrix_with(const NeighborhoodPartition& a,
                        const NeighborhoodPartition& b, NodeMarker& column) {
  std::vector<std::uint32_t> rows(a.components.size()), cols(b.components.size());
  column.reset();
  for (std::size_t j = 0; j < b.components.size(); ++j) {
    cols[j] = static_cast<std::uint32_t>(b.components[j].size());
    for (NodeId x : b.components[j]) column.set(x, static_cast<std::uint32_t>(j));
  }
  std::vector<std::uint32_t> cells(rows.size() * cols.size(), 0);
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    rows[i] = static_cast<std::uint32_t>(a.components[i].size());
    for (NodeId x : a.components[i])
      if (column.has(x)) ++cells[i * cols.size() + column.get(x)];
  }
  return EventMatrix(a.node, a.slice, std::move(rows), std::move(cols),
                     std::move(cells));
}

void check_contract(const NeighborhoodPartition& a,
                    const NeighborhoodPartition& b) {
  if (a.node != b.node)
    throw Error(ErrorCode::kContract,
                "event matrix needs partitions of the same node");
  if (b.slice != a.slice + 1)
    throw Error(ErrorCode::kContract,
                "event matrix needs partitions of consecutive slices");
}

}  // namespace

NeighborhoodPartition ego_components(const DynamicNetwork& net, NodeId v,
                                     std::size_t t) {
  net.neighbors(v, t);  // range checks
  Scratch scratch(net.node_count());
  NeighborhoodPartition out;
  partition_into(net, v, t, scratch, out);
  return out;
}

EventMatrix::EventMatrix(NodeId node, std::size_t interval,
                         std::vector<std::uint32_t> row_sizes,
                         std::vector<std::uint32_t> col_sizes,
                         std::vector<std::uint32_t> cells)
    : node_(node),
      interval_(interval),
      row_sizes_(std::move(row_sizes)),
      col_sizes_(std::move(col_sizes)),
      cells_(std::move(cells)) {
  if (cells_.size() != row_sizes_.size() * col_sizes_.size())
    throw Error(ErrorCode::kContract, "event matrix cell count mismatch");
}

std::uint64_t EventMatrix::row_sum(std::size_t i) const noexcept {
  std::uint64_t sum = 0;
  for (std::size_t j = 0; j < cols(); ++j) sum += at(i, j);
  return sum;
}

std::uint64_t EventMatrix::col_sum(std::size_t j) const noexcept {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < rows(); ++i) sum += at(i, j);
  return sum;
}

std::uint64_t EventMatrix::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : cells_) sum += c;
  return sum;
}

std::vector<std::vector<std::uint32_t>> EventMatrix::to_nested() const {
  std::vector<std::vector<std::uint32_t>> out(rows(), std::vector<std::uint32_t>(cols()));
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) out[i][j] = at(i, j);
  return out;
}

EventMatrix event_matrix(const NeighborhoodPartition& at_t,
                         const NeighborhoodPartition& at_next) {
  check_contract(at_t, at_next);
  NodeId max_id = 0;
  for (const auto* p : {&at_t, &at_next})
    for (const auto& c : p->components)
      for (NodeId x : c) max_id = std::max(max_id, x);
  NodeMarker column(static_cast<std::size_t>(max_id) + 1);
  return matrix_with(at_t, at_next, column);
}

bool partitions_identical(const EventMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) nonzero += m.at(i, j) != 0;
    if (nonzero != 1) return false;
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) nonzero += m.at(i, j) != 0;
    if (nonzero != 1) return false;
  }
  // The mass counts neighbours present on both sides, so
  // |N_t union N_t+1| = |N_t| + |N_t+1| - mass.
  std::uint64_t before = 0, after = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) before += m.row_size(i);
  for (std::size_t j = 0; j < m.cols(); ++j) after += m.col_size(j);
  const std::uint64_t mass = m.total();
  return mass == before + after - mass;
}

std::vector<EventRecord> detect_events(const EventMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> row_sum(rows, 0), col_sum(cols, 0);
  std::vector<std::uint32_t> row_nz(rows, 0), col_nz(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto c = m.at(i, j);
      if (c == 0) continue;
      row_sum[i] += c;
      col_sum[j] += c;
      ++row_nz[i];
      ++col_nz[j];
    }
  }

  std::vector<EventRecord> out;
  const auto node = m.node();
  const auto interval = static_cast<std::uint32_t>(m.interval());
  auto emit = [&](EventKind kind, std::size_t index, std::uint32_t size) {
    out.push_back({node, interval, kind, static_cast<std::uint32_t>(index), size});
  };
  for (std::size_t j = 0; j < cols; ++j)
    if (col_sum[j] == 0 && m.col_size(j) > 0) emit(EventKind::kBirth, j, m.col_size(j));
  for (std::size_t i = 0; i < rows; ++i)
    if (row_sum[i] == 0 && m.row_size(i) > 0) emit(EventKind::kDeath, i, m.row_size(i));
  for (std::size_t j = 0; j < cols; ++j)
    if (col_nz[j] > 1) emit(EventKind::kMerge, j, m.col_size(j));
  for (std::size_t i = 0; i < rows; ++i)
    if (row_nz[i] > 1) emit(EventKind::kSplit, i, m.row_size(i));
  for (std::size_t j = 0; j < cols; ++j)
    if (col_sum[j] > 0 && col_sum[j] < m.col_size(j))
      emit(EventKind::kExpansion, j, m.col_size(j));
  for (std::size_t i = 0; i < rows; ++i)
    if (row_sum[i] > 0 && row_sum[i] < m.row_size(i))
      emit(EventKind::kContraction, i, m.row_size(i));
  return out;
}

// ---------------------------------------------------------------------------
// Event database

EventDatabase::EventDatabase(std::size_t node_count, std::size_t slice_count,
                             std::vector<EventRecord> records)
    : node_count_(node_count),
      slice_count_(slice_count),
      records_(std::move(records)) {
  if (!std::is_sorted(records_.begin(), records_.end()))
    std::sort(records_.begin(), records_.end());
  const std::size_t intervals = interval_count();
  offsets_.assign(node_count_ * intervals + 1, 0);
  itemsets_.assign(node_count_ * intervals, Itemset{});
  for (std::size_t r = 0; r < records_.size(); ++r) {
    const auto& rec = records_[r];
    if (rec.node >= node_count_ || rec.interval >= intervals)
      throw Error(ErrorCode::kContract,
                  "event record outside the database shape");
    if (r > 0 && records_[r - 1] == rec)
      throw Error(ErrorCode::kContract, "duplicate event record");
    const std::size_t c = cell(rec.node, rec.interval);
    ++offsets_[c + 1];
    itemsets_[c].insert(rec.kind);
  }
  for (std::size_t c = 0; c + 1 < offsets_.size(); ++c)
    offsets_[c + 1] += offsets_[c];
}

std::size_t EventDatabase::cell(NodeId v, std::size_t interval) const {
  if (v >= node_count_ || interval >= interval_count())
    throw Error(ErrorCode::kIndex, "(node, interval) outside the database");
  return static_cast<std::size_t>(v) * interval_count() + interval;
}

std::span<const EventRecord> EventDatabase::records(NodeId v,
                                                    std::size_t interval) const {
  const std::size_t c = cell(v, interval);
  return std::span<const EventRecord>(records_).subspan(
      offsets_[c], offsets_[c + 1] - offsets_[c]);
}

Itemset EventDatabase::itemset(NodeId v, std::size_t interval) const {
  return itemsets_[cell(v, interval)];
}

std::uint32_t EventDatabase::count(NodeId v, std::size_t interval) const {
  const std::size_t c = cell(v, interval);
  return static_cast<std::uint32_t>(offsets_[c + 1] - offsets_[c]);
}

EventDatabase build_event_db(const DynamicNetwork& net,
                             const BuildOptions& options) {
  if (net.slice_count() < 2)
    throw Error(ErrorCode::kInvalidArgument,
                "event detection needs at least two time slices");
  const std::size_t n = net.node_count();
  const std::size_t theta = net.slice_count();
  std::vector<std::vector<EventRecord>> per_node(n);

  // One scratch per worker; nodes are independent so nothing else is shared.
  std::vector<std::unique_ptr<Scratch>> scratch(std::max(1u, options.threads));
  detail::parallel_for(
      n, options.threads,
      [&](std::size_t index, unsigned worker) {
        auto& slot = scratch[worker];
        if (!slot) slot = std::make_unique<Scratch>(n);
        const auto v = static_cast<NodeId>(index);
        NeighborhoodPartition prev, next;
        partition_into(net, v, 0, *slot, prev);
        auto& out = per_node[index];
        for (std::size_t t = 0; t + 1 < theta; ++t) {
          partition_into(net, v, t + 1, *slot, next);
          const auto m = matrix_with(prev, next, slot->column);
          auto events = detect_events(m);
          out.insert(out.end(), events.begin(), events.end());
          std::swap(prev, next);
        }
      },
      16);

  std::size_t total = 0;
  for (const auto& v : per_node) total += v.size();
  std::vector<EventRecord> records;
  records.reserve(total);
  for (auto& v : per_node) records.insert(records.end(), v.begin(), v.end());
  return EventDatabase(n, theta, std::move(records));
}

}  // namespace neighevo
