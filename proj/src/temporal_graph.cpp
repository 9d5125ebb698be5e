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

#include "neighevo/temporal_graph.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "neighevo/detail/text_format.hpp"
#include "neighevo/error.hpp"

namespace neighevo {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kLoad: return "load error";
    case ErrorCode::kEmptyNetwork: return "empty network";
    case ErrorCode::kIndex: return "index out of range";
    case ErrorCode::kContract: return "contract violation";
    case ErrorCode::kUndefinedGrowth: return "undefined growth rate";
    case ErrorCode::kDegenerateRegression: return "degenerate regression";
    case ErrorCode::kSizeGuard: return "size guard exceeded";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

// ---------------------------------------------------------------------------
// Temporal edge lists

TemporalEdgeList parse_temporal_edges(std::istream& in) {
  TemporalEdgeList result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    auto fields = detail::split_fields(text);
    if (fields.size() < 3)
      throw ParseError(line_no, "expected '<src> <dst> <timestamp>', got '" +
                                    std::string(text) + "'");
    auto time = detail::parse_int(fields[2]);
    if (!time)
      throw ParseError(line_no, "timestamp '" + std::string(fields[2]) +
                                    "' is not an integer");
    if (fields[0] == fields[1]) {
      ++result.dropped_self_loops;
      continue;
    }
    result.edges.push_back(
        {std::string(fields[0]), std::string(fields[1]), *time});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading temporal edges");
  return result;
}

void write_temporal_edges(std::ostream& out,
                          std::span<const TemporalEdge> edges) {
  for (const auto& e : edges)
    out << e.source << ' ' << e.target << ' ' << e.time << '\n';
}

// ---------------------------------------------------------------------------
// SliceConfig

void SliceConfig::validate() const {
  if (length <= 0)
    throw Error(ErrorCode::kInvalidArgument, "slice length must be positive");
  if (overlap < 0 || overlap >= length)
    throw Error(ErrorCode::kInvalidArgument,
                "overlap must lie in [0, slice length)");
  if (count && *count == 0)
    throw Error(ErrorCode::kInvalidArgument, "slice count cap must be >= 1");
}

std::optional<std::pair<std::size_t, std::size_t>>
SliceConfig::windows_containing(Timestamp time) const {
  if (time < origin) return std::nullopt;
  const Timestamp d = time - origin;
  const Timestamp s = step();
  const Timestamp last = d / s;
  const Timestamp lower = d - length + 1;
  const Timestamp first = lower <= 0 ? 0 : (lower + s - 1) / s;
  return std::make_pair(static_cast<std::size_t>(first),
                        static_cast<std::size_t>(last));
}

// ---------------------------------------------------------------------------
// Natural label order

namespace {
bool is_digit(char c) { return c >= '0' && c <= '9'; }
}  // namespace

bool natural_less(std::string_view a, std::string_view b) noexcept {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      while (je < b.size() && is_digit(b[je])) ++je;
      std::size_t iz = i, jz = j;
      while (iz + 1 < ie && a[iz] == '0') ++iz;
      while (jz + 1 < je && b[jz] == '0') ++jz;
      const std::size_t la = ie - iz, lb = je - jz;
      if (la != lb) return la < lb;
      const int cmp = a.substr(iz, la).compare(b.substr(jz, lb));
      if (cmp != 0) return cmp < 0;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j])
        return static_cast<unsigned char>(a[i]) <
               static_cast<unsigned char>(b[j]);
      ++i;
      ++j;
    }
  }
  if ((i < a.size()) != (j < b.size())) return j < b.size();
  return a < b;
}

// ---------------------------------------------------------------------------
// DynamicNetwork

DynamicNetwork::Slice DynamicNetwork::make_slice(std::vector<Edge> edges,
                                                 std::size_t n) {
  Slice s;
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n)
      throw Error(ErrorCode::kIndex, "edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  s.offsets.assign(n + 1, 0);
  for (const auto& e : edges) {
    ++s.offsets[e.u + 1];
    ++s.offsets[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) s.offsets[i + 1] += s.offsets[i];
  s.adjacency.resize(s.offsets[n]);
  std::vector<std::size_t> fill(s.offsets.begin(), s.offsets.end() - 1);
  // Edges are sorted by (u, v): each adjacency list comes out sorted once
  // both directions are placed, since lower ids arrive first for every node.
  for (const auto& e : edges) s.adjacency[fill[e.v]++] = e.u;
  for (const auto& e : edges) s.adjacency[fill[e.u]++] = e.v;
  s.edges = std::move(edges);
  return s;
}

DynamicNetwork::DynamicNetwork(std::vector<std::string> labels,
                               std::vector<std::vector<Edge>> slices)
    : labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], static_cast<NodeId>(i)).second)
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate node label '" + labels_[i] + "'");
  }
  slices_.reserve(slices.size());
  for (auto& s : slices) slices_.push_back(make_slice(std::move(s), labels_.size()));
}

DynamicNetwork DynamicNetwork::from_ids(std::size_t node_count,
                                        std::vector<std::vector<Edge>> slices) {
  std::vector<std::string> labels;
  labels.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
  return DynamicNetwork(std::move(labels), std::move(slices));
}

const std::string& DynamicNetwork::label(NodeId v) const {
  if (v >= labels_.size())
    throw Error(ErrorCode::kIndex, "node id " + std::to_string(v) + " out of range");
  return labels_[v];
}

std::optional<NodeId> DynamicNetwork::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void DynamicNetwork::check_slice(std::size_t t) const {
  if (t >= slices_.size())
    throw Error(ErrorCode::kIndex,
                "slice " + std::to_string(t) + " out of range (theta = " +
                    std::to_string(slices_.size()) + ")");
}

std::span<const NodeId> DynamicNetwork::neighbors(NodeId v, std::size_t t) const {
  check_slice(t);
  if (v >= labels_.size())
    throw Error(ErrorCode::kIndex, "node id " + std::to_string(v) + " out of range");
  const auto& s = slices_[t];
  return {s.adjacency.data() + s.offsets[v], s.offsets[v + 1] - s.offsets[v]};
}

bool DynamicNetwork::has_edge(std::size_t t, NodeId a, NodeId b) const {
  auto nb = neighbors(a, t);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::span<const Edge> DynamicNetwork::edges(std::size_t t) const {
  check_slice(t);
  return slices_[t].edges;
}

std::size_t DynamicNetwork::total_edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& s : slices_) total += s.edges.size();
  return total;
}

DynamicNetwork DynamicNetwork::reversed() const {
  DynamicNetwork out;
  out.labels_ = labels_;
  out.index_ = index_;
  out.slices_.assign(slices_.rbegin(), slices_.rend());
  return out;
}

bool operator==(const DynamicNetwork& a, const DynamicNetwork& b) {
  if (a.labels_ != b.labels_ || a.slices_.size() != b.slices_.size())
    return false;
  for (std::size_t t = 0; t < a.slices_.size(); ++t)
    if (a.slices_[t].edges != b.slices_[t].edges) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

struct LabelInterner {
  std::vector<std::string> sorted;

  void finish() {
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return natural_less(a, b);
    });
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  }

  NodeId id(const std::string& label) const {
    auto it = std::lower_bound(
        sorted.begin(), sorted.end(), label,
        [](const auto& a, const auto& b) { return natural_less(a, b); });
    return static_cast<NodeId>(it - sorted.begin());
  }
};

}  // namespace

DynamicNetwork build_slices(std::span<const TemporalEdge> edges,
                            const SliceConfig& cfg) {
  cfg.validate();
  if (edges.empty())
    throw Error(ErrorCode::kEmptyNetwork, "no temporal edges to slice");

  std::optional<Timestamp> max_time;
  for (const auto& e : edges)
    if (e.time >= cfg.origin && e.source != e.target)
      max_time = max_time ? std::max(*max_time, e.time) : e.time;
  if (!max_time)
    throw Error(ErrorCode::kEmptyNetwork,
                "every timestamp precedes the slicing origin " +
                    std::to_string(cfg.origin));

  std::size_t theta =
      static_cast<std::size_t>((*max_time - cfg.origin) / cfg.step()) + 1;
  if (cfg.count) theta = std::min(theta, *cfg.count);

  LabelInterner interner;
  for (const auto& e : edges) {
    if (e.source == e.target) continue;
    auto win = cfg.windows_containing(e.time);
    if (!win || win->first >= theta) continue;
    interner.sorted.push_back(e.source);
    interner.sorted.push_back(e.target);
  }
  interner.finish();

  std::vector<std::vector<Edge>> slices(theta);
  for (const auto& e : edges) {
    if (e.source == e.target) continue;
    auto win = cfg.windows_containing(e.time);
    if (!win || win->first >= theta) continue;
    const Edge link{interner.id(e.source), interner.id(e.target)};
    const std::size_t last = std::min(win->second, theta - 1);
    for (std::size_t t = win->first; t <= last; ++t) slices[t].push_back(link);
  }
  return DynamicNetwork(std::move(interner.sorted), std::move(slices));
}

DynamicNetwork load_presliced(std::istream& in) {
  struct Row {
    std::size_t slice;
    std::string u, v;
  };
  std::vector<Row> rows;
  std::set<std::int64_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    auto fields = detail::split_fields(text);
    if (fields.size() != 1 && fields.size() != 3)
      throw ParseError(line_no, "expected '<slice> <src> <dst>', got '" +
                                    std::string(text) + "'");
    auto slice = detail::parse_int(fields[0]);
    if (!slice)
      throw ParseError(line_no, "slice index '" + std::string(fields[0]) +
                                    "' is not an integer");
    if (*slice < 0)
      throw Error(ErrorCode::kLoad, "line " + std::to_string(line_no) +
                                        ": negative slice index " +
                                        std::to_string(*slice));
    seen.insert(*slice);
    if (fields.size() == 3 && fields[1] != fields[2])
      rows.push_back({static_cast<std::size_t>(*slice), std::string(fields[1]),
                      std::string(fields[2])});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading pre-sliced network");
  if (seen.empty()) throw Error(ErrorCode::kLoad, "no slices in input");

  std::int64_t expected = 0;
  for (auto s : seen) {
    if (s != expected)
      throw Error(ErrorCode::kLoad,
                  "missing slice " + std::to_string(expected));
    ++expected;
  }

  LabelInterner interner;
  for (const auto& r : rows) {
    interner.sorted.push_back(r.u);
    interner.sorted.push_back(r.v);
  }
  interner.finish();

  std::vector<std::vector<Edge>> slices(seen.size());
  for (const auto& r : rows)
    slices[r.slice].push_back({interner.id(r.u), interner.id(r.v)});
  return DynamicNetwork(std::move(interner.sorted), std::move(slices));
}

void write_presliced(std::ostream& out, const DynamicNetwork& net) {
  for (std::size_t t = 0; t < net.slice_count(); ++t) {
    auto edges = net.edges(t);
    if (edges.empty()) {
      out << t << '\n';
      continue;
    }
    for (const auto& e : edges)
      out << t << ' ' << net.label(e.u) << ' ' << net.label(e.v) << '\n';
  }
}

std::vector<NodeId> neighborhood(const DynamicNetwork& net, NodeId v,
                                 std::size_t t) {
  auto nb = net.neighbors(v, t);
  return {nb.begin(), nb.end()};
}

}  // namespace neighevo
