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
#include <limits>
#include <numeric>
#include <ostream>

#include "neighevo/clustering.hpp"
#include "neighevo/detail/text_format.hpp"
#include "neighevo/error.hpp"

namespace neighevo {

Linkage parse_linkage(std::string_view name) {
  if (name == "single") return Linkage::kSingle;
  if (name == "complete") return Linkage::kComplete;
  if (name == "average") return Linkage::kAverage;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown linkage '" + std::string(name) + "' (single|complete|average)");
}

const char* to_string(Linkage linkage) noexcept {
  switch (linkage) {
    case Linkage::kSingle: return "single";
    case Linkage::kComplete: return "complete";
    case Linkage::kAverage: return "average";
  }
  return "average";
}

Dendrogram::Dendrogram(std::size_t leaves, std::vector<Merge> merges)
    : leaves_(leaves), merges_(std::move(merges)) {
  if (leaves_ > 0 && merges_.size() != leaves_ - 1)
    throw Error(ErrorCode::kContract, "a dendrogram over n leaves has n - 1 merges");
  for (std::size_t i = 0; i < merges_.size(); ++i)
    if (merges_[i].first >= leaves_ + i || merges_[i].second >= leaves_ + i)
      throw Error(ErrorCode::kContract, "merge refers to a cluster not yet formed");
}

std::vector<std::size_t> Dendrogram::cut(std::size_t k) const {
  if (k == 0 || k > leaves_)
    throw Error(ErrorCode::kInvalidArgument,
                "cannot cut " + std::to_string(leaves_) + " leaves into " +
                    std::to_string(k) + " clusters");
  // Replay the first n - k merges as parent links, then follow to the root.
  std::vector<std::size_t> parent(leaves_ + merges_.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < leaves_ - k; ++i)
    parent[merges_[i].first] = parent[merges_[i].second] = leaves_ + i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> labels(leaves_);
  std::vector<std::size_t> label_of_root(parent.size(), std::numeric_limits<std::size_t>::max());
  std::size_t next = 0;
  for (std::size_t v = 0; v < leaves_; ++v) {
    auto& l = label_of_root[find(v)];
    if (l == std::numeric_limits<std::size_t>::max()) l = next++;
    labels[v] = l;
  }
  return labels;
}

Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage) {
  const std::size_t n = d.size();
  if (n == 0) return Dendrogram(0, {});
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // Working distances between active clusters, indexed by slot. A cluster
  // lives in the slot of its smallest leaf, which makes slot order the
  // tie-break order.
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = d(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return dist[i * n + j]; };

  std::vector<char> active(n, 1);
  std::vector<std::size_t> size(n, 1), cluster_id(n);
  std::iota(cluster_id.begin(), cluster_id.end(), 0);

  // Nearest active slot above each slot (smallest index on ties).
  std::vector<std::size_t> nn(n, kNone);
  std::vector<double> nn_dist(n, kInf);
  auto refresh = [&](std::size_t i) {
    nn[i] = kNone;
    nn_dist[i] = kInf;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!active[j]) continue;
      if (at(i, j) < nn_dist[i]) {
        nn_dist[i] = at(i, j);
        nn[i] = j;
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  std::vector<Merge> merges;
  merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = kNone;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || nn[i] == kNone) continue;
      if (a == kNone || nn_dist[i] < nn_dist[a]) a = i;
    }
    const std::size_t b = nn[a];
    const double height = at(a, b);
    merges.push_back({cluster_id[a], cluster_id[b], height, size[a] + size[b]});

    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      double updated = 0.0;
      switch (linkage) {
        case Linkage::kSingle: updated = std::min(at(a, k), at(b, k)); break;
        case Linkage::kComplete: updated = std::max(at(a, k), at(b, k)); break;
        case Linkage::kAverage:
          updated = (static_cast<double>(size[a]) * at(a, k) +
                     static_cast<double>(size[b]) * at(b, k)) /
                    static_cast<double>(size[a] + size[b]);
          break;
      }
      at(a, k) = at(k, a) = updated;
    }
    active[b] = 0;
    size[a] += size[b];
    cluster_id[a] = n + step;

    refresh(a);
    for (std::size_t k = 0; k < a; ++k) {
      if (!active[k]) continue;
      if (nn[k] == a || nn[k] == b) {
        refresh(k);
      } else if (at(k, a) < nn_dist[k] || (at(k, a) == nn_dist[k] && a < nn[k])) {
        nn_dist[k] = at(k, a);
        nn[k] = a;
      }
    }
    for (std::size_t k = a + 1; k < b; ++k)
      if (active[k] && nn[k] == b) refresh(k);
  }
  return Dendrogram(n, std::move(merges));
}

void write_dendrogram(std::ostream& out, const Dendrogram& tree,
                      std::span<const std::string> labels) {
  const std::size_t n = tree.leaf_count();
  if (labels.size() != n)
    throw Error(ErrorCode::kContract, "label table does not match the dendrogram");
  if (n == 0) {
    out << ";\n";
    return;
  }
  const auto merges = tree.merges();
  // Iterative walk; chains of merges can be as deep as n.
  struct Frame {
    std::size_t id;
    int stage;
  };
  std::vector<Frame> stack{{n + merges.size() - 1, 0}};
  if (merges.empty()) stack.back().id = 0;
  while (!stack.empty()) {
    auto& f = stack.back();
    if (f.id < n) {
      out << labels[f.id];
      stack.pop_back();
      continue;
    }
    const auto& m = merges[f.id - n];
    switch (f.stage++) {
      case 0:
        out << '(';
        stack.push_back({m.first, 0});
        break;
      case 1:
        out << ',';
        stack.push_back({m.second, 0});
        break;
      default:
        out << "):" << detail::format_double(m.height);
        stack.pop_back();
    }
  }
  out << ";\n";
}

}  // namespace neighevo
