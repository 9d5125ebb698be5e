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
#include <cmath>
#include <ostream>

#include "neighevo/clustering.hpp"
#include "neighevo/detail/text_format.hpp"
#include "neighevo/error.hpp"

namespace neighevo {

SilhouetteReport silhouette(const DistanceMatrix& d, std::span<const std::size_t> labels) {
  const std::size_t n = d.size();
  if (labels.size() != n)
    throw Error(ErrorCode::kContract, "partition does not cover every node");
  // Labels are compacted so arbitrary cluster ids are accepted.
  std::vector<std::size_t> ids(labels.begin(), labels.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < 2)
    throw Error(ErrorCode::kContract, "silhouette needs at least two clusters");
  const std::size_t k = ids.size();
  std::vector<std::size_t> dense(n), members(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    dense[i] = static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), labels[i]) -
                                        ids.begin());
    ++members[dense[i]];
  }

  SilhouetteReport report;
  report.widths.assign(n, 0.0);
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = dense[i];
    if (members[own] == 1) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sums[dense[j]] += d(i, j);
    const double a = sums[own] / static_cast<double>(members[own] - 1);
    double b = INFINITY;
    for (std::size_t c = 0; c < k; ++c)
      if (c != own) b = std::min(b, sums[c] / static_cast<double>(members[c]));
    const double denom = std::max(a, b);
    report.widths[i] = denom > 0.0 ? (b - a) / denom : 0.0;
  }

  std::vector<double> cluster_sum(k, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cluster_sum[dense[i]] += report.widths[i];
    total += report.widths[i];
  }
  for (std::size_t c = 0; c < k; ++c)
    report.cluster_means.emplace_back(ids[c], cluster_sum[c] / static_cast<double>(members[c]));
  report.average = total / static_cast<double>(n);
  return report;
}

CutSelection select_best_cut(const Dendrogram& tree, const DistanceMatrix& d,
                             std::size_t k_max) {
  const std::size_t n = tree.leaf_count();
  if (d.size() != n)
    throw Error(ErrorCode::kContract, "distance matrix does not match the dendrogram");
  if (k_max < 2) throw Error(ErrorCode::kInvalidArgument, "k_max must be at least 2");
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "clustering needs at least two nodes");
  const std::size_t upper = n == 2 ? 2 : std::min(k_max, n - 1);

  CutSelection best;
  for (std::size_t k = 2; k <= upper; ++k) {
    auto labels = tree.cut(k);
    auto report = silhouette(d, labels);
    best.curve.emplace_back(k, report.average);
    if (best.k == 0 || report.average > best.report.average) {
      best.k = k;
      best.labels = std::move(labels);
      best.report = std::move(report);
    }
  }
  return best;
}

void write_clusters_csv(std::ostream& out, std::span<const std::string> labels,
                        const CutSelection& selection) {
  if (labels.size() != selection.labels.size())
    throw Error(ErrorCode::kContract, "label table does not match the partition");
  out << "node,cluster,silhouette\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << labels[i] << ',' << selection.labels[i] << ','
        << detail::format_double(selection.report.widths[i]) << '\n';
}

void write_asw_curve_csv(std::ostream& out, const CutSelection& selection) {
  out << "k,asw\n";
  for (const auto& [k, asw] : selection.curve)
    out << k << ',' << detail::format_double(asw) << '\n';
}

}  // namespace neighevo
