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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neighevo/sequence_db.hpp"

namespace neighevo {

struct DtwOptions {
  // Sakoe-Chiba band half-width; widened to the length difference if needed.
  std::optional<std::size_t> window;
};

// Classic dynamic time warping: cumulative |x_i - y_j| along the cheapest
// monotone alignment using match, insertion and deletion steps. Symmetric
// and zero on identical input, but not a metric.
double dtw_distance(std::span<const double> x, std::span<const double> y,
                    const DtwOptions& options = {});
double dtw_distance(const CountSeries& x, const CountSeries& y,
                    const DtwOptions& options = {});

// Symmetric, non-negative, zero diagonal. Stores the upper triangle only.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n);
  // Validates symmetry, zero diagonal and non-negativity.
  static DistanceMatrix from_dense(const std::vector<std::vector<double>>& d);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return 0.0;
    return upper_[index(std::min(i, j), std::max(i, j))];
  }
  void set(std::size_t i, std::size_t j, double value);

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> upper_;
};

DistanceMatrix distance_matrix(std::span<const CountSeries> series,
                               const DtwOptions& options = {}, unsigned threads = 1);

void write_distance_csv(std::ostream& out, const DistanceMatrix& d,
                        std::span<const std::string> labels);

enum class Linkage { kSingle, kComplete, kAverage };

Linkage parse_linkage(std::string_view name);
const char* to_string(Linkage linkage) noexcept;

// Cluster ids follow the usual convention: leaves are 0..n-1 and the cluster
// formed by merge i is n + i. `first` is the side whose smallest leaf is
// smaller.
struct Merge {
  std::size_t first = 0;
  std::size_t second = 0;
  double height = 0.0;
  std::size_t size = 0;
};

class Dendrogram {
 public:
  Dendrogram() = default;
  Dendrogram(std::size_t leaves, std::vector<Merge> merges);

  std::size_t leaf_count() const noexcept { return leaves_; }
  std::span<const Merge> merges() const noexcept { return merges_; }

  // Flat labels for k clusters (1 <= k <= n), numbered 0..k-1 in order of
  // each cluster's smallest leaf.
  std::vector<std::size_t> cut(std::size_t k) const;

 private:
  std::size_t leaves_ = 0;
  std::vector<Merge> merges_;
};

// Agglomerative clustering. Among equally close pairs the one with the
// lexicographically smallest (smallest leaf, smallest leaf) wins.
Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage = Linkage::kAverage);

// Nested-parenthesis form: "((a,b):1,(c,d):1):10;" with merge heights.
void write_dendrogram(std::ostream& out, const Dendrogram& tree,
                      std::span<const std::string> labels);

struct SilhouetteReport {
  std::vector<double> widths;                               // per node
  std::vector<std::pair<std::size_t, double>> cluster_means;  // label, mean
  double average = 0.0;
};

// Needs at least two clusters. Nodes alone in their cluster score 0.
SilhouetteReport silhouette(const DistanceMatrix& d, std::span<const std::size_t> labels);

struct CutSelection {
  std::size_t k = 0;
  std::vector<std::size_t> labels;
  SilhouetteReport report;
  std::vector<std::pair<std::size_t, double>> curve;  // (k, ASW)
};

// Evaluates k = 2..min(k_max, n - 1) (k = 2 alone when n = 2) and keeps the
// best average silhouette, preferring the smaller k on ties.
CutSelection select_best_cut(const Dendrogram& tree, const DistanceMatrix& d,
                             std::size_t k_max = 15);

// CSV `node,cluster,silhouette` and `k,asw`.
void write_clusters_csv(std::ostream& out, std::span<const std::string> labels,
                        const CutSelection& selection);
void write_asw_curve_csv(std::ostream& out, const CutSelection& selection);

}  // namespace neighevo
