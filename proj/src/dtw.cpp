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
#include <limits>
#include <ostream>

#include "neighevo/clustering.hpp"
#include "neighevo/detail/parallel.hpp"
#include "neighevo/detail/text_format.hpp"
#include "neighevo/error.hpp"

namespace neighevo {

double dtw_distance(std::span<const double> x, std::span<const double> y,
                    const DtwOptions& options) {
  if (x.empty() || y.empty())
    throw Error(ErrorCode::kContract, "dtw needs non-empty series");
  const std::size_t n = x.size(), m = y.size();
  const std::size_t gap = n > m ? n - m : m - n;
  const std::size_t band = options.window ? std::max(*options.window, gap) : std::max(n, m);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Two rolling rows over y; row[j + 1] is the cost of aligning x[..i] with y[..j].
  std::vector<double> prev(m + 1, kInf), cur(m + 1, kInf);
  prev[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(cur.begin(), cur.end(), kInf);
    const std::size_t lo = i > band ? i - band : 0;
    const std::size_t hi = std::min(m - 1, i + band);
    for (std::size_t j = lo; j <= hi; ++j) {
      const double best = std::min({prev[j], prev[j + 1], cur[j]});
      cur[j + 1] = std::abs(x[i] - y[j]) + best;
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double dtw_distance(const CountSeries& x, const CountSeries& y, const DtwOptions& options) {
  std::vector<double> a(x.counts.begin(), x.counts.end());
  std::vector<double> b(y.counts.begin(), y.counts.end());
  return dtw_distance(a, b, options);
}

DistanceMatrix::DistanceMatrix(std::size_t n)
    : n_(n), upper_(n > 1 ? n * (n - 1) / 2 : 0, 0.0) {}

DistanceMatrix DistanceMatrix::from_dense(const std::vector<std::vector<double>>& d) {
  DistanceMatrix out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].size() != d.size())
      throw Error(ErrorCode::kInvalidArgument, "distance matrix must be square");
    if (d[i][i] != 0.0)
      throw Error(ErrorCode::kInvalidArgument, "distance matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (d[i][j] != d[j][i])
        throw Error(ErrorCode::kInvalidArgument, "distance matrix must be symmetric");
      out.set(i, j, d[i][j]);
    }
  }
  return out;
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_ || i == j)
    throw Error(ErrorCode::kIndex, "distance cell out of range");
  if (!(value >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "distances must be non-negative");
  upper_[index(std::min(i, j), std::max(i, j))] = value;
}

DistanceMatrix distance_matrix(std::span<const CountSeries> series,
                               const DtwOptions& options, unsigned threads) {
  const std::size_t n = series.size();
  for (const auto& s : series)
    if (s.counts.size() != series.front().counts.size())
      throw Error(ErrorCode::kContract, "count series must share one length");
  std::vector<std::vector<double>> values(n);
  for (std::size_t i = 0; i < n; ++i)
    values[i].assign(series[i].counts.begin(), series[i].counts.end());

  DistanceMatrix d(n);
  // Each cell is written by exactly one task, so the result is independent
  // of scheduling.
  detail::parallel_for(
      n, threads,
      [&](std::size_t i, unsigned) {
        for (std::size_t j = i + 1; j < n; ++j)
          d.set(i, j, dtw_distance(values[i], values[j], options));
      },
      4);
  return d;
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& d,
                        std::span<const std::string> labels) {
  if (labels.size() != d.size())
    throw Error(ErrorCode::kContract, "label table does not match the matrix");
  out << "node";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << labels[i];
    for (std::size_t j = 0; j < d.size(); ++j) out << ',' << detail::format_double(d(i, j));
    out << '\n';
  }
}

}  // namespace neighevo
