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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "neighevo/events.hpp"
#include "neighevo/temporal_graph.hpp"

namespace neighevo {

struct KindTally {
  std::uint64_t nodes = 0;    // nodes with at least one event of the kind
  std::uint64_t records = 0;  // event records of the kind
  friend bool operator==(const KindTally&, const KindTally&) = default;
};

// One row per interval, one column per event kind in EventKind order.
struct EventCountTable {
  std::size_t node_count = 0;
  std::vector<std::array<KindTally, kAllEventKinds.size()>> rows;

  std::size_t interval_count() const noexcept { return rows.size(); }
  const KindTally& at(std::size_t interval, EventKind kind) const {
    return rows.at(interval)[static_cast<std::size_t>(kind)];
  }
  std::vector<double> node_series(EventKind kind) const;
  std::vector<double> record_series(EventKind kind) const;
};

EventCountTable per_interval_counts(const EventDatabase& events);

// CSV `interval,kind,nodes,records`.
void write_counts_csv(std::ostream& out, const EventCountTable& table);

struct SliceActivity {
  std::uint64_t alive = 0;  // nodes with degree >= 1
  double density = 0.0;     // 2|E_t| / (n (n - 1))
};

std::vector<SliceActivity> alive_and_density(const DynamicNetwork& net);

// CSV `slice,alive,density`.
void write_activity_csv(std::ostream& out, std::span<const SliceActivity> activity);

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double pearson_r = 0.0;
  double p_value = 1.0;
  std::size_t n_points = 0;

  bool significant(double alpha) const noexcept { return p_value < alpha; }
};

// Ordinary least squares of y on x with a two-sided t-test on the slope.
// Constant y gives r = 0, slope 0 and p = 1; constant x is an error.
RegressionResult correlate(std::span<const double> x, std::span<const double> y);

// Two-sided tail probability P(|T| >= |t|) for Student's t with df degrees
// of freedom.
double student_t_two_sided(double t, double df);
// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

struct NamedRegression {
  std::string x_name;
  std::string y_name;
  RegressionResult result;
};

// JSON array of {"x","y","slope","intercept","pearson_r","p_value",
// "n_points","significant"}.
void write_regression_json(std::ostream& out, std::span<const NamedRegression> rows,
                           double alpha);

// Regresses each kind's node-level count over interval t against the alive
// count and the density of slice t + 1.
std::vector<NamedRegression> activity_regressions(const EventCountTable& table,
                                                  std::span<const SliceActivity> activity);

}  // namespace neighevo
