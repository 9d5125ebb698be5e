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

#include "neighevo/detail/text_format.hpp"
#include "neighevo/error.hpp"
#include "neighevo/evolution_stats.hpp"

namespace neighevo {

std::vector<double> EventCountTable::node_series(EventKind kind) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows)
    out.push_back(static_cast<double>(row[static_cast<std::size_t>(kind)].nodes));
  return out;
}

std::vector<double> EventCountTable::record_series(EventKind kind) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows)
    out.push_back(static_cast<double>(row[static_cast<std::size_t>(kind)].records));
  return out;
}

EventCountTable per_interval_counts(const EventDatabase& events) {
  EventCountTable table;
  table.node_count = events.node_count();
  const std::size_t intervals = events.slice_count() > 0 ? events.slice_count() - 1 : 0;
  table.rows.assign(intervals, {});
  // Records are sorted by (node, interval, kind), so a kind's node-level
  // count rises once per run.
  const EventRecord* prev = nullptr;
  for (const auto& r : events.records()) {
    auto& tally = table.rows[r.interval][static_cast<std::size_t>(r.kind)];
    ++tally.records;
    if (!prev || prev->node != r.node || prev->interval != r.interval || prev->kind != r.kind)
      ++tally.nodes;
    prev = &r;
  }
  return table;
}

void write_counts_csv(std::ostream& out, const EventCountTable& table) {
  out << "interval,kind,nodes,records\n";
  for (std::size_t t = 0; t < table.rows.size(); ++t)
    for (auto kind : kAllEventKinds) {
      const auto& tally = table.rows[t][static_cast<std::size_t>(kind)];
      out << t << ',' << kind_letter(kind) << ',' << tally.nodes << ',' << tally.records << '\n';
    }
}

std::vector<SliceActivity> alive_and_density(const DynamicNetwork& net) {
  const std::size_t n = net.node_count();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "density needs at least two nodes");
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  std::vector<SliceActivity> out(net.slice_count());
  for (std::size_t t = 0; t < net.slice_count(); ++t) {
    for (NodeId v = 0; v < n; ++v)
      if (net.degree(v, t) > 0) ++out[t].alive;
    out[t].density = static_cast<double>(net.edges(t).size()) / pairs;
  }
  return out;
}

void write_activity_csv(std::ostream& out, std::span<const SliceActivity> activity) {
  out << "slice,alive,density\n";
  for (std::size_t t = 0; t < activity.size(); ++t)
    out << t << ',' << activity[t].alive << ',' << detail::format_double(activity[t].density)
        << '\n';
}

RegressionResult correlate(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::kInvalidArgument, "regression series differ in length");
  if (x.size() < 3)
    throw Error(ErrorCode::kInvalidArgument, "regression needs at least three points");
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= nd;
  my /= nd;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0)
    throw Error(ErrorCode::kDegenerateRegression, "regressor is constant");

  RegressionResult r;
  r.n_points = n;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  if (syy == 0.0) {
    r.slope = 0.0;
    r.intercept = my;
    return r;
  }
  r.pearson_r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = nd - 2.0;
  const double unexplained = 1.0 - r.pearson_r * r.pearson_r;
  if (unexplained <= 0.0) {
    r.p_value = 0.0;
    return r;
  }
  const double t = r.pearson_r * std::sqrt(df / unexplained);
  r.p_value = std::clamp(student_t_two_sided(t, df), 0.0, 1.0);
  return r;
}

void write_regression_json(std::ostream& out, std::span<const NamedRegression> rows,
                           double alpha) {
  if (rows.empty()) {
    out << "[]\n";
    return;
  }
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const auto& r = row.result;
    out << "  {\"x\":\"" << detail::json_escape(row.x_name) << "\",\"y\":\""
        << detail::json_escape(row.y_name) << "\",\"slope\":" << detail::format_double(r.slope)
        << ",\"intercept\":" << detail::format_double(r.intercept)
        << ",\"pearson_r\":" << detail::format_double(r.pearson_r)
        << ",\"p_value\":" << detail::format_double(r.p_value) << ",\"n_points\":" << r.n_points
        << ",\"significant\":" << (r.significant(alpha) ? "true" : "false") << '}'
        << (i + 1 < rows.size() ? ",\n" : "\n");
  }
  out << "]\n";
}

std::vector<NamedRegression> activity_regressions(const EventCountTable& table,
                                                  std::span<const SliceActivity> activity) {
  const std::size_t intervals = table.interval_count();
  if (activity.size() != intervals + 1)
    throw Error(ErrorCode::kContract, "activity series does not match the count table");
  std::vector<NamedRegression> out;
  if (intervals < 3) return out;
  std::vector<double> alive, density;
  for (std::size_t t = 0; t < intervals; ++t) {
    alive.push_back(static_cast<double>(activity[t + 1].alive));
    density.push_back(activity[t + 1].density);
  }
  auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  for (auto kind : kAllEventKinds) {
    const auto y = table.node_series(kind);
    const std::string name(1, kind_letter(kind));
    if (!constant(alive)) out.push_back({"alive", name, correlate(alive, y)});
    if (!constant(density)) out.push_back({"density", name, correlate(density, y)});
  }
  return out;
}

}  // namespace neighevo
