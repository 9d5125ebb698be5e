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

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "neighevo/error.hpp"
#include "neighevo/evolution_stats.hpp"
#include "neighevo/sequence_db.hpp"
#include "oracles.hpp"

using namespace neighevo;
using neighevo::test::Rng;

TEST_CASE("toy per-interval counts") {
  const auto net = test::fig1();
  const auto table = per_interval_counts(build_event_db(net));
  REQUIRE(table.interval_count() == 2);
  CHECK(table.at(0, EventKind::kBirth).nodes >= 1);
  for (const auto& row : table.rows)
    for (const auto& tally : row) {
      CHECK(tally.nodes <= net.node_count());
      CHECK(tally.records >= tally.nodes);
    }
  std::ostringstream out;
  write_counts_csv(out, table);
  CHECK(out.str().rfind("interval,kind,nodes,records\n0,B,", 0) == 0);
}

TEST_CASE("empty database gives an all-zero table") {
  const EventDatabase empty(5, 4, {});
  const auto table = per_interval_counts(empty);
  CHECK(table.interval_count() == 3);
  for (const auto& row : table.rows)
    for (const auto& tally : row) CHECK(tally == KindTally{});
}

TEST_CASE("record totals equal the column sums of the count series") {
  Rng rng(157);
  for (int trial = 0; trial < 30; ++trial) {
    auto net = test::random_network(rng, test::uniform(rng, 2, 30), test::uniform(rng, 2, 6), 0.2);
    const auto db = build_event_db(net);
    const auto table = per_interval_counts(db);
    std::vector<std::uint64_t> columns(db.interval_count(), 0);
    for (NodeId v = 0; v < net.node_count(); ++v) {
      const auto s = event_count_series(db, v);
      for (std::size_t t = 0; t < s.counts.size(); ++t) columns[t] += s.counts[t];
    }
    for (std::size_t t = 0; t < table.interval_count(); ++t) {
      std::uint64_t total = 0;
      for (const auto& tally : table.rows[t]) total += tally.records;
      CHECK(total == columns[t]);
    }
    // Node-level tallies depend on kinds only, never on component indices.
    std::vector<EventRecord> shuffled(db.records().begin(), db.records().end());
    for (auto& r : shuffled) r.component = 0;
    std::vector<EventRecord> unique;
    for (const auto& r : shuffled)
      if (unique.empty() || !(unique.back().node == r.node && unique.back().interval == r.interval &&
                              unique.back().kind == r.kind))
        unique.push_back(r);
    const auto collapsed = per_interval_counts(EventDatabase(db.node_count(), db.slice_count(), unique));
    for (std::size_t t = 0; t < table.interval_count(); ++t)
      for (std::size_t k = 0; k < 6; ++k) CHECK(collapsed.rows[t][k].nodes == table.rows[t][k].nodes);
  }
}

TEST_CASE("alive nodes and density") {
  auto empty = DynamicNetwork::from_ids(4, {{}});
  auto a = alive_and_density(empty);
  CHECK(a[0].alive == 0);
  CHECK(a[0].density == 0.0);

  std::vector<Edge> complete;
  for (NodeId u = 0; u < 6; ++u)
    for (NodeId v = u + 1; v < 6; ++v) complete.push_back({u, v});
  a = alive_and_density(DynamicNetwork::from_ids(6, {complete}));
  CHECK(a[0].alive == 6);
  CHECK(a[0].density == 1.0);

  // Toy slice 1: twelve links over eleven nodes, all of them touched.
  a = alive_and_density(test::fig1());
  CHECK(a[1].alive == 11);
  CHECK(a[1].density == doctest::Approx(2.0 * 12 / (11.0 * 10)));
  CHECK_THROWS_AS(alive_and_density(DynamicNetwork::from_ids(1, {{}})), Error);

  std::ostringstream out;
  write_activity_csv(out, a);
  CHECK(out.str().rfind("slice,alive,density\n0,10,", 0) == 0);
}

TEST_CASE("regression on exact lines") {
  const std::vector<double> x{1, 2, 3, 4, 5, 6};
  std::vector<double> y;
  for (double v : x) y.push_back(2 * v + 1);
  const auto r = correlate(x, y);
  CHECK(std::fabs(r.pearson_r - 1.0) <= 1e-12);
  CHECK(r.slope == doctest::Approx(2.0));
  CHECK(r.intercept == doctest::Approx(1.0));
  CHECK(r.p_value < 1e-8);
  CHECK(r.n_points == 6);

  const std::vector<double> flat(6, 3.0);
  const auto c = correlate(x, flat);
  CHECK(c.pearson_r == 0.0);
  CHECK(c.slope == 0.0);
  CHECK(c.p_value == 1.0);
  try {
    correlate(flat, x);
    FAIL("expected degenerate regression");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateRegression);
  }
  CHECK_THROWS_AS(correlate(std::vector<double>{1, 2}, std::vector<double>{1, 2}), Error);
  CHECK_THROWS_AS(correlate(x, std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("regression on a fixed five-point set matches the normal equations") {
  const std::vector<double> x{1, 2, 3, 4, 5}, y{2, 4, 5, 4, 5};
  // Sxx = 10, Sxy = 6, Syy = 6: slope 0.6, intercept 4 - 0.6*3 = 2.2,
  // r = 6 / sqrt(60), t = r sqrt(3 / (1 - r^2)).
  const auto r = correlate(x, y);
  CHECK(r.slope == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(r.intercept == doctest::Approx(2.2).epsilon(1e-14));
  const double rr = 6.0 / std::sqrt(60.0);
  CHECK(r.pearson_r == doctest::Approx(rr).epsilon(1e-14));
  const double t = rr * std::sqrt(3.0 / (1.0 - rr * rr));
  CHECK(r.p_value == doctest::Approx(test::boost_two_sided(t, 3.0)).epsilon(1e-10));
}

TEST_CASE("t tail probabilities match Boost") {
  Rng rng(163);
  for (int trial = 0; trial < 2000; ++trial) {
    const double df = static_cast<double>(test::uniform(rng, 1, 200));
    const double t = (test::uniform01(rng) - 0.5) * 20.0;
    const double expected = test::boost_two_sided(t, df);
    CHECK(std::fabs(student_t_two_sided(t, df) - expected) <= 1e-8);
  }
  CHECK(student_t_two_sided(0.0, 5.0) == doctest::Approx(1.0));
  CHECK(student_t_two_sided(INFINITY, 5.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  CHECK_THROWS_AS(incomplete_beta(0.0, 1.0, 0.5), Error);
  CHECK_THROWS_AS(student_t_two_sided(1.0, 0.0), Error);
}

TEST_CASE("regression identities") {
  Rng rng(167);
  std::normal_distribution<double> noise;
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = test::uniform(rng, 3, 40);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = noise(rng);
      y[i] = 0.5 * x[i] + noise(rng);
    }
    const auto r = correlate(x, y);
    double my = 0;
    for (double v : y) my += v;
    my /= n;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fit = r.intercept + r.slope * x[i];
      ss_res += (y[i] - fit) * (y[i] - fit);
      ss_tot += (y[i] - my) * (y[i] - my);
    }
    CHECK(r.pearson_r * r.pearson_r == doctest::Approx(1.0 - ss_res / ss_tot).epsilon(1e-9));
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);
    const double a = 0.1 + test::uniform01(rng) * 5, b = test::uniform01(rng) * 10 - 5;
    std::vector<double> ax(n), ay(n);
    for (std::size_t i = 0; i < n; ++i) {
      ax[i] = a * x[i] + b;
      ay[i] = 2 * a * y[i] - b;
    }
    CHECK(correlate(ax, ay).pearson_r == doctest::Approx(r.pearson_r).epsilon(1e-9));
  }
}

TEST_CASE("regression report JSON") {
  std::vector<NamedRegression> rows{{"alive", "B", {0.5, 1.0, 0.25, 0.03, 10}}};
  std::ostringstream out;
  write_regression_json(out, rows, 0.05);
  CHECK(out.str() ==
        "[\n  {\"x\":\"alive\",\"y\":\"B\",\"slope\":0.5,\"intercept\":1,\"pearson_r\":0.25,"
        "\"p_value\":0.029999999999999999,\"n_points\":10,\"significant\":true}\n]\n");
  std::ostringstream none;
  write_regression_json(none, {}, 0.05);
  CHECK(none.str() == "[]\n");
}

TEST_CASE("activity regressions pair interval t with slice t + 1") {
  Rng rng(173);
  auto net = test::random_network(rng, 25, 7, 0.15, 0.5);
  const auto table = per_interval_counts(build_event_db(net));
  const auto activity = alive_and_density(net);
  const auto rows = activity_regressions(table, activity);
  CHECK_FALSE(rows.empty());
  std::vector<double> density;
  for (std::size_t t = 1; t < activity.size(); ++t) density.push_back(activity[t].density);
  for (const auto& row : rows)
    if (row.x_name == "density" && row.y_name == "B") {
      const auto direct = correlate(density, table.node_series(EventKind::kBirth));
      CHECK(row.result.slope == direct.slope);
      CHECK(row.result.p_value == direct.p_value);
    }
  CHECK_THROWS_AS(activity_regressions(table, std::vector<SliceActivity>(2)), Error);
}
