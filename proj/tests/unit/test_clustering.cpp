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
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "neighevo/clustering.hpp"
#include "neighevo/error.hpp"
#include "oracles.hpp"

using namespace neighevo;
using neighevo::test::Rng;

namespace {

std::vector<double> random_series(Rng& rng, std::size_t max_len, std::size_t max_value = 9) {
  std::vector<double> out(test::uniform(rng, 1, max_len));
  for (auto& x : out) x = static_cast<double>(test::uniform(rng, 0, max_value));
  return out;
}

DistanceMatrix two_pairs() {
  return DistanceMatrix::from_dense(
      {{0, 1, 10, 10}, {1, 0, 10, 10}, {10, 10, 0, 1}, {10, 10, 1, 0}});
}

std::set<std::set<std::size_t>> groups(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::set<std::size_t>> by;
  for (std::size_t i = 0; i < labels.size(); ++i) by[labels[i]].insert(i);
  std::set<std::set<std::size_t>> out;
  for (auto& [l, g] : by) out.insert(g);
  return out;
}

}  // namespace

TEST_CASE("dtw small cases") {
  const std::vector<double> a{0, 0}, b{1, 1};
  CHECK(dtw_distance(a, b) == 2.0);
  CHECK(dtw_distance(a, a) == 0.0);
  const std::vector<double> x{1, 2, 3}, y{1, 2, 2, 3};
  CHECK(dtw_distance(x, y) == 0.0);
  CHECK_THROWS_AS(dtw_distance(std::vector<double>{}, a), Error);
}

TEST_CASE("dtw equals the full-table reference") {
  Rng rng(107);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto x = random_series(rng, 12), y = random_series(rng, 12);
    const double d = dtw_distance(x, y);
    CHECK(d == test::dtw_table(x, y));
    CHECK(d == dtw_distance(y, x));
    CHECK(d >= 0.0);
    CHECK(dtw_distance(x, x) == 0.0);
  }
}

TEST_CASE("dtw scales with the series") {
  Rng rng(109);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = random_series(rng, 10), y = random_series(rng, 10);
    const double c = static_cast<double>(test::uniform(rng, 0, 7));
    auto cx = x, cy = y;
    for (auto& v : cx) v *= c;
    for (auto& v : cy) v *= c;
    CHECK(dtw_distance(cx, cy) == doctest::Approx(c * dtw_distance(x, y)));
  }
}

TEST_CASE("banded dtw never undercuts the unconstrained distance") {
  Rng rng(113);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = random_series(rng, 12), y = random_series(rng, 12);
    const double free = dtw_distance(x, y);
    const std::size_t w = test::uniform(rng, 0, 4);
    CHECK(dtw_distance(x, y, {w}) >= free);
    CHECK(dtw_distance(x, y, {std::size_t{12}}) == free);
  }
}

TEST_CASE("distance matrix") {
  std::vector<CountSeries> same(4, CountSeries{0, {1, 2, 3}});
  const auto zero = distance_matrix(same);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(zero(i, j) == 0.0);

  // Hand-run tables: a=[0,1,2], b=[2,1,0], c=[1,1,1].
  std::vector<CountSeries> three{{0, {0, 1, 2}}, {1, {2, 1, 0}}, {2, {1, 1, 1}}};
  const auto d = distance_matrix(three);
  CHECK(d(0, 1) == 4.0);
  CHECK(d(0, 2) == 2.0);
  CHECK(d(1, 2) == 2.0);
  CHECK(d(2, 0) == 2.0);

  Rng rng(127);
  std::vector<CountSeries> many;
  for (NodeId v = 0; v < 25; ++v) {
    CountSeries cs{v, {}};
    for (int t = 0; t < 8; ++t) cs.counts.push_back(static_cast<std::uint32_t>(test::uniform(rng, 0, 9)));
    many.push_back(cs);
  }
  const auto serial = distance_matrix(many, {}, 1);
  const auto parallel = distance_matrix(many, {}, 4);
  std::vector<std::size_t> perm(many.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<CountSeries> shuffled;
  for (auto p : perm) shuffled.push_back(many[p]);
  const auto permuted = distance_matrix(shuffled);
  for (std::size_t i = 0; i < many.size(); ++i)
    for (std::size_t j = 0; j < many.size(); ++j) {
      CHECK(serial(i, j) == parallel(i, j));
      CHECK(permuted(i, j) == serial(perm[i], perm[j]));
    }
}

TEST_CASE("distance matrix validation and export") {
  CHECK_THROWS_AS(DistanceMatrix::from_dense({{0, 1}, {2, 0}}), Error);
  CHECK_THROWS_AS(DistanceMatrix::from_dense({{1, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(DistanceMatrix::from_dense({{0, -1}, {-1, 0}}), Error);
  DistanceMatrix d(2);
  CHECK_THROWS_AS(d.set(0, 0, 1.0), Error);
  d.set(1, 0, 2.5);
  std::ostringstream out;
  const std::vector<std::string> labels{"a", "b"};
  write_distance_csv(out, d, labels);
  CHECK(out.str() == "node,a,b\na,0,2.5\nb,2.5,0\n");
}

TEST_CASE("average linkage on two separated pairs") {
  const auto tree = agglomerate(two_pairs());
  REQUIRE(tree.merges().size() == 3);
  CHECK(tree.merges()[0].height == 1.0);
  CHECK(tree.merges()[1].height == 1.0);
  CHECK(tree.merges()[2].height == 10.0);
  CHECK(tree.merges()[0].first == 0);
  CHECK(tree.merges()[0].second == 1);
  CHECK(tree.merges()[2].size == 4);
  CHECK(tree.cut(2) == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(tree.cut(4) == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(tree.cut(1) == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK_THROWS_AS(tree.cut(0), Error);
  CHECK_THROWS_AS(tree.cut(5), Error);

  std::ostringstream out;
  const std::vector<std::string> labels{"a", "b", "c", "d"};
  write_dendrogram(out, tree, labels);
  CHECK(out.str() == "((a,b):1,(c,d):1):10;\n");
}

TEST_CASE("two leaves give one merge") {
  const auto tree = agglomerate(DistanceMatrix::from_dense({{0, 3}, {3, 0}}));
  REQUIRE(tree.merges().size() == 1);
  CHECK(tree.merges()[0].height == 3.0);
  const auto best = select_best_cut(tree, DistanceMatrix::from_dense({{0, 3}, {3, 0}}));
  CHECK(best.k == 2);
  CHECK(best.report.average == 0.0);
  CHECK(best.curve.size() == 1);
}

TEST_CASE("agglomeration matches the naive reference for every linkage") {
  Rng rng(131);
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = test::uniform(rng, 2, 20);
    const auto d = test::random_matrix(rng, n);
    for (auto linkage : {Linkage::kSingle, Linkage::kComplete, Linkage::kAverage}) {
      const auto tree = agglomerate(d, linkage);
      const auto got = test::leaf_sets(tree);
      const auto expected = test::naive_agglomerate(test::dense(d), linkage);
      REQUIRE(got.size() == expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].a == expected[i].a);
        CHECK(got[i].b == expected[i].b);
        CHECK(std::fabs(got[i].height - expected[i].height) <= 1e-12);
      }
      if (linkage == Linkage::kAverage)
        for (std::size_t i = 0; i + 1 < tree.merges().size(); ++i)
          CHECK(tree.merges()[i].height <= tree.merges()[i + 1].height + 1e-12);
    }
  }
}

TEST_CASE("ties go to the smallest leaves") {
  // Every pair at distance 1.
  std::vector<std::vector<double>> flat(5, std::vector<double>(5, 1.0));
  for (std::size_t i = 0; i < 5; ++i) flat[i][i] = 0.0;
  const auto tree = agglomerate(DistanceMatrix::from_dense(flat));
  const auto sets = test::leaf_sets(tree);
  CHECK(sets[0].a == std::vector<std::size_t>{0});
  CHECK(sets[0].b == std::vector<std::size_t>{1});
  CHECK(sets[1].a == std::vector<std::size_t>{0, 1});
  CHECK(sets[1].b == std::vector<std::size_t>{2});
}

TEST_CASE("cuts nest and yield exactly k clusters") {
  Rng rng(137);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = test::uniform(rng, 2, 20);
    const auto tree = agglomerate(test::random_matrix(rng, n));
    for (std::size_t k = 1; k <= n; ++k) {
      const auto labels = tree.cut(k);
      CHECK(groups(labels).size() == k);
      CHECK(*std::max_element(labels.begin(), labels.end()) == k - 1);
      if (k < n) {
        // Every cluster at k+1 lies inside one cluster at k.
        const auto finer = tree.cut(k + 1);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (finer[i] == finer[j]) CHECK(labels[i] == labels[j]);
      }
    }
  }
}

TEST_CASE("silhouette closed forms") {
  const auto d = two_pairs();
  const std::vector<std::size_t> labels{0, 0, 1, 1};
  const auto report = silhouette(d, labels);
  for (double s : report.widths) CHECK(s == doctest::Approx(0.9));
  CHECK(report.average == doctest::Approx(0.9));
  REQUIRE(report.cluster_means.size() == 2);
  CHECK(report.cluster_means[1].first == 1);

  // Node 0 sits at distance 2 from its partner and from the other cluster.
  const auto eq = DistanceMatrix::from_dense({{0, 2, 2, 2}, {2, 0, 5, 5}, {2, 5, 0, 1}, {2, 5, 1, 0}});
  CHECK(silhouette(eq, labels).widths[0] == 0.0);

  const std::vector<std::size_t> singleton{0, 1, 1, 1};
  CHECK(silhouette(d, singleton).widths[0] == 0.0);
  CHECK_THROWS_AS(silhouette(d, std::vector<std::size_t>{0, 0, 0, 0}), Error);
  CHECK_THROWS_AS(silhouette(d, std::vector<std::size_t>{0, 1}), Error);
}

TEST_CASE("silhouette equals the textbook formula") {
  Rng rng(139);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = test::uniform(rng, 2, 20);
    const auto d = test::random_matrix(rng, n);
    std::vector<std::size_t> labels(n);
    const auto k = test::uniform(rng, 2, n);
    for (auto& l : labels) l = test::uniform(rng, 0, k - 1);
    labels[0] = 0;
    labels[1] = 1;
    const auto report = silhouette(d, labels);
    const auto expected = test::naive_silhouette(test::dense(d), labels);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(report.widths[i] - expected[i]) <= 1e-12);
      CHECK(std::fabs(report.widths[i]) <= 1.0);
      sum += expected[i];
    }
    CHECK(std::fabs(report.average - sum / n) <= 1e-12);
  }
}

TEST_CASE("best cut selection") {
  const auto d = two_pairs();
  auto best = select_best_cut(agglomerate(d), d, 15);
  CHECK(best.k == 2);
  CHECK(best.labels == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(best.curve.size() == 2);  // k = 2, 3

  // All equidistant: every cut scores 0 and the smallest k wins.
  std::vector<std::vector<double>> flat(6, std::vector<double>(6, 1.0));
  for (std::size_t i = 0; i < 6; ++i) flat[i][i] = 0.0;
  const auto fd = DistanceMatrix::from_dense(flat);
  best = select_best_cut(agglomerate(fd), fd, 15);
  CHECK(best.k == 2);

  Rng rng(149);
  const auto big = test::random_matrix(rng, 30);
  best = select_best_cut(agglomerate(big), big, 15);
  CHECK(best.curve.size() == 14);
  for (const auto& [k, asw] : best.curve) CHECK(asw <= best.report.average);
  CHECK_THROWS_AS(select_best_cut(agglomerate(big), big, 1), Error);
}

TEST_CASE("best cut follows a relabelling of the nodes") {
  Rng rng(151);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = test::uniform(rng, 3, 15);
    const auto d = test::random_matrix(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DistanceMatrix pd(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pd.set(i, j, d(perm[i], perm[j]));
    const auto a = select_best_cut(agglomerate(d), d);
    const auto b = select_best_cut(agglomerate(pd), pd);
    CHECK(a.k == b.k);
    CHECK(std::fabs(a.report.average - b.report.average) <= 1e-12);
    std::vector<std::size_t> mapped(n);
    for (std::size_t i = 0; i < n; ++i) mapped[i] = a.labels[perm[i]];
    CHECK(groups(mapped) == groups(b.labels));
  }
}

TEST_CASE("cluster exports") {
  const auto d = two_pairs();
  const auto best = select_best_cut(agglomerate(d), d);
  const std::vector<std::string> labels{"a", "b", "c", "d"};
  std::ostringstream clusters, curve;
  write_clusters_csv(clusters, labels, best);
  write_asw_curve_csv(curve, best);
  CHECK(clusters.str().rfind("node,cluster,silhouette\na,0,0.9", 0) == 0);
  CHECK(curve.str().rfind("k,asw\n2,0.9", 0) == 0);
  CHECK(parse_linkage("single") == Linkage::kSingle);
  CHECK(std::string(to_string(Linkage::kComplete)) == "complete");
  CHECK_THROWS_AS(parse_linkage("ward"), Error);
}
