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
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "neighevo/error.hpp"
#include "neighevo/pattern_mining.hpp"
#include "oracles.hpp"

using namespace neighevo;
using neighevo::test::Rng;

namespace {

Pattern P(const std::string& text) { return parse_pattern(text); }

SequenceDatabase db_of(std::size_t total, const std::vector<std::string>& sequences) {
  std::vector<NodeSequence> seqs;
  for (std::size_t v = 0; v < sequences.size(); ++v) {
    NodeSequence s{static_cast<NodeId>(v), {}};
    std::uint32_t t = 0;
    if (!sequences[v].empty())
      for (const auto& itemset : P(sequences[v])) s.entries.push_back({t++, itemset});
    seqs.push_back(std::move(s));
  }
  return SequenceDatabase(total, std::move(seqs));
}

std::vector<std::string> texts(const std::vector<SequentialPattern>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(pattern_to_string(p.itemsets));
  return out;
}

std::set<std::string> text_set(const std::vector<SequentialPattern>& ps) {
  auto t = texts(ps);
  return {t.begin(), t.end()};
}

// Every one-item extension of p: add an item to an itemset, or insert a
// singleton itemset at any position.
std::vector<Pattern> one_item_extensions(const Pattern& p) {
  std::vector<Pattern> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (auto k : kAllEventKinds)
      if (!p[i].contains(k)) {
        auto q = p;
        q[i].insert(k);
        out.push_back(q);
      }
  for (std::size_t pos = 0; pos <= p.size(); ++pos)
    for (auto k : kAllEventKinds) {
      auto q = p;
      q.insert(q.begin() + static_cast<std::ptrdiff_t>(pos), Itemset{k});
      out.push_back(q);
    }
  return out;
}

}  // namespace

TEST_CASE("support threshold arithmetic") {
  CHECK(min_support_count(1.0, 10) == 10);
  CHECK(min_support_count(0.5, 10) == 5);
  CHECK(min_support_count(0.3, 10) == 3);
  CHECK(min_support_count(0.9, 2145) == 1931);
  CHECK(min_support_count(0.001, 10) == 1);
}

TEST_CASE("closed patterns on a uniform database") {
  const auto db = db_of(4, {"(B)(D)", "(B)(D)", "(B)(D)", "(B)(D)"});
  CHECK(texts(mine_closed(db, 1.0)) == std::vector<std::string>{"(B)(D)"});
}

TEST_CASE("small closed-pattern cases") {
  CHECK(texts(mine_closed(db_of(1, {"(B)"}), 1.0)) == std::vector<std::string>{"(B)"});
  CHECK(texts(brute_force_patterns(db_of(1, {"(B)"}), 1.0)) == std::vector<std::string>{"(B)"});
  const auto two = db_of(2, {"(B)(D)", "(B)"});
  CHECK(texts(mine_closed(two, 1.0)) == std::vector<std::string>{"(B)"});
  CHECK(texts(brute_force_patterns(two, 1.0)) == std::vector<std::string>{"(B)"});
  CHECK(mine_closed(db_of(3, {"", "", ""}), 0.5).empty());
  CHECK(mine_closed(SequenceDatabase{}, 0.5).empty());
}

TEST_CASE("closed patterns on the toy network match brute force") {
  const auto db = to_sequence_db(build_event_db(test::fig1()));
  for (double min_sup : {0.5, 0.3, 0.2}) {
    const auto fast = mine_closed(db, min_sup);
    CHECK(fast == brute_force_patterns(db, min_sup));
    CHECK_FALSE(fast.empty());
  }
}

TEST_CASE("high-support singleton survives closure in a large database") {
  // 2038 of 2145 nodes hold (B); one in five of those also holds (D).
  std::vector<std::string> seqs;
  for (int i = 0; i < 2145; ++i) seqs.push_back(i < 2038 ? (i % 5 == 0 ? "(B,D)" : "(B)") : "(E)");
  const auto db = db_of(2145, seqs);
  const auto patterns = mine_closed(db, 0.9);
  REQUIRE(patterns.size() == 1);
  CHECK(pattern_to_string(patterns[0].itemsets) == "(B)");
  CHECK(patterns[0].support_count == 2038);
  CHECK(patterns[0].support_rate == doctest::Approx(0.95).epsilon(0.001));
}

TEST_CASE("closed mining equals brute force on random databases") {
  Rng rng(73);
  for (int trial = 0; trial < 150; ++trial) {
    const auto db = test::random_db(rng, 10, 6);
    const double min_sup = 0.1 * static_cast<double>(test::uniform(rng, 1, 10));
    CHECK(mine_closed(db, min_sup) == brute_force_patterns(db, min_sup));
    CHECK(mine_frequent(db, min_sup) == brute_force_frequent(db, min_sup));
  }
}

TEST_CASE("emitted supports are exact and closed patterns are closed") {
  Rng rng(79);
  for (int trial = 0; trial < 60; ++trial) {
    const auto db = test::random_db(rng, 8, 5);
    const double min_sup = 0.1 * static_cast<double>(test::uniform(rng, 2, 10));
    const auto threshold = min_support_count(min_sup, db.total_nodes());
    for (const auto& p : mine_closed(db, min_sup)) {
      const auto s = support(db, p.itemsets);
      CHECK(s.count == p.support_count);
      CHECK(s.count >= threshold);
      for (const auto& q : one_item_extensions(p.itemsets))
        CHECK(support(db, q).count < p.support_count);
    }
  }
}

TEST_CASE("lower thresholds keep every closed pattern of higher ones") {
  Rng rng(83);
  for (int trial = 0; trial < 60; ++trial) {
    const auto db = test::random_db(rng, 10, 5);
    const auto high = text_set(mine_closed(db, 0.6));
    const auto low = text_set(mine_closed(db, 0.3));
    for (const auto& p : high) CHECK(low.count(p) == 1);
  }
}

TEST_CASE("top-k on identical sequences") {
  const auto db = db_of(3, {"(B)(E)(C)", "(B)(E)(C)", "(B)(E)(C)"});
  const auto top = mine_topk_longest(db, 1, 3);
  REQUIRE(top.size() == 1);
  CHECK(pattern_to_string(top[0].itemsets) == "(B)(E)(C)");
  CHECK(top[0].support_rate == 1.0);
  CHECK(mine_topk_longest(db, 5, 4).empty());
}

TEST_CASE("top-k equals brute force on random databases") {
  Rng rng(89);
  for (int trial = 0; trial < 150; ++trial) {
    const auto db = test::random_db(rng, 8, 5);
    const auto k = test::uniform(rng, 1, 15);
    const auto min_length = test::uniform(rng, 1, 4);
    CHECK(mine_topk_longest(db, k, min_length) == brute_force_topk(db, k, min_length));
  }
}

TEST_CASE("unbounded top-k enumerates the frequent patterns") {
  Rng rng(97);
  for (int trial = 0; trial < 60; ++trial) {
    const auto db = test::random_db(rng, 8, 5);
    const double floor = 0.1 * static_cast<double>(test::uniform(rng, 1, 10));
    const auto all = mine_topk_longest(db, std::size_t{1} << 40, 1, floor);
    CHECK(text_set(all) == text_set(mine_frequent(db, floor)));
    CHECK(all.size() == mine_frequent(db, floor).size());
  }
}

TEST_CASE("planted long pattern in one percent of nodes") {
  Rng rng(101);
  const Pattern planted = P("(B)(B)(E)(E)(E)(C)(C)(C)");
  std::vector<NodeSequence> seqs;
  const std::size_t n = 1000;
  for (NodeId v = 0; v < n; ++v) {
    NodeSequence s{v, {}};
    if (v % 100 == 0) {
      for (std::uint32_t t = 0; t < planted.size(); ++t) s.entries.push_back({t, planted[t]});
    } else {
      const auto len = test::uniform(rng, 0, 6);
      for (std::uint32_t t = 0; t < len; ++t) s.entries.push_back({t, test::random_itemset(rng)});
    }
    seqs.push_back(std::move(s));
  }
  const SequenceDatabase db(n, std::move(seqs));
  const auto top = mine_topk_longest(db, 1, 8);
  REQUIRE(top.size() == 1);
  CHECK(top[0].itemsets == planted);
  CHECK(top[0].support_rate == doctest::Approx(0.010));
}

TEST_CASE("support scan") {
  const auto full = db_of(3, {"(B)", "(B)(D)", "(B,E)"});
  auto steps = min_sup_scan(full);
  REQUIRE(steps.size() == 1);
  CHECK(steps.back().min_sup == 1.0);

  // Best support 0.42: 21 of 50 nodes.
  std::vector<std::string> seqs;
  for (int i = 0; i < 50; ++i) seqs.push_back(i < 21 ? "(B)" : i < 40 ? "(D)" : "(E)");
  seqs[0] = "(B)";
  for (int i = 21; i < 40; ++i) seqs[i] = i % 2 ? "(D)" : "(C)";
  steps = min_sup_scan(db_of(50, seqs));
  CHECK(steps.back().min_sup == doctest::Approx(0.4));
  CHECK_FALSE(steps.back().patterns.empty());
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) CHECK(steps[i].patterns.empty());
  CHECK_THROWS_AS(min_sup_scan(full, 0.0), Error);

  // Nothing reaches 0.1: the scan ends empty at the floor.
  std::vector<std::string> sparse(50, "");
  for (int i = 0; i < 3; ++i) sparse[i] = "(B)";
  steps = min_sup_scan(db_of(50, sparse));
  CHECK(steps.size() == 10);
  CHECK(steps.back().min_sup == doctest::Approx(0.1));
  CHECK(steps.back().patterns.empty());
  steps = min_sup_scan(db_of(50, sparse), 0.25);
  CHECK(steps.back().min_sup == doctest::Approx(0.25));
}

TEST_CASE("scan stops at the tenth below the best support") {
  Rng rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const auto db = test::random_db(rng, 10, 5);
    std::size_t best = 0;
    for (auto k : kAllEventKinds) best = std::max(best, support(db, Pattern{Itemset{k}}).count);
    if (best == 0) continue;
    const double max_support = static_cast<double>(best) / db.total_nodes();
    const auto steps = min_sup_scan(db);
    if (max_support < 1.0) {
      CHECK(steps.back().min_sup == doctest::Approx(std::floor(10 * max_support + 1e-9) / 10));
    } else {
      CHECK(steps.back().min_sup == 1.0);
    }
  }
}

TEST_CASE("mining configuration validation") {
  MiningConfig cfg;
  cfg.min_sup = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.min_sup = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.min_sup = 0.5;
  CHECK_NOTHROW(cfg.validate());
  cfg.mode = MiningConfig::Mode::kTopK;
  cfg.k = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK_THROWS_AS(mine_topk_longest(db_of(1, {"(B)"}), 1, 0), Error);
}

TEST_CASE("brute force refuses large databases") {
  std::vector<std::string> seqs(17, "(B)");
  try {
    brute_force_patterns(db_of(17, seqs), 0.5);
    FAIL("expected the size guard");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSizeGuard);
    CHECK(std::string(e.what()).find("16") != std::string::npos);
  }
  CHECK_THROWS_AS(brute_force_patterns(db_of(1, {"(B)(B)(B)(B)(B)(B)(B)"}), 0.5), Error);
}

TEST_CASE("pattern JSON export") {
  std::ostringstream empty;
  write_patterns_json(empty, {});
  CHECK(empty.str() == "[]\n");

  std::vector<SequentialPattern> ps{{P("(B,D)(E)"), 3, 0.5, std::nullopt},
                                    {P("(B)"), 2, 0.25, std::optional<double>(INFINITY)},
                                    {P("(D)"), 1, 0.125, std::optional<double>(std::nullopt)},
                                    {P("(E)"), 1, 0.125, std::optional<double>(1.5)}};
  std::ostringstream out;
  write_patterns_json(out, ps);
  CHECK(out.str() ==
        "[\n"
        "  {\"pattern\":\"(B,D)(E)\",\"count\":3,\"rate\":0.5},\n"
        "  {\"pattern\":\"(B)\",\"count\":2,\"rate\":0.25,\"growth_rate\":\"inf\"},\n"
        "  {\"pattern\":\"(D)\",\"count\":1,\"rate\":0.125,\"growth_rate\":null},\n"
        "  {\"pattern\":\"(E)\",\"count\":1,\"rate\":0.125,\"growth_rate\":1.5}\n"
        "]\n");
}

TEST_CASE("cluster-scoped growth rates") {
  const auto full = db_of(4, {"(B)", "(B)", "(D)", "(B)"});
  const std::vector<NodeId> cluster{0, 1};
  auto patterns = mine_closed(full.restrict_to(cluster), 1.0);
  attach_growth_rates(patterns, full, cluster);
  REQUIRE(patterns.size() == 1);
  REQUIRE(patterns[0].growth_rate.has_value());
  REQUIRE(patterns[0].growth_rate->has_value());
  CHECK(**patterns[0].growth_rate == doctest::Approx(2.0));
}
