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

#include <istream>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "neighevo/detail/text_format.hpp"
#include "neighevo/error.hpp"
#include "neighevo/events.hpp"

namespace neighevo {

namespace {
constexpr std::string_view kCsvHeader =
    "node,interval,kind,component_side,component_index,component_size";

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}
}  // namespace

EventProfile make_profile(const EventDatabase& db,
                          std::span<const std::string> labels) {
  if (labels.size() != db.node_count())
    throw Error(ErrorCode::kContract, "label table does not match the database");
  EventProfile p;
  p.labels.assign(labels.begin(), labels.end());
  p.interval_count = db.interval_count();
  const std::size_t cells = db.node_count() * p.interval_count;
  p.itemsets.reserve(cells);
  p.counts.reserve(cells);
  for (NodeId v = 0; v < db.node_count(); ++v) {
    for (std::size_t t = 0; t < p.interval_count; ++t) {
      p.itemsets.push_back(db.itemset(v, t));
      p.counts.push_back(db.count(v, t));
    }
  }
  return p;
}

void write_events_csv(std::ostream& out, const EventDatabase& db,
                      std::span<const std::string> labels) {
  if (labels.size() != db.node_count())
    throw Error(ErrorCode::kContract, "label table does not match the database");
  out << kCsvHeader << '\n';
  for (const auto& r : db.records()) {
    out << labels[r.node] << ',' << r.interval << ',' << kind_letter(r.kind)
        << ',' << (r.side() == ComponentSide::kNext ? "next" : "prev") << ','
        << r.component << ',' << r.component_size << '\n';
  }
}

EventDatabase read_events_csv(std::istream& in, const DynamicNetwork& net) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<EventRecord> records;
  const std::size_t intervals = net.interval_count();
  while (std::getline(in, line)) {
    ++line_no;
    auto text = detail::trim(line);
    if (text.empty()) continue;
    if (!header) {
      if (text != kCsvHeader)
        throw ParseError(line_no, "unexpected events CSV header");
      header = true;
      continue;
    }
    auto f = split_csv(text);
    if (f.size() != 6) throw ParseError(line_no, "expected 6 columns");
    auto node = net.find(f[0]);
    if (!node)
      throw ParseError(line_no, "unknown node '" + std::string(f[0]) + "'");
    auto interval = detail::parse_int(f[1]);
    if (!interval || *interval < 0 ||
        static_cast<std::size_t>(*interval) >= intervals)
      throw ParseError(line_no, "bad interval '" + std::string(f[1]) + "'");
    if (f[2].size() != 1 || !kind_from_letter(f[2][0]))
      throw ParseError(line_no, "bad event kind '" + std::string(f[2]) + "'");
    const auto kind = *kind_from_letter(f[2][0]);
    const auto expected_side = side_of(kind) == ComponentSide::kNext ? "next" : "prev";
    if (f[3] != expected_side)
      throw ParseError(line_no, "component side does not match the event kind");
    auto index = detail::parse_int(f[4]);
    auto size = detail::parse_int(f[5]);
    if (!index || *index < 0 || !size || *size <= 0)
      throw ParseError(line_no, "bad component index or size");
    records.push_back({*node, static_cast<std::uint32_t>(*interval), kind,
                       static_cast<std::uint32_t>(*index),
                       static_cast<std::uint32_t>(*size)});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading events CSV");
  if (!header) throw ParseError(0, "events CSV has no header");
  return EventDatabase(net.node_count(), net.slice_count(), std::move(records));
}

void write_events_jsonl(std::ostream& out, const EventProfile& profile) {
  for (NodeId v = 0; v < profile.node_count(); ++v) {
    const std::string node = detail::json_escape(profile.labels[v]);
    for (std::size_t t = 0; t < profile.interval_count; ++t) {
      out << "{\"node\":\"" << node << "\",\"interval\":" << t
          << ",\"itemset\":\"" << profile.itemset(v, t).letters()
          << "\",\"count\":" << profile.count(v, t) << "}\n";
    }
  }
}

EventProfile read_events_jsonl(std::istream& in) {
  struct Row {
    NodeId node;
    std::size_t interval;
    Itemset itemset;
    std::uint32_t count;
  };
  std::vector<Row> rows;
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  std::size_t intervals = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      const auto label = obj.at("node").get<std::string>();
      const auto interval = obj.at("interval").get<std::int64_t>();
      const auto letters = obj.at("itemset").get<std::string>();
      const auto count = obj.at("count").get<std::int64_t>();
      if (interval < 0 || count < 0)
        throw ParseError(line_no, "negative interval or count");
      const auto itemset = Itemset::from_letters(letters);
      if (static_cast<std::size_t>(count) < itemset.size())
        throw ParseError(line_no, "count smaller than the number of kinds");
      auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
      if (inserted) labels.push_back(label);
      intervals = std::max(intervals, static_cast<std::size_t>(interval) + 1);
      rows.push_back({it->second, static_cast<std::size_t>(interval), itemset,
                      static_cast<std::uint32_t>(count)});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, std::string("malformed event line: ") + e.what());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading events JSON lines");

  EventProfile p;
  p.labels = std::move(labels);
  p.interval_count = intervals;
  const std::size_t cells = p.labels.size() * intervals;
  if (rows.size() != cells)
    throw Error(ErrorCode::kLoad,
                "event lines must cover every (node, interval) pair exactly once");
  p.itemsets.assign(cells, Itemset{});
  p.counts.assign(cells, 0);
  std::vector<char> seen(cells, 0);
  for (const auto& r : rows) {
    const std::size_t c = static_cast<std::size_t>(r.node) * intervals + r.interval;
    if (seen[c])
      throw Error(ErrorCode::kLoad, "duplicate (node, interval) pair for '" +
                                        p.labels[r.node] + "'");
    seen[c] = 1;
    p.itemsets[c] = r.itemset;
    p.counts[c] = r.count;
  }
  return p;
}

}  // namespace neighevo
