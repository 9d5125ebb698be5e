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

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "neighevo/temporal_graph.hpp"

#ifndef NEIGHEVO_TEST_DATA
#error "NEIGHEVO_TEST_DATA must point at tests/data"
#endif

namespace neighevo::test {

inline std::string data_path(const std::string& name) {
  return std::string(NEIGHEVO_TEST_DATA) + "/" + name;
}

inline DynamicNetwork load_fixture(const std::string& name) {
  std::ifstream in(data_path(name));
  return load_presliced(in);
}

// Three-slice toy network around ego v1 (tests/data/fig1.txt).
inline DynamicNetwork fig1() { return load_fixture("fig1.txt"); }

inline NodeId id(const DynamicNetwork& net, const std::string& label) { return *net.find(label); }

inline std::vector<std::vector<std::string>> named(const DynamicNetwork& net,
                                                   const std::vector<std::vector<NodeId>>& parts) {
  std::vector<std::vector<std::string>> out;
  for (const auto& p : parts) {
    out.emplace_back();
    for (auto v : p) out.back().push_back(net.label(v));
  }
  return out;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace neighevo::test
