// Copyright 2026 The kgverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KGV_TESTS_SUPPORT_GRAPH_ORACLE_HPP_
#define KGV_TESTS_SUPPORT_GRAPH_ORACLE_HPP_

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kgv/kg/graph.hpp"

namespace kgv::testing {

// Random typed multigraph with ids N1000.. over all node and edge types.
kg::Graph random_graph(std::mt19937_64& rng, int max_nodes = 200);

// Unconstrained BFS over the edges and nodes admitted for `task`.
std::map<std::string, int> ball(const kg::Graph& g, const std::string& anchor, kg::TaskKind task, int radius);

// Expected neighborhood: nearest-first, id-ascending, capped per type after
// distances are known.
struct ExpectedMembers {
  std::vector<std::pair<std::string, int>> members;  // id, hops
  bool truncated = false;
};
ExpectedMembers expected_neighborhood(const kg::Graph& g, const std::string& anchor, kg::TaskKind task,
                                      const kg::RetrievalBounds& bounds);

// Fixpoint of evidence edges from `prop`, restricted to evidence nodes.
std::set<std::string> invalidation_oracle(const kg::Graph& g, const std::string& prop);

}  // namespace kgv::testing

#endif  // KGV_TESTS_SUPPORT_GRAPH_ORACLE_HPP_
