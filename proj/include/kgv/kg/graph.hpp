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

#ifndef KGV_KG_GRAPH_HPP_
#define KGV_KG_GRAPH_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgv/base/error.hpp"
#include "kgv/ir/graph_rows.hpp"

namespace kgv::kg {

using Json = ir::Json;

struct Node {
  std::string id;
  std::string type;
  std::string run_id;
  Json attributes = Json::object();
  bool stale = false;
};

struct Edge {
  std::string src;
  std::string dst;
  std::string type;
  Json attributes = Json::object();
};

struct BuildStats {
  int duplicate_nodes = 0;  // identical repeats dropped
  int duplicate_edges = 0;  // repeated (src, dst, type) triples dropped
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class Graph {
 public:
  // Throws GraphError naming every edge row with a missing endpoint, or a
  // node id repeated with different contents.
  static Graph build(const std::vector<ir::NodeRow>& nodes, const std::vector<ir::EdgeRow>& edges,
                     BuildStats* stats = nullptr);
  static Graph build(const ir::GraphRows& rows, BuildStats* stats = nullptr) {
    return build(rows.nodes, rows.edges, stats);
  }

  const std::map<std::string, Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Node* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }
  // Edge indices leaving / entering a node, in edge order.
  const std::vector<std::size_t>& out_edges(const std::string& id) const;
  const std::vector<std::size_t>& in_edges(const std::string& id) const;

  void mark_stale(const std::string& id);

 private:
  std::map<std::string, Node> nodes_;
  std::vector<Edge> edges_;
  std::map<std::string, std::vector<std::size_t>> out_;
  std::map<std::string, std::vector<std::size_t>> in_;
};

enum class TaskKind { kGeneration, kSyntaxRepair, kCexRepair, kCoverage };
std::string_view to_string(TaskKind t);
std::optional<TaskKind> parse_task_kind(std::string_view s);

enum class Inclusion { kAnchor, kTrace, kStructure, kEvidence };
std::string_view to_string(Inclusion r);

struct RetrievalBounds {
  int radius = 2;
  int type_cap = 20;
};

struct ContextMember {
  std::string id;
  Inclusion reason = Inclusion::kAnchor;  // family of the edge that first reached it
  int hops = 0;
  bool operator==(const ContextMember&) const = default;
};

struct ContextBundle {
  std::string anchor_id;
  TaskKind task = TaskKind::kGeneration;
  std::vector<ContextMember> members;  // sorted by (hops, id)
  bool truncated = false;
};

// Edge types a task may traverse.
bool edge_admitted(TaskKind task, std::string_view edge_type);
// Node types that only repair tasks see.
bool is_diagnostic_type(std::string_view node_type);

ContextBundle neighborhood(const Graph& g, const std::string& anchor, TaskKind task,
                           const RetrievalBounds& bounds = {});

// Results, counterexamples and coverage records downstream of a property;
// marks them stale. Throws GraphError for a non-property anchor.
std::set<std::string> invalidate_downstream(Graph& g, const std::string& prop_id);

// Shortest undirected path; lexicographically least id sequence on ties.
std::optional<std::vector<std::string>> trace_path(const Graph& g, const std::string& from, const std::string& to);

// Self-contained HTML page drawing the graph.
std::string render_html(const Graph& g, const std::string& title);

}  // namespace kgv::kg

#endif  // KGV_KG_GRAPH_HPP_
