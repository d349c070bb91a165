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

#include "kgv/kg/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <tuple>

namespace kgv::kg {

namespace {

const std::vector<std::size_t> kNoEdges;

constexpr std::array<std::string_view, 4> kTaskNames = {"generation", "syntax_repair", "cex_repair", "coverage"};
constexpr std::array<std::string_view, 4> kInclusionNames = {"anchor", "trace", "structure", "evidence"};

bool is_trace(std::string_view t) { return t == "derives_from" || t == "validates"; }
bool is_structure(std::string_view t) {
  return t == ir::kEdgeContains || t == ir::kEdgePrecedes || t == ir::kEdgeMentions || t == ir::kEdgeReferences;
}
bool is_evidence_edge(std::string_view t) { return t == "proves" || t == "fails" || t == "covers"; }

}  // namespace

std::string_view to_string(TaskKind t) { return kTaskNames[static_cast<std::size_t>(t)]; }

std::optional<TaskKind> parse_task_kind(std::string_view s) {
  for (std::size_t i = 0; i < kTaskNames.size(); ++i) {
    if (kTaskNames[i] == s) return static_cast<TaskKind>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Inclusion r) { return kInclusionNames[static_cast<std::size_t>(r)]; }

Graph Graph::build(const std::vector<ir::NodeRow>& nodes, const std::vector<ir::EdgeRow>& edges,
                   BuildStats* stats) {
  Graph g;
  BuildStats local;
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& r = nodes[i];
    auto [it, fresh] = g.nodes_.emplace(r.id, Node{r.id, r.type, r.run_id, r.attributes, false});
    if (fresh) continue;
    if (it->second.type != r.type || it->second.attributes != r.attributes || it->second.run_id != r.run_id) {
      problems.push_back("node row " + std::to_string(i + 1) + ": id '" + r.id + "' repeated with different contents");
    } else {
      ++local.duplicate_nodes;
    }
  }
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& r = edges[i];
    bool ok = true;
    for (const auto* id : {&r.src, &r.dst}) {
      if (!g.nodes_.count(*id)) {
        problems.push_back("edge row " + std::to_string(i + 1) + " (" + r.src + " -" + r.type + "-> " + r.dst +
                           "): no node '" + *id + "'");
        ok = false;
      }
    }
    if (!ok) continue;
    if (!seen.insert({r.src, r.dst, r.type}).second) {
      ++local.duplicate_edges;
      continue;
    }
    g.out_[r.src].push_back(g.edges_.size());
    g.in_[r.dst].push_back(g.edges_.size());
    g.edges_.push_back({r.src, r.dst, r.type, r.attributes});
  }
  if (!problems.empty()) {
    std::string msg = "graph build failed:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw GraphError(msg);
  }
  if (stats) *stats = local;
  return g;
}

const Node* Graph::find(std::string_view id) const {
  auto it = nodes_.find(std::string(id));
  return it == nodes_.end() ? nullptr : &it->second;
}

const std::vector<std::size_t>& Graph::out_edges(const std::string& id) const {
  auto it = out_.find(id);
  return it == out_.end() ? kNoEdges : it->second;
}

const std::vector<std::size_t>& Graph::in_edges(const std::string& id) const {
  auto it = in_.find(id);
  return it == in_.end() ? kNoEdges : it->second;
}

void Graph::mark_stale(const std::string& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw GraphError("no node '" + id + "'");
  it->second.stale = true;
  it->second.attributes["stale"] = true;
}

bool edge_admitted(TaskKind task, std::string_view t) {
  if (is_trace(t) || is_structure(t)) return true;
  return task != TaskKind::kGeneration && is_evidence_edge(t);
}

bool is_diagnostic_type(std::string_view t) {
  return t == ir::kNodeFormalResult || t == ir::kNodeCexCase || t == ir::kNodeCoverage;
}

ContextBundle neighborhood(const Graph& g, const std::string& anchor, TaskKind task, const RetrievalBounds& bounds) {
  if (!g.contains(anchor)) throw GraphError("unknown anchor '" + anchor + "'");
  if (bounds.radius < 0 || bounds.type_cap < 0) throw GraphError("retrieval bounds must be nonnegative");
  auto admitted_node = [&](const Node& n) {
    if (n.stale) return false;
    return task != TaskKind::kGeneration || !is_diagnostic_type(n.type);
  };

  // Hop distance over admitted edges; the first edge to reach a node (in
  // (hops, predecessor id, edge order)) names the inclusion reason.
  std::map<std::string, std::pair<int, Inclusion>> dist;
  dist[anchor] = {0, Inclusion::kAnchor};
  std::vector<std::string> frontier = {anchor};
  for (int hop = 1; hop <= bounds.radius && !frontier.empty(); ++hop) {
    std::sort(frontier.begin(), frontier.end());
    std::vector<std::string> next;
    for (const auto& u : frontier) {
      auto visit = [&](const Edge& e, const std::string& v) {
        if (!edge_admitted(task, e.type) || dist.count(v) || !admitted_node(*g.find(v))) return;
        Inclusion why = is_trace(e.type) ? Inclusion::kTrace
                        : is_structure(e.type) ? Inclusion::kStructure
                                               : Inclusion::kEvidence;
        dist[v] = {hop, why};
        next.push_back(v);
      };
      for (std::size_t i : g.out_edges(u)) visit(g.edges()[i], g.edges()[i].dst);
      for (std::size_t i : g.in_edges(u)) visit(g.edges()[i], g.edges()[i].src);
    }
    frontier = std::move(next);
  }

  std::vector<ContextMember> order;
  for (const auto& [id, d] : dist) order.push_back({id, d.second, d.first});
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return std::tie(a.hops, a.id) < std::tie(b.hops, b.id); });
  ContextBundle out{anchor, task, {}, false};
  std::map<std::string, int> per_type;
  for (auto& m : order) {
    if (m.hops > 0) {
      int& n = per_type[g.find(m.id)->type];
      if (n >= bounds.type_cap) {
        out.truncated = true;
        continue;
      }
      ++n;
    }
    out.members.push_back(std::move(m));
  }
  return out;
}

std::set<std::string> invalidate_downstream(Graph& g, const std::string& prop_id) {
  const Node* p = g.find(prop_id);
  if (!p) throw GraphError("unknown node '" + prop_id + "'");
  if (p->type != ir::kNodeProperty) throw GraphError("'" + prop_id + "' is a " + p->type + ", not a property");
  std::set<std::string> out;
  std::deque<std::string> queue = {prop_id};
  auto evidence_step = [](const std::string& t) { return is_evidence_edge(t) || t == ir::kEdgeContains; };
  while (!queue.empty()) {
    std::string u = queue.front();
    queue.pop_front();
    auto visit = [&](const Edge& e, const std::string& v) {
      if (!evidence_step(e.type) || out.count(v) || !is_diagnostic_type(g.find(v)->type)) return;
      out.insert(v);
      queue.push_back(v);
    };
    for (std::size_t i : g.out_edges(u)) visit(g.edges()[i], g.edges()[i].dst);
    for (std::size_t i : g.in_edges(u)) visit(g.edges()[i], g.edges()[i].src);
  }
  for (const auto& id : out) g.mark_stale(id);
  return out;
}

std::optional<std::vector<std::string>> trace_path(const Graph& g, const std::string& from, const std::string& to) {
  if (!g.contains(from) || !g.contains(to)) return std::nullopt;
  auto neighbors = [&](const std::string& u) {
    std::set<std::string> n;
    for (std::size_t i : g.out_edges(u)) n.insert(g.edges()[i].dst);
    for (std::size_t i : g.in_edges(u)) n.insert(g.edges()[i].src);
    return n;
  };
  std::map<std::string, int> dist = {{to, 0}};
  std::deque<std::string> queue = {to};
  while (!queue.empty() && !dist.count(from)) {
    std::string u = queue.front();
    queue.pop_front();
    for (const auto& v : neighbors(u)) {
      if (dist.emplace(v, dist[u] + 1).second) queue.push_back(v);
    }
  }
  if (!dist.count(from)) return std::nullopt;
  std::vector<std::string> path = {from};
  while (path.back() != to) {
    int d = dist.at(path.back());
    for (const auto& v : neighbors(path.back())) {  // ascending id
      auto it = dist.find(v);
      if (it != dist.end() && it->second == d - 1) {
        path.push_back(v);
        break;
      }
    }
  }
  return path;
}

}  // namespace kgv::kg
