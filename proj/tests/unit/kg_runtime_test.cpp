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

#include <gtest/gtest.h>

#include <deque>
#include <functional>
#include <random>

#include "kgv/ir/graph_rows.hpp"
#include "kgv/kg/graph.hpp"
#include "kgv/kg/signal_index.hpp"
#include "support/bundles.hpp"
#include "support/graph_oracle.hpp"

namespace kgv::kg {
namespace {

using ir::EdgeRow;
using ir::NodeRow;

NodeRow node(const std::string& id, const std::string& type) { return {id, type, "r", Json::object()}; }
EdgeRow edge(const std::string& s, const std::string& d, const std::string& t) { return {s, d, t, "r", Json::object()}; }

// CHUNK <- REQ <- PROP <- RES -> CEX
Graph chain() {
  return Graph::build({node("CHUNK-001", "spec_chunk"), node("REQ-001", "requirement"), node("PROP-001", "property"),
                       node("RES-001", "formal_result"), node("CEX-001", "cex_case")},
                      {edge("REQ-001", "CHUNK-001", "derives_from"), edge("PROP-001", "REQ-001", "validates"),
                       edge("RES-001", "PROP-001", "fails"), edge("RES-001", "CEX-001", "contains")});
}

std::vector<std::string> ids(const ContextBundle& b) {
  std::vector<std::string> out;
  for (const auto& m : b.members) out.push_back(m.id);
  std::sort(out.begin(), out.end());
  return out;
}

TEST(BuildGraph, CountsAndDuplicates) {
  BuildStats st;
  Graph g = Graph::build({node("A", "x"), node("B", "x")}, {edge("A", "B", "t")}, &st);
  EXPECT_EQ(g.nodes().size(), 2u);
  EXPECT_EQ(g.edges().size(), 1u);
  g = Graph::build({node("A", "x"), node("B", "x"), node("A", "x")}, {edge("A", "B", "t"), edge("A", "B", "t")}, &st);
  EXPECT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(st.duplicate_edges, 1);
  EXPECT_EQ(st.duplicate_nodes, 1);
  EXPECT_EQ(g.out_edges("A").size(), 1u);
  EXPECT_EQ(g.in_edges("B").size(), 1u);
}

TEST(BuildGraph, Errors) {
  try {
    Graph::build({node("A", "x")}, {edge("A", "B", "t"), edge("C", "A", "t")});
    FAIL();
  } catch (const GraphError& e) {
    std::string m = e.what();
    EXPECT_NE(m.find("edge row 1"), std::string::npos) << m;
    EXPECT_NE(m.find("edge row 2"), std::string::npos) << m;
  }
  EXPECT_THROW(Graph::build({node("A", "x"), node("A", "y")}, {}), GraphError);
}

TEST(BuildGraph, FifoExportCounts) {
  ir::GraphRows rows = ir::export_graph(kgv::testing::fifo_bundle());
  Graph g = Graph::build(rows);
  EXPECT_EQ(g.nodes().size(), rows.nodes.size());
  EXPECT_EQ(g.edges().size(), rows.edges.size());
  Graph h = Graph::build(ir::parse_nodes_csv(ir::nodes_csv(rows.nodes)), ir::parse_edges_csv(ir::edges_csv(rows.edges)));
  EXPECT_EQ(h.nodes().size(), rows.nodes.size());
  EXPECT_EQ(h.edges().size(), rows.edges.size());
}

TEST(Neighborhood, Examples) {
  Graph iso = Graph::build({node("REQ-001", "requirement")}, {});
  ContextBundle b = neighborhood(iso, "REQ-001", TaskKind::kGeneration);
  ASSERT_EQ(b.members.size(), 1u);
  EXPECT_EQ(b.members[0], (ContextMember{"REQ-001", Inclusion::kAnchor, 0}));
  EXPECT_FALSE(b.truncated);

  Graph g = chain();
  EXPECT_EQ(ids(neighborhood(g, "REQ-001", TaskKind::kGeneration)),
            (std::vector<std::string>{"CHUNK-001", "PROP-001", "REQ-001"}));
  auto rep = ids(neighborhood(g, "PROP-001", TaskKind::kCexRepair));
  EXPECT_EQ(rep, (std::vector<std::string>{"CEX-001", "CHUNK-001", "PROP-001", "REQ-001", "RES-001"}));
  ContextBundle r1 = neighborhood(g, "PROP-001", TaskKind::kCexRepair, {1, 20});
  EXPECT_EQ(ids(r1), (std::vector<std::string>{"PROP-001", "REQ-001", "RES-001"}));
  EXPECT_EQ(r1.members[2].reason, Inclusion::kEvidence);
  EXPECT_THROW(neighborhood(g, "NOPE", TaskKind::kGeneration), GraphError);
  EXPECT_FALSE(parse_task_kind("bogus").has_value());
}

TEST(Neighborhood, TypeCapKeepsNearestThenLowestId) {
  std::vector<NodeRow> ns = {node("REQ-001", "requirement")};
  std::vector<EdgeRow> es;
  for (int i = 5; i >= 1; --i) {
    std::string p = "PROP-00" + std::to_string(i);
    ns.push_back(node(p, "property"));
    es.push_back(edge(p, "REQ-001", "validates"));
  }
  Graph g = Graph::build(ns, es);
  ContextBundle b = neighborhood(g, "REQ-001", TaskKind::kGeneration, {2, 2});
  EXPECT_TRUE(b.truncated);
  EXPECT_EQ(ids(b), (std::vector<std::string>{"PROP-001", "PROP-002", "REQ-001"}));
}

using kgv::testing::random_graph;

TEST(Neighborhood, SoundAndDeterministicOnRandomGraphs) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 150; ++iter) {
    Graph g = random_graph(rng);
    auto it = g.nodes().begin();
    std::advance(it, rng() % g.nodes().size());
    std::string anchor = it->first;
    auto task = static_cast<TaskKind>(rng() % 4);
    RetrievalBounds bounds{static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 6)};
    ContextBundle b = neighborhood(g, anchor, task, bounds);
    auto want = kgv::testing::expected_neighborhood(g, anchor, task, bounds);
    ASSERT_EQ(b.members.size(), want.members.size());
    for (std::size_t i = 0; i < want.members.size(); ++i) {
      EXPECT_EQ(b.members[i].id, want.members[i].first);
      EXPECT_EQ(b.members[i].hops, want.members[i].second);
    }
    EXPECT_EQ(b.truncated, want.truncated);
    EXPECT_EQ(b.members[0].id, anchor);
    ContextBundle again = neighborhood(g, anchor, task, bounds);
    EXPECT_EQ(again.members, b.members);
  }
}

TEST(SignalResolution, Examples) {
  SignalIndex idx({"top.fifo.wr_en", "top.a.wr_en", "top.b.wr_en"});
  EXPECT_EQ(resolve_signal(idx, "top.fifo.wr_en"), std::vector<std::string>{"top.fifo.wr_en"});
  EXPECT_EQ(resolve_signal(SignalIndex({"top.a.wr_en", "top.b.wr_en"}), "wr_en"),
            (std::vector<std::string>{"top.a.wr_en", "top.b.wr_en"}));
  EXPECT_TRUE(resolve_signal(idx, "ready").empty());
  for (const auto& p : idx.paths()) EXPECT_EQ(resolve_signal(idx, p), std::vector<std::string>{p});
}

TEST(Invalidate, Examples) {
  Graph g = Graph::build({node("PROP-001", "property"), node("REQ-001", "requirement")},
                         {edge("PROP-001", "REQ-001", "validates")});
  EXPECT_TRUE(invalidate_downstream(g, "PROP-001").empty());
  EXPECT_THROW(invalidate_downstream(g, "REQ-001"), GraphError);

  Graph c = chain();
  EXPECT_EQ(invalidate_downstream(c, "PROP-001"), (std::set<std::string>{"CEX-001", "RES-001"}));
  EXPECT_TRUE(c.find("RES-001")->stale);
  EXPECT_FALSE(c.find("REQ-001")->stale);
  // Stale evidence drops out of later contexts.
  EXPECT_EQ(ids(neighborhood(c, "PROP-001", TaskKind::kCexRepair)),
            (std::vector<std::string>{"CHUNK-001", "PROP-001", "REQ-001"}));

  Graph s = Graph::build({node("PROP-001", "property"), node("PROP-002", "property"), node("COV-001", "coverage_metrics"),
                          node("RES-002", "formal_result")},
                         {edge("PROP-001", "COV-001", "covers"), edge("PROP-002", "COV-001", "covers"),
                          edge("RES-002", "PROP-002", "proves")});
  EXPECT_EQ(invalidate_downstream(s, "PROP-001"), std::set<std::string>{"COV-001"});
  EXPECT_FALSE(s.find("PROP-002")->stale);
  EXPECT_FALSE(s.find("RES-002")->stale);
}

TEST(Invalidate, MatchesReachabilityOracle) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 150; ++iter) {
    Graph g = random_graph(rng, 60);
    std::vector<std::string> props;
    for (const auto& [id, n] : g.nodes()) {
      if (n.type == "property") props.push_back(id);
    }
    if (props.empty()) continue;
    std::string p = props[rng() % props.size()];
    auto want = kgv::testing::invalidation_oracle(g, p);
    Graph copy = g;
    auto got = invalidate_downstream(copy, p);
    EXPECT_EQ(got, want);
    for (const auto& id : got) EXPECT_FALSE(g.find(id)->type == "property" || g.find(id)->type == "requirement");
  }
}

TEST(TracePath, Examples) {
  Graph g = chain();
  EXPECT_EQ(trace_path(g, "REQ-001", "REQ-001"), std::vector<std::string>{"REQ-001"});
  EXPECT_EQ(trace_path(g, "RES-001", "CHUNK-001"),
            (std::vector<std::string>{"RES-001", "PROP-001", "REQ-001", "CHUNK-001"}));
  Graph d = Graph::build({node("A", "x"), node("B", "x")}, {});
  EXPECT_FALSE(trace_path(d, "A", "B").has_value());
}

TEST(TracePath, ShortestAndLexicographicallyLeast) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 100; ++iter) {
    Graph g = random_graph(rng, 14);
    std::vector<std::string> all;
    for (const auto& [id, _] : g.nodes()) all.push_back(id);
    std::string a = all[rng() % all.size()], b = all[rng() % all.size()];
    // Enumerate simple paths by DFS; keep the least among the shortest.
    std::optional<std::vector<std::string>> best;
    std::vector<std::string> cur = {a};
    std::set<std::string> on = {a};
    std::function<void()> dfs = [&] {
      if (best && cur.size() > best->size()) return;
      if (cur.back() == b) {
        if (!best || cur.size() < best->size() || cur < *best) best = cur;
        return;
      }
      std::set<std::string> next;
      for (const auto& e : g.edges()) {
        if (e.src == cur.back()) next.insert(e.dst);
        if (e.dst == cur.back()) next.insert(e.src);
      }
      for (const auto& v : next) {
        if (on.count(v)) continue;
        on.insert(v);
        cur.push_back(v);
        dfs();
        cur.pop_back();
        on.erase(v);
      }
    };
    dfs();
    EXPECT_EQ(trace_path(g, a, b), best) << a << " -> " << b;
  }
}

TEST(TracePath, FifoResultsReachSpecChunks) {
  Graph g = Graph::build(ir::export_graph(kgv::testing::fifo_bundle()));
  for (const auto& [id, n] : g.nodes()) {
    if (n.type != "formal_result") continue;
    bool found = false;
    for (const auto& [c, m] : g.nodes()) {
      if (m.type == "spec_chunk" && trace_path(g, id, c)) found = true;
    }
    EXPECT_TRUE(found) << id;
  }
}

TEST(RenderHtml, SelfContained) {
  Graph g = Graph::build(ir::export_graph(kgv::testing::fifo_bundle()));
  std::string html = render_html(g, "fifo <run>");
  EXPECT_NE(html.find("<title>fifo &lt;run&gt;</title>"), std::string::npos);
  for (const auto& [id, _] : g.nodes()) EXPECT_NE(html.find("data-id=\"" + id + "\""), std::string::npos) << id;
  EXPECT_EQ(html.find(" src="), std::string::npos);
  EXPECT_EQ(html.find("href="), std::string::npos);
  EXPECT_EQ(html.find("<link"), std::string::npos);
  EXPECT_EQ(html.find("https:"), std::string::npos);
  EXPECT_EQ(html, render_html(g, "fifo <run>"));
}

}  // namespace
}  // namespace kgv::kg
