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

#include <random>

#include "kgv/formal/engine.hpp"
#include "kgv/formal/external.hpp"
#include "support/brute_force.hpp"
#include "support/engine_oracle.hpp"
#include "support/fixtures.hpp"

namespace kgv::formal {
namespace {

using kgv::testing::bind_text;

struct Loaded {
  rtl::DesignModel design;
  rtl::NetModel net;
};

Loaded load(const std::string& src, const std::string& top) {
  auto m = rtl::parse_rtl(src, top + ".v");
  EXPECT_TRUE(m.ok()) << m.diags.format(top + ".v");
  auto n = rtl::elaborate(*m, top);
  EXPECT_TRUE(n.ok()) << n.diags.format(top + ".v");
  return {*m, *n};
}

const char* kToggle =
    "module t(input clk, output reg x);\n"
    "  always @(posedge clk) x <= !x;\n"
    "endmodule\n";

sva::BoundProperty one(const Loaded& d, const std::string& body, const std::string& kind = "assert") {
  auto v = bind_text(d.design, d.net,
                     "default clocking @(posedge clk); endclocking\n" + kind + " property (" + body + ");\n");
  return v.at(0);
}

TEST(Check, ToggleAlternates) {
  Loaded d = load(kToggle, "t");
  CheckResult r = check(d.net, one(d, "x |-> ##1 !x"), {});
  EXPECT_EQ(r.result.status, ir::FormalStatus::kProven);
  EXPECT_TRUE(r.antecedent_matched);
  // x=0, x=1, then x=0 with one pending obligation.
  EXPECT_EQ(r.result.proof_depth, 3);
  EXPECT_EQ(r.states_explored, 3u);
}

TEST(Check, ToggleHoldFailsOneCycleAfterX) {
  Loaded d = load(kToggle, "t");
  CheckResult r = check(d.net, one(d, "x |-> ##1 x"), {});
  ASSERT_EQ(r.result.status, ir::FormalStatus::kCex);
  ASSERT_TRUE(r.trace);
  // x is 0 at reset and first holds at cycle 1.
  EXPECT_EQ(r.trace->failure_cycle, 2);
  EXPECT_EQ(r.trace->cycles.size(), 3u);
  EXPECT_EQ(r.trace->cycles[1].state.at("t.x"), 1u);
  EXPECT_EQ(r.trace->violated_at_line, 2);
  EXPECT_TRUE(replay_consistent(d.net, *r.trace));
  auto overlapped_next = check(d.net, one(d, "x |=> x"), {});
  EXPECT_EQ(overlapped_next.result.status, ir::FormalStatus::kCex);
  EXPECT_EQ(overlapped_next.trace->failure_cycle, 2);
}

TEST(Check, UnsatisfiableAntecedentIsVacuous) {
  Loaded d = load(kToggle, "t");
  CheckResult r = check(d.net, one(d, "(x && !x) |-> x"), {});
  EXPECT_EQ(r.result.status, ir::FormalStatus::kVacuous);
  EXPECT_FALSE(r.antecedent_matched);
}

TEST(Check, BudgetsAndErrors) {
  Loaded d = load(kToggle, "t");
  auto p = one(d, "x |-> ##1 !x");
  CheckConfig cfg;
  cfg.max_depth = 1;
  CheckResult r = check(d.net, p, cfg);
  EXPECT_EQ(r.result.status, ir::FormalStatus::kBounded);
  EXPECT_EQ(r.result.proof_depth, 1);
  cfg.max_depth = 64;
  cfg.max_states = 1;
  EXPECT_EQ(check(d.net, p, cfg).result.status, ir::FormalStatus::kBounded);
  cfg.max_states = 0;
  EXPECT_THROW(check(d.net, p, cfg), Error);
  sva::BoundProperty bad = p;
  bad.consequent[0].expr = make_ref("t.nope", 1);
  CheckResult e = check(d.net, bad, {});
  EXPECT_EQ(e.result.status, ir::FormalStatus::kError);
  EXPECT_NE(e.result.message.find("t.nope"), std::string::npos);
}

TEST(Check, DisableIffCancelsAttempts) {
  Loaded d = load(
      "module r(input clk, input rst, output reg [1:0] c);\n"
      "  always @(posedge clk) if (rst) c <= 2'd0; else c <= c + 2'd1;\n"
      "endmodule\n",
      "r");
  EXPECT_EQ(check(d.net, one(d, "c != 2'd3"), {}).result.status, ir::FormalStatus::kCex);
  CheckConfig cfg;
  cfg.input_assumptions = bind_text(d.design, d.net,
                                    "default clocking @(posedge clk); endclocking\n"
                                    "assume property ($past(c) == 2'd2 |-> rst);\n");
  // rst forced once c reaches 2 on the previous cycle keeps c below 3... but
  // the reset lands one cycle late, so 3 is still reachable.
  CheckResult r = check(d.net, one(d, "c != 2'd3"), cfg);
  EXPECT_EQ(r.result.status, ir::FormalStatus::kCex);
  cfg.input_assumptions = bind_text(d.design, d.net,
                                    "default clocking @(posedge clk); endclocking\n"
                                    "assume property (c == 2'd2 |-> rst);\n");
  EXPECT_EQ(check(d.net, one(d, "c != 2'd3"), cfg).result.status, ir::FormalStatus::kProven);
  EXPECT_EQ(check(d.net, one(d, "disable iff (rst) c == 2'd1 |=> c == 2'd2"), {}).result.status,
            ir::FormalStatus::kProven);
  EXPECT_EQ(check(d.net, one(d, "c == 2'd1 |=> c == 2'd2"), {}).result.status, ir::FormalStatus::kCex);
}

TEST(Check, ShortestLexLeastCounterexample) {
  Loaded d = load(
      "module s(input clk, input a, input b, output reg q);\n"
      "  always @(posedge clk) q <= a ^ b;\n"
      "endmodule\n",
      "s");
  CheckResult r = check(d.net, one(d, "!q"), {});
  ASSERT_EQ(r.result.status, ir::FormalStatus::kCex);
  ASSERT_EQ(r.trace->cycles.size(), 2u);
  // (a, b) = (0, 1) is the least input that sets q.
  EXPECT_EQ(r.trace->cycles[0].inputs.at("s.a"), 0u);
  EXPECT_EQ(r.trace->cycles[0].inputs.at("s.b"), 1u);
}

class FifoTest : public ::testing::Test {
 protected:
  void SetUp() override { d_ = load(kgv::testing::read_fixture("fifo.v"), "fifo"); }
  Loaded d_;
};

TEST_F(FifoTest, CoverFullNeedsTwoWrites) {
  CheckResult r = check_cover(d_.net, one(d_, "full", "cover"), {});
  ASSERT_EQ(r.result.status, ir::FormalStatus::kProven);
  ASSERT_TRUE(r.trace);
  EXPECT_EQ(r.trace->cycles.size(), 3u);
  EXPECT_EQ(r.trace->cycles[0].inputs.at("fifo.wr_en"), 1u);
  EXPECT_EQ(r.trace->cycles[1].inputs.at("fifo.wr_en"), 1u);
  EXPECT_EQ(r.trace->cycles[2].state.at("fifo.count"), 2u);
  std::string why;
  EXPECT_TRUE(kgv::testing::trace_shows(d_.net, one(d_, "full", "cover"), *r.trace, {}, &why)) << why;
}

TEST_F(FifoTest, CoverFullAndEmptyIsVacuous) {
  EXPECT_EQ(check_cover(d_.net, one(d_, "full && empty", "cover"), {}).result.status,
            ir::FormalStatus::kVacuous);
  CheckConfig cfg;
  cfg.max_depth = 2;
  EXPECT_EQ(check_cover(d_.net, one(d_, "full", "cover"), cfg).result.status, ir::FormalStatus::kBounded);
  EXPECT_THROW(check_cover(d_.net, one(d_, "full"), {}), Error);
}

TEST_F(FifoTest, Invariants) {
  EXPECT_EQ(check(d_.net, one(d_, "count <= 2'd2"), {}).result.status, ir::FormalStatus::kProven);
  EXPECT_EQ(check(d_.net, one(d_, "!(full && empty)"), {}).result.status, ir::FormalStatus::kProven);
  EXPECT_EQ(check(d_.net, one(d_, "full && wr_en && !rd_en |=> full"), {}).result.status,
            ir::FormalStatus::kCex);  // rst may fire
  EXPECT_EQ(check(d_.net, one(d_, "disable iff (rst) full && wr_en && !rd_en |=> full"), {}).result.status,
            ir::FormalStatus::kProven);
  EXPECT_EQ(check(d_.net, one(d_, "full && !rst && !rd_en |=> full"), {}).result.status,
            ir::FormalStatus::kProven);
}

TEST_F(FifoTest, ReachabilityWithAndWithoutAssumption) {
  Reachability all = statement_reachability(d_.net, {});
  EXPECT_FALSE(all.partial);
  EXPECT_TRUE(all.unreachable.empty());
  EXPECT_EQ(all.covered.size(), d_.design.statements.size());
  EXPECT_DOUBLE_EQ(coverage_metrics(all, 0).reachable_pct, 100.0);

  CheckConfig cfg;
  cfg.input_assumptions = bind_text(d_.design, d_.net,
                                    "default clocking @(posedge clk); endclocking\n"
                                    "assume property (!wr_en);\n");
  Reachability r = statement_reachability(d_.net, cfg);
  // Oracle: statements whose guard holds on some admissible path.
  auto o = kgv::testing::brute_force(d_.net, nullptr, cfg.input_assumptions, 6);
  std::vector<std::string> expected(o.covered_statements.begin(), o.covered_statements.end());
  std::sort(expected.begin(), expected.end(), sva::id_less);
  EXPECT_EQ(r.covered, expected);
  EXPECT_FALSE(r.unreachable.empty());
  for (const auto& id : r.covered) {
    EXPECT_TRUE(std::find(all.covered.begin(), all.covered.end(), id) != all.covered.end());
  }
  ir::CoverageMetrics m = coverage_metrics(r, 0);
  EXPECT_LT(m.reachable_pct, 100.0);
  EXPECT_NEAR(m.reachable_pct, 100.0 * r.covered.size() / (r.covered.size() + r.unreachable.size()), 0.05);
  EXPECT_EQ(m.dead_code.size(), r.unreachable.size());
}

TEST(Coverage, ConstantFalseArmIsUnreachable) {
  Loaded d = load(
      "module z(input clk, input a, output reg q);\n"
      "  always @(posedge clk) begin\n"
      "    if (1'b0) q <= 1'b1;\n"
      "    else q <= a;\n"
      "  end\n"
      "endmodule\n",
      "z");
  auto props = bind_text(d.design, d.net,
                         "default clocking @(posedge clk); endclocking\n"
                         "assert property ((a && !a) |-> q);\n"
                         "assert property (q |-> 1'b1);\n");
  ir::CoverageMetrics m = coverage(d.net, props, {});
  // The dead arm and the assignment under it.
  EXPECT_EQ(m.unreachable_statements, (std::vector<std::string>{"S1", "S2"}));
  EXPECT_EQ(m.covered_statements, (std::vector<std::string>{"S3", "S4"}));
  EXPECT_EQ(m.vacuity_count, 1);
  EXPECT_DOUBLE_EQ(m.reachable_pct, 50.0);
  ASSERT_EQ(m.dead_code.size(), 2u);
  EXPECT_EQ(m.dead_code[0].classification, ir::DeadCodeClass::kGap);
  EXPECT_FALSE(m.proof_core_ratio.has_value());
}

TEST(CheckAll, OrderedAndThreadIndependent) {
  Loaded d = load(kgv::testing::read_fixture("fifo.v"), "fifo");
  auto props = bind_text(d.design, d.net,
                         "default clocking @(posedge clk); endclocking\n"
                         "PROP_010: assert property (count <= 2'd2);\n"
                         "PROP_002: cover property (full);\n"
                         "PROP_001: assert property (full |-> !empty);\n"
                         "PROP_003: assert property (wr_en |=> !empty);\n");
  CheckConfig cfg;
  cfg.measure_runtime = false;
  auto a = check_all(d.net, props, cfg, 1);
  auto b = check_all(d.net, props, cfg, 3);
  ASSERT_EQ(a.size(), 4u);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ids.push_back(a[i].result.prop_id);
    EXPECT_EQ(a[i].result, b[i].result);
    EXPECT_EQ(a[i].trace, b[i].trace);
  }
  EXPECT_EQ(ids, (std::vector<std::string>{"PROP-001", "PROP-002", "PROP-003", "PROP-010"}));
}

TEST(EngineOracle, RandomDesignsAgreeWithBruteForce) {
  std::mt19937_64 rng(20251016);
  kgv::testing::Comparison cmp;
  CheckConfig cfg;
  cfg.max_depth = 16;
  for (int i = 0; i < 60; ++i) {
    auto c = kgv::testing::random_engine_case(rng);
    kgv::testing::compare_case(c, cfg, cmp);
  }
  for (const auto& m : cmp.mismatches) ADD_FAILURE() << m;
  EXPECT_GT(cmp.cex, 0);
  EXPECT_GT(cmp.proven, 0);
  RecordProperty("verdicts", cmp.verdicts);
  RecordProperty("mix", std::to_string(cmp.cex) + "/" + std::to_string(cmp.proven) + "/" + std::to_string(cmp.vacuous) + "/" + std::to_string(cmp.bounded));
}

TEST(EngineOracle, AssumptionsNeverGrowCoverage) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 40; ++i) {
    auto c = kgv::testing::random_engine_case(rng);
    if (c.assumptions.empty()) continue;
    Reachability free = statement_reachability(c.net, {});
    CheckConfig cfg;
    cfg.input_assumptions = c.assumptions;
    Reachability constrained = statement_reachability(c.net, cfg);
    for (const auto& id : constrained.covered) {
      EXPECT_TRUE(std::find(free.covered.begin(), free.covered.end(), id) != free.covered.end()) << c.source;
    }
  }
}

TEST(External, StatusMapping) {
  EXPECT_EQ(map_external_status("undetermined"), ir::FormalStatus::kBounded);
  EXPECT_EQ(map_external_status("PASS"), ir::FormalStatus::kProven);
  EXPECT_EQ(map_external_status("falsified"), ir::FormalStatus::kCex);
  EXPECT_EQ(map_external_status("weird"), std::nullopt);
}

TEST(External, ImportsReport) {
  ir::Json report = ir::Json::parse(R"({
    "tool": "vendor-fv", "version": "1.0",
    "properties": [
      {"name": "PROP_001", "status": "proven", "depth": 12, "runtime_ms": 40},
      {"name": "PROP-002", "status": "undetermined", "depth": 30},
      {"name": "PROP_003", "status": "failed", "vcd": "cex/p3.vcd"},
      {"name": "PROP_004", "status": "sleeping", "message": "license"}
    ]})");
  auto rs = import_external_results(report);
  ASSERT_EQ(rs.size(), 4u);
  for (const auto& r : rs) EXPECT_TRUE(r.external);
  EXPECT_EQ(rs[0].prop_id, "PROP-001");
  EXPECT_EQ(rs[0].status, ir::FormalStatus::kProven);
  EXPECT_EQ(rs[0].proof_depth, 12);
  EXPECT_EQ(rs[0].runtime_ms, 40);
  EXPECT_EQ(rs[1].status, ir::FormalStatus::kBounded);
  EXPECT_EQ(rs[2].status, ir::FormalStatus::kCex);
  EXPECT_EQ(rs[2].artifact_path, std::optional<std::string>("cex/p3.vcd"));
  EXPECT_EQ(rs[3].status, ir::FormalStatus::kError);
  EXPECT_NE(rs[3].message.find("sleeping"), std::string::npos);
  EXPECT_NE(rs[3].message.find("license"), std::string::npos);
  EXPECT_TRUE(import_external_results(ir::Json::parse(R"({"tool":"x","properties":[]})")).empty());
}

TEST(External, SchemaViolations) {
  try {
    import_external_results(ir::Json::parse(R"({"tool":"x","properties":[{"status":"failed"}]})"));
    FAIL();
  } catch (const ir::ValidationError& e) {
    ASSERT_EQ(e.report().violations.size(), 2u);
    EXPECT_EQ(e.report().violations[0].path, "/properties/0/name");
    EXPECT_EQ(e.report().violations[1].path, "/properties/0/vcd");
  }
  EXPECT_THROW(import_external_results(ir::Json::array()), ir::ValidationError);
}

}  // namespace
}  // namespace kgv::formal
