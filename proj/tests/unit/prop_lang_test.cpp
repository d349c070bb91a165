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

#include "kgv/rtl/netmodel.hpp"
#include "kgv/sva/bind.hpp"
#include "kgv/sva/property.hpp"
#include "support/fixtures.hpp"
#include "support/random_props.hpp"

namespace kgv::sva {
namespace {

PropertyFile must_parse(const std::string& src) {
  auto r = parse_properties(src);
  EXPECT_TRUE(r.ok()) << r.diags.format("p.sva") << src;
  return r.ok() ? *r : PropertyFile{};
}

TEST(ParseProperties, OverlappedImplicationWithDelay) {
  PropertyFile f = must_parse("assert property (@(posedge clk) a |-> ##1 b);");
  ASSERT_EQ(f.properties.size(), 1u);
  const PropertyDecl& p = f.properties[0];
  EXPECT_EQ(p.kind, PropKind::kAssertion);
  EXPECT_TRUE(p.ast.has_implication);
  EXPECT_TRUE(p.ast.overlapped);
  ASSERT_EQ(p.ast.consequent.size(), 1u);
  EXPECT_EQ(p.ast.consequent[0].min_delay, 1);
  EXPECT_EQ(p.ast.consequent[0].max_delay, 1);
  EXPECT_EQ(p.ast.clock, std::optional<std::string>("clk"));
  EXPECT_EQ(p.prop_id, "ANON-1");
}

TEST(ParseProperties, MacroUsedBeforeDefinition) {
  auto r = parse_properties(
      "default clocking @(posedge clk); endclocking\n"
      "PROP_001: assert property (`FULL |-> !wr_en);\n"
      "`define FULL (count == 2)\n");
  ASSERT_FALSE(r.ok());
  ASSERT_FALSE(r.diags.items().empty());
  const Diagnostic& d = r.diags.items()[0];
  EXPECT_EQ(d.code, DiagCode::kUndefinedMacro);
  EXPECT_EQ(d.prop_id, std::optional<std::string>("PROP-001"));
  EXPECT_EQ(d.line, 2);
}

TEST(ParseProperties, NestedImplication) {
  auto r = parse_properties("assert property (@(posedge clk) a |-> (b |-> c));");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diags.items()[0].code, DiagCode::kNestedImplication);
  auto r2 = parse_properties("assert property (@(posedge clk) a |-> b |=> c);");
  ASSERT_FALSE(r2.ok());
  EXPECT_EQ(r2.diags.items()[0].code, DiagCode::kNestedImplication);
}

TEST(ParseProperties, BoundExceeded) {
  for (const char* src : {"assert property (@(posedge clk) a |-> ##33 b);",
                          "assert property (@(posedge clk) a |-> ##[1:40] b);",
                          "assert property (@(posedge clk) a |-> ##[1:$] b);",
                          "assert property (@(posedge clk) a |-> ##20 (##20 b));",
                          "assert property (@(posedge clk) $past(a, 33));"}) {
    auto r = parse_properties(src);
    ASSERT_FALSE(r.ok()) << src;
    EXPECT_EQ(r.diags.items()[0].code, DiagCode::kBoundExceeded) << src;
  }
  ParseOptions small;
  small.max_delay = 4;
  EXPECT_FALSE(parse_properties("assert property (@(posedge clk) a ##5 b);", small).ok());
  EXPECT_TRUE(parse_properties("assert property (@(posedge clk) a ##4 b);", small).ok());
}

TEST(ParseProperties, ParenthesizedSequencesFlatten) {
  PropertyFile f = must_parse("assert property (@(posedge clk) (a ##1 b) ##[1:2] (##1 c ##2 d));");
  const Sequence& s = f.properties[0].ast.consequent;
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[2].min_delay, 2);
  EXPECT_EQ(s[2].max_delay, 3);
  EXPECT_EQ(s[3].min_delay, 2);
  PropertyFile g = must_parse("assert property (@(posedge clk) (a || b) && c ##1 d);");
  EXPECT_EQ(g.properties[0].ast.consequent.size(), 2u);
}

TEST(ParseProperties, MissingClockIsReported) {
  auto r = parse_properties("PROP_002: assert property (a |-> b);");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diags.items()[0].prop_id, std::optional<std::string>("PROP-002"));
}

TEST(ParseProperties, DiagnosticsCarryPropIdInsideSpan) {
  auto r = parse_properties(
      "default clocking @(posedge clk); endclocking\n"
      "PROP_001: assert property (a |-> b);\n"
      "PROP_002: assert property (a |-> \n"
      "   b +* c);\n"
      "PROP_003: assume property (a # b);\n");
  ASSERT_FALSE(r.ok());
  for (const auto& d : r.diags.items()) {
    ASSERT_TRUE(d.prop_id.has_value()) << d.message;
    if (d.line == 4) EXPECT_EQ(*d.prop_id, "PROP-002");
    if (d.line == 5) EXPECT_EQ(*d.prop_id, "PROP-003");
  }
}

TEST(EmitProperties, EmptyFileIsHeaderOnly) {
  PropertyFile f;
  std::string text = emit_properties(f);
  EXPECT_EQ(text, "// kgverify property file\n");
}

TEST(EmitProperties, LineMapsAreDisjointAndOrdered) {
  PropertyFile f = must_parse(
      "`define BUSY (a && b)\n"
      "default clocking @(posedge clk); endclocking\n"
      "PROP_010: assert property (`BUSY |=> c);\n"
      "PROP_002: cover property (a ##1 b);\n");
  std::string text = emit_properties(f);
  auto a = f.line_map.at("PROP-002");
  auto b = f.line_map.at("PROP-010");
  EXPECT_LT(a.second, b.first);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  EXPECT_EQ(lines.at(a.first - 1), "PROP_002: cover property (a ##1 b);");
  EXPECT_EQ(lines.at(b.first - 1), "PROP_010: assert property (`BUSY |=> c);");
  EXPECT_EQ(lines.at(1), "`define BUSY (a && b)");
}

TEST(EmitProperties, RoundTripOnRandomFiles) {
  std::mt19937_64 rng(4242);
  kgv::testing::RandomPropOptions opt;
  opt.max_delay = 8;
  for (int i = 0; i < 400; ++i) {
    PropertyFile f = kgv::testing::random_property_file(rng, opt, 1 + static_cast<int>(rng() % 5));
    std::string text = emit_properties(f);
    auto r = parse_properties(text);
    ASSERT_TRUE(r.ok()) << r.diags.format("gen.sva") << text;
    ASSERT_TRUE(equivalent(f, *r)) << text;
    EXPECT_EQ(r->line_map, f.line_map) << text;
    PropertyFile again = *r;
    EXPECT_EQ(emit_properties(again), text);
  }
}

TEST(PropIds, LabelMapping) {
  EXPECT_EQ(label_for("PROP-001"), "PROP_001");
  EXPECT_EQ(prop_id_for("PROP_001"), "PROP-001");
  EXPECT_EQ(prop_id_for("p_full_check"), "p_full_check");
  EXPECT_TRUE(id_less("PROP-2", "PROP-10"));
  EXPECT_TRUE(id_less("ANON-9", "PROP-1"));
}

class BindTest : public ::testing::Test {
 protected:
  void SetUp() override {
    auto d = rtl::parse_rtl(kgv::testing::read_fixture("fifo.v"), "fifo.v");
    ASSERT_TRUE(d.ok());
    design_ = *d;
    auto n = rtl::elaborate(design_, "fifo");
    ASSERT_TRUE(n.ok());
    net_ = *n;
    std::vector<std::string> paths;
    for (const auto& [p, w] : net_.signal_paths()) paths.push_back(p);
    idx_ = kg::SignalIndex(paths);
  }
  rtl::DesignModel design_;
  rtl::NetModel net_;
  kg::SignalIndex idx_;
};

TEST_F(BindTest, DeclaredPortsBind) {
  PropertyFile f = must_parse(
      "default clocking @(posedge clk); endclocking\n"
      "PROP_001: assert property (disable iff (rst) full |-> !(wr_en && count == 3));\n");
  BindResult r = bind(f, design_, net_, idx_);
  ASSERT_TRUE(r.ok()) << r.errors[0].message;
  ASSERT_EQ(r.bound.size(), 1u);
  const BoundProperty& b = r.bound[0];
  EXPECT_EQ(b.clock, "fifo.clk");
  EXPECT_EQ(to_verilog(*b.disable), "fifo.rst");
  EXPECT_EQ(to_verilog(*b.consequent[0].expr), "!(fifo.wr_en && fifo.count == 2'd3)");
}

TEST_F(BindTest, TypoIsUndeclaredAtItsLine) {
  PropertyFile f = must_parse(
      "default clocking @(posedge clk); endclocking\n"
      "\n"
      "PROP_001: assert property (wr_enn |-> !full);\n");
  BindResult r = bind(f, design_, net_, idx_);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].kind, BindErrorKind::kUndeclaredIdentifier);
  EXPECT_EQ(r.errors[0].identifier, "wr_enn");
  EXPECT_EQ(r.errors[0].line, 3);
  EXPECT_EQ(r.errors[0].col, 28);
  EXPECT_TRUE(r.bound.empty());
}

TEST_F(BindTest, MacrosExpandOneLevel) {
  PropertyFile f = must_parse(
      "`define FULL_NOW (count == 2'd2)\n"
      "`define NESTED `FULL_NOW\n"
      "default clocking @(posedge clk); endclocking\n"
      "PROP_001: assert property (`FULL_NOW |-> full);\n"
      "PROP_002: assert property (`NESTED |-> full);\n");
  BindResult r = bind(f, design_, net_, idx_);
  ASSERT_EQ(r.bound.size(), 1u);
  EXPECT_EQ(r.bound[0].prop_id, "PROP-001");
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].kind, BindErrorKind::kRecursiveMacro);
  EXPECT_EQ(r.errors[0].prop_id, "PROP-002");
}

TEST_F(BindTest, WidthMismatch) {
  PropertyFile f = must_parse(
      "default clocking @(posedge clk); endclocking\n"
      "PROP_001: assert property (count == 3'd2);\n");
  BindResult r = bind(f, design_, net_, idx_);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].kind, BindErrorKind::kWidthMismatch);
}

TEST(Bind, TwinInstancesAreAmbiguous) {
  auto d = rtl::parse_rtl(
      "module leaf(input clk, input d, output reg q);\n"
      "  always @(posedge clk) q <= d;\n"
      "endmodule\n"
      "module top(input clk, input a, output y);\n"
      "  wire mid;\n"
      "  leaf u0(.clk(clk), .d(a), .q(mid));\n"
      "  leaf u1(.clk(clk), .d(mid), .q(y));\n"
      "endmodule\n");
  ASSERT_TRUE(d.ok());
  auto n = rtl::elaborate(*d, "top");
  ASSERT_TRUE(n.ok());
  std::vector<std::string> paths;
  for (const auto& [p, w] : n->signal_paths()) paths.push_back(p);
  kg::SignalIndex idx(paths);
  PropertyFile f = must_parse(
      "default clocking @(posedge clk); endclocking\n"
      "PROP_001: assert property (q |=> y);\n"
      "PROP_002: assert property (u0.q |=> u1.q);\n");
  BindResult r = bind(f, *d, *n, idx);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].kind, BindErrorKind::kAmbiguousPath);
  EXPECT_EQ(r.errors[0].candidates, (std::vector<std::string>{"top.u0.q", "top.u1.q"}));
  ASSERT_EQ(r.bound.size(), 1u);
  EXPECT_EQ(to_verilog(*r.bound[0].antecedent[0].expr), "top.u0.q");
}

}  // namespace
}  // namespace kgv::sva
