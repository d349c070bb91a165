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

#include "kgv/vcd/vcd.hpp"
#include "support/engine_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/vcd_oracle.hpp"

namespace kgv::vcd {
namespace {

formal::CexTrace trace_of(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& xs) {
  formal::CexTrace t;
  for (const auto& [a, b] : xs) {
    formal::TraceCycle c;
    c.inputs["top.a"] = a;
    c.state["top.r"] = b;
    t.cycles.push_back(c);
  }
  t.failure_cycle = static_cast<int>(xs.size()) - 1;
  return t;
}

TEST(WriteVcd, SingleCycleSingleSignal) {
  formal::CexTrace t;
  t.cycles.push_back({{{"top.a", 0}}, {}});
  std::string text = write_vcd(t, {{"top.a", 1}});
  EXPECT_EQ(text,
            "$version kgverify $end\n"
            "$timescale 1ns $end\n"
            "$scope module top $end\n"
            "$var wire 1 ! a $end\n"
            "$upscope $end\n"
            "$enddefinitions $end\n"
            "#0\n"
            "$dumpvars\n"
            "0!\n"
            "$end\n");
}

TEST(WriteVcd, ToggleChangesEveryCycle) {
  std::string text = write_vcd(trace_of({{0, 0}, {1, 0}, {0, 0}}), {{"top.a", 1}, {"top.r", 2}});
  EXPECT_NE(text.find("#1\n1!\n#2\n0!\n"), std::string::npos) << text;
  EXPECT_NE(text.find("b00 \"\n"), std::string::npos);
  WaveDb db = parse_vcd(text);
  EXPECT_EQ(db.changes.at("top.a").size(), 3u);
  EXPECT_EQ(db.changes.at("top.r").size(), 1u);
  EXPECT_EQ(db.end_time, 2u);
}

TEST(WriteVcd, RejectsOverflowAndFlatNames) {
  EXPECT_THROW(write_vcd(trace_of({{2, 0}}), {{"top.a", 1}}), Error);
  EXPECT_THROW(write_vcd(trace_of({{0, 0}}), {{"a", 1}}), Error);
}

TEST(ParseVcd, ExternalFixtureMatchesHandCount) {
  WaveDb db = parse_vcd(kgv::testing::read_fixture("external_min.vcd"));
  EXPECT_EQ(db.warnings, 0);
  EXPECT_EQ(db.timescale, (Timescale{1, "ps"}));
  ASSERT_EQ(db.signals.size(), 3u);
  EXPECT_EQ(db.signals[0].name, "tb.clk");
  EXPECT_EQ(db.signals[1].name, "tb.dut.state");
  EXPECT_EQ(db.signals[1].width, 4);
  EXPECT_EQ(db.changes.at("tb.clk").size(), 5u);
  EXPECT_EQ(db.changes.at("tb.dut.state").size(), 3u);
  EXPECT_EQ(db.changes.at("tb.dut.valid").size(), 3u);
  EXPECT_EQ(db.changes.at("tb.dut.state")[0].value, "xxxx");
  EXPECT_EQ(db.changes.at("tb.dut.state")[1].value, "0101");
  EXPECT_EQ(db.value_at("tb.dut.valid", 17), "1");
  EXPECT_EQ(from_bits("0101"), 5u);
  EXPECT_EQ(from_bits("x1"), std::nullopt);
}

TEST(ParseVcd, CommentsAndUnknownDirectives) {
  std::string text =
      "$comment anything $var goes $end\n$scope module t $end $var wire 1 ! a $end $upscope $end\n"
      "$enddefinitions $end\n#0\n1!\n";
  EXPECT_EQ(parse_vcd(text).warnings, 0);
  WaveDb db = parse_vcd("$custom foo bar $end\n" + text + "r1.5 !\n");
  EXPECT_EQ(db.warnings, 2);
}

TEST(ParseVcd, Errors) {
  std::string head = "$scope module t $end\n";
  try {
    parse_vcd(head + "$var wire ! a $end\n");
    FAIL();
  } catch (const VcdError& e) {
    EXPECT_EQ(e.offset(), head.size());
  }
  std::string ok = head + "$var wire 2 ! a $end $upscope $end $enddefinitions $end\n";
  EXPECT_THROW(parse_vcd(ok + "#0\nb101 !\n"), VcdError);
  EXPECT_THROW(parse_vcd(ok + "#3\nb1 !\n#2\nb0 !\n"), VcdError);
  EXPECT_THROW(parse_vcd(ok + "#3\nb1 !\n#3\n"), VcdError);
  EXPECT_THROW(parse_vcd(ok + "#1\nb1 ?\n"), VcdError);
  EXPECT_NO_THROW(parse_vcd(ok + "#1\nb1 !\n"));
}

using kgv::testing::deltas;
using kgv::testing::window_oracle;

TEST(RoundTrip, RandomTraces) {
  std::mt19937_64 rng(6);
  for (int iter = 0; iter < 200; ++iter) {
    auto [decls, cycles] = kgv::testing::random_trace(rng);
    WaveDb db = parse_vcd(write_vcd(cycles, decls));
    ASSERT_EQ(db.changes, deltas(cycles, decls));
    EXPECT_EQ(db.end_time, cycles.size() - 1);
  }
}

TEST(RoundTrip, FifoCounterexample) {
  auto m = rtl::parse_rtl(kgv::testing::read_fixture("fifo.v"), "fifo.v");
  auto net = rtl::elaborate(*m, "fifo");
  auto props = kgv::testing::bind_text(*m, *net,
                                       "default clocking @(posedge clk); endclocking\n"
                                       "assert property (wr_en |=> full);\n");
  auto r = formal::check(*net, props[0], {});
  ASSERT_TRUE(r.trace);
  auto cycles = formal::expand_trace(*net, *r.trace);
  std::vector<SignalDecl> decls;
  for (const auto& [p, w] : net->signal_paths()) {
    if (p != net->clock) decls.push_back({p, w});
  }
  WaveDb db = parse_vcd(write_vcd(cycles, decls));
  EXPECT_EQ(db.changes, deltas(cycles, decls));
}

TEST(FailureWindow, Examples) {
  WaveDb db = parse_vcd(kgv::testing::read_fixture("external_min.vcd"));
  WindowSummary none = failure_window(db, 4, {"tb.dut.state"}, 4);
  EXPECT_EQ(none.window.size(), 1u);  // the initial dump at #0
  WindowSummary early = failure_window(db, 9, {"tb.dut.state"}, 3);
  EXPECT_TRUE(early.window.empty());
  WindowSummary w = failure_window(db, 15, {"tb.dut.valid", "tb.nope", "tb.dut.state"}, 5);
  EXPECT_EQ(w.missing, std::vector<std::string>{"tb.nope"});
  ASSERT_EQ(w.window.size(), 2u);
  EXPECT_EQ(w.window[0], (WindowEntry{10, "tb.dut.state", "xxxx", "0101"}));
  EXPECT_EQ(w.window[1], (WindowEntry{15, "tb.dut.valid", "0", "1"}));
}

TEST(FailureWindow, MatchesFilterOracle) {
  std::mt19937_64 rng(50);
  for (int q = 0; q < 50; ++q) {
    std::vector<SignalDecl> decls;
    for (int i = 0; i < 4; ++i) decls.push_back({"top.s" + std::to_string(i), 1 + static_cast<int>(rng() % 3)});
    std::vector<formal::Valuation> cycles(2 + rng() % 15);
    for (auto& c : cycles) {
      for (const auto& d : decls) c[d.name] = rng() & width_mask(d.width);
    }
    WaveDb db = parse_vcd(write_vcd(cycles, decls));
    std::uint64_t t = rng() % cycles.size();
    int pre = static_cast<int>(rng() % 5);
    std::vector<std::string> names;
    for (const auto& d : decls) {
      if (rng() % 2) names.push_back(d.name);
    }
    WindowSummary got = failure_window(db, t, names, pre);
    WindowSummary want = window_oracle(db, t, names, pre);
    EXPECT_EQ(got.window, want.window);
  }
}

}  // namespace
}  // namespace kgv::vcd
