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

#include "kgv/rtl/design.hpp"
#include "kgv/rtl/netmodel.hpp"
#include "support/fixtures.hpp"
#include "support/netsim.hpp"
#include "support/random_rtl.hpp"
#include "support/rtl_interp.hpp"

namespace kgv::testing {
namespace {

constexpr int kDesigns = 300;
constexpr int kCycles = 20;

std::map<std::string, std::uint64_t> random_inputs(std::mt19937_64& rng,
                                                   const std::vector<std::pair<std::string, int>>& ins) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& [n, w] : ins) out[n] = rng() & ((1ull << w) - 1);
  return out;
}

// Lockstep comparison of NetModel simulation and direct interpretation.
void compare(const rtl::DesignModel& dm, const rtl::NetModel& net, const std::string& top,
             const std::vector<std::pair<std::string, int>>& inputs, std::mt19937_64& rng,
             const std::string& src) {
  RtlInterpreter ref(dm, top);
  NetSim sim(net);
  std::map<std::string, std::uint64_t> init;
  for (const auto& [h, v] : net.init) init[h.substr(top.size() + 1)] = v;
  ref.set_registers(init);
  for (int k = 0; k < kCycles; ++k) {
    auto local = random_inputs(rng, inputs);
    std::map<std::string, std::uint64_t> hier;
    for (const auto& [n, v] : local) hier[top + "." + n] = v;
    std::set<std::string> ran_ref = ref.step(local);
    std::set<std::string> ran_net = sim.step(hier);
    ASSERT_EQ(ran_net, ran_ref) << "guard disagreement at cycle " << k << "\n" << src;
    for (const auto& [h, v] : sim.state()) {
      ASSERT_EQ(v, ref.values().at(h.substr(top.size() + 1)))
          << h << " at cycle " << k << "\n" << src;
    }
  }
}

TEST(RtlProperties, ElaborationSoundnessAndGuardsOnRandomDesigns) {
  std::mt19937_64 rng(20260101);
  for (int i = 0; i < kDesigns; ++i) {
    RandomDesign d = random_design(rng);
    auto parsed = rtl::parse_rtl(d.source, "rnd.v");
    ASSERT_TRUE(parsed.ok()) << parsed.diags.format("rnd.v") << d.source;
    auto net = rtl::elaborate(*parsed, d.module);
    ASSERT_TRUE(net.ok()) << net.diags.format("rnd.v") << d.source;
    ASSERT_LE(net->state_bits.size(), 6u);
    ASSERT_EQ(check_widths(*net), "") << d.source;
    ASSERT_EQ(net->statement_guards.size(), parsed->statements.size());
    compare(*parsed, *net, d.module, d.inputs, rng, d.source);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

TEST(RtlProperties, FifoMatchesInterpreter) {
  auto parsed = rtl::parse_rtl(read_fixture("fifo.v"), "fifo.v");
  ASSERT_TRUE(parsed.ok());
  auto net = rtl::elaborate(*parsed, "fifo");
  ASSERT_TRUE(net.ok());
  EXPECT_EQ(check_widths(*net), "");
  std::mt19937_64 rng(7);
  std::vector<std::pair<std::string, int>> ins = {{"rst", 1}, {"wr_en", 1}, {"rd_en", 1}, {"din", 1}};
  for (int run = 0; run < 50; ++run) compare(*parsed, *net, "fifo", ins, rng, "fifo.v");
}

TEST(RtlProperties, StatementIndexIsStableUnderReparse) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    RandomDesign d = random_design(rng);
    auto a = rtl::parse_rtl(d.source);
    auto b = rtl::parse_rtl(d.source);
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_EQ(rtl::statement_index(*a), rtl::statement_index(*b));
    EXPECT_EQ(rtl::statement_index(*a), a->statements);
  }
}

}  // namespace
}  // namespace kgv::testing
