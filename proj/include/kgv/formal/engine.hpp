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

#ifndef KGV_FORMAL_ENGINE_HPP_
#define KGV_FORMAL_ENGINE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgv/ir/types.hpp"
#include "kgv/rtl/netmodel.hpp"
#include "kgv/sva/bind.hpp"

namespace kgv::formal {

struct CheckConfig {
  std::size_t max_states = std::size_t{1} << 20;
  int max_depth = 64;
  std::vector<sva::BoundProperty> input_assumptions;
  // Leave runtime_ms at 0 so results are reproducible byte for byte.
  bool measure_runtime = true;
};

using Valuation = std::map<std::string, std::uint64_t>;

struct TraceCycle {
  Valuation inputs;
  Valuation state;
  bool operator==(const TraceCycle&) const = default;
};

// cycles[k].state is the register state at the start of cycle k; the inputs
// are those applied during cycle k.
struct CexTrace {
  std::string prop_id;
  std::vector<TraceCycle> cycles;
  int failure_cycle = 0;
  int violated_at_line = 0;
  bool operator==(const CexTrace&) const = default;
};

struct CheckResult {
  ir::FormalResult result;
  std::optional<CexTrace> trace;  // counterexample, or witness for covers
  bool antecedent_matched = false;
  std::size_t states_explored = 0;
};

// Explicit-state breadth-first check of an assertion (or assumption, checked
// as an assertion) against `net` under cfg.input_assumptions.
CheckResult check(const rtl::NetModel& net, const sva::BoundProperty& p, const CheckConfig& cfg);

// Searches for a path on which the cover sequence completes.
CheckResult check_cover(const rtl::NetModel& net, const sva::BoundProperty& p,
                        const CheckConfig& cfg);

// Dispatches on kind; results come back in prop_id order regardless of the
// number of worker threads.
std::vector<CheckResult> check_all(const rtl::NetModel& net,
                                   const std::vector<sva::BoundProperty>& props,
                                   const CheckConfig& cfg, unsigned threads = 1);

struct Reachability {
  std::vector<std::string> covered;      // statement ids, ascending
  std::vector<std::string> unreachable;  // statement ids, ascending
  bool partial = false;
  std::size_t states_explored = 0;
};

// A statement is covered iff its guard holds in some reachable state under
// the assumptions, for some admissible input.
Reachability statement_reachability(const rtl::NetModel& net, const CheckConfig& cfg);

double reachable_pct(std::size_t covered, std::size_t unreachable);

// Builds metrics from a reachability pass and the verdicts of `props`.
ir::CoverageMetrics coverage_metrics(const Reachability& r, int vacuity_count);

ir::CoverageMetrics coverage(const rtl::NetModel& net, const std::vector<sva::BoundProperty>& props,
                             const CheckConfig& cfg);

// Cycle-accurate replay used by loops and tests to confirm a recorded trace:
// states follow the next-state functions and inputs are in range.
bool replay_consistent(const rtl::NetModel& net, const CexTrace& trace, std::string* why = nullptr);

// Values of every named signal (state, inputs, combinational nets) at each
// trace cycle, for waveform output.
std::vector<Valuation> expand_trace(const rtl::NetModel& net, const CexTrace& trace);

}  // namespace kgv::formal

#endif  // KGV_FORMAL_ENGINE_HPP_
