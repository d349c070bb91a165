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

#ifndef KGV_AGENTS_PIPELINES_HPP_
#define KGV_AGENTS_PIPELINES_HPP_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgv/agents/backend.hpp"
#include "kgv/agents/propfile.hpp"
#include "kgv/formal/engine.hpp"
#include "kgv/ir/types.hpp"
#include "kgv/kg/graph.hpp"
#include "kgv/kg/signal_index.hpp"
#include "kgv/rtl/netmodel.hpp"

namespace kgv::agents {

struct AgentConfig {
  kg::RetrievalBounds bounds;
  formal::CheckConfig check;
  std::string rulebook;
  int max_attempts = 3;
  int review_rounds = 3;
  int window_cycles = 3;
  // Reads a run-relative artifact (counterexample VCDs); nullopt if absent.
  std::function<std::optional<std::string>(const std::string&)> read_artifact;
};

// Shared state of the pipelines. The bundle must hold a design model
// elaborated to `net`; the pipelines mutate the bundle in place.
class Workspace {
 public:
  Workspace(ir::RunBundle& bundle, const rtl::NetModel& net, Session& session, AgentConfig cfg);

  ir::RunBundle& bundle() { return bundle_; }
  const rtl::NetModel& net() const { return net_; }
  Session& session() { return session_; }
  const AgentConfig& config() const { return cfg_; }
  const kg::SignalIndex& index() const { return index_; }
  DesignView view() const { return {*bundle_.design_model, net_, index_}; }
  kg::Graph& graph() { return graph_; }

  ir::PropertySet& properties();
  std::vector<ir::TraceLink>& links();
  // Re-exports graph rows from the bundle.
  void refresh();

 private:
  ir::RunBundle& bundle_;
  const rtl::NetModel& net_;
  Session& session_;
  AgentConfig cfg_;
  kg::SignalIndex index_;
  kg::Graph graph_;
};

struct GenerationReport {
  int requirements = 0;
  int properties = 0;
  int review_rounds = 0;
  int disabled = 0;
  std::vector<std::string> new_props;
};

// Per requirement: strategy, decomposition, authoring, review (bounded
// rounds), then assembly. Appends records, testplan entries and validates
// links. Protocol errors propagate after one retry.
GenerationReport run_generation(Workspace& ws);

struct SyntaxReport {
  int failing = 0;  // properties with a diagnostic on entry
  int attempts = 0;
  int rule_fixes = 0;
  int backend_fixes = 0;
  int disabled = 0;
  std::map<std::string, int> rule_uses;  // R1/R2/R3
  std::vector<std::string> touched;
};

// Compiles each active property on its own and repairs it: rules R1-R3
// first, then the syntax fixer. `only` restricts the properties visited.
SyntaxReport run_syntax_loop(Workspace& ws, const std::optional<std::set<std::string>>& only = std::nullopt);

struct CexReport {
  int cases = 0;
  int rtl_bugs = 0;
  int corrected = 0;
  int uncorrected = 0;
  int attempts = 0;
  int missing = 0;
  std::vector<std::string> patched;
  std::set<std::string> invalidated;
};

// Handles failing assertion results that have no counterexample case yet.
CexReport run_cex_loop(Workspace& ws);

struct CoverageReport {
  int gaps = 0;
  int defensive = 0;
  int unlinked = 0;
  std::vector<std::string> order;                           // gap ids as analysed
  std::map<std::string, std::vector<std::string>> blocking;  // gap -> assumption ids
  std::map<std::string, std::string> linked;                 // gap -> requirement
  std::vector<std::string> new_props;
};

// Analyses the unclassified unreachable statements of `cov` (a record of
// the bundle) and emits targeted properties for real gaps.
CoverageReport run_coverage_loop(Workspace& ws, ir::CoverageMetrics& cov);

// Reset-like inputs of the design with their active level.
std::vector<std::pair<std::string, bool>> reset_inputs(const rtl::NetModel& net);

}  // namespace kgv::agents

#endif  // KGV_AGENTS_PIPELINES_HPP_
