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

#ifndef KGV_ORCH_RUN_HPP_
#define KGV_ORCH_RUN_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgv/agents/backend.hpp"
#include "kgv/agents/pipelines.hpp"
#include "kgv/ir/types.hpp"
#include "kgv/kg/graph.hpp"

namespace kgv::orch {

using Json = ir::Json;

inline constexpr const char* kToolVersion = "kgverify 0.1.0";

struct RunConfig {
  std::string spec_path;
  std::vector<std::string> rtl_paths;
  std::string top;
  std::string rulebook_path;
  std::string out_root = "runs";
  std::string backend = "scripted";  // live | scripted | replay
  std::string transcript_path;
  kg::RetrievalBounds bounds;
  std::size_t max_states = std::size_t{1} << 20;
  int max_depth = 64;
  int cex_iters = 2;
  int cov_iters = 2;
  std::size_t prompt_budget = agents::kDefaultBudget;
  unsigned threads = 1;
  std::string created_at;         // empty: now
  bool measure_runtime = false;   // wall-clock runtimes make runs irreproducible

  // Checks paths and caps; returns one message per problem.
  std::vector<std::string> problems() const;
  Json snapshot() const;
};

// Heading lines (`#`..`######`) start chunks; text before the first heading,
// or a document without headings, goes under "(root)". Throws on an empty
// document.
std::vector<ir::SpecChunk> chunk_spec(const std::string& text);

struct Ingested {
  std::vector<ir::SpecChunk> chunks;
  std::vector<ir::Requirement> requirements;
  std::vector<ir::TraceLink> links;  // derives_from
};

// Chunks the document and asks the backend for the requirements of each
// chunk (`REQ: text` or `REQ[category,priority]: text` lines).
Ingested ingest_spec(const std::string& text, agents::Session& session);

// Checks active assertions and covers (those in `only` when given) under the
// active assumptions, appends results and proves/fails links, and stores
// counterexample waveforms in `artifacts` under cex/.
std::vector<std::string> check_properties(agents::Workspace& ws, std::map<std::string, std::string>& artifacts,
                                          int iteration, const std::optional<std::set<std::string>>& only = std::nullopt,
                                          unsigned threads = 1);

// Reachability under the active assumptions plus the vacuity count of the
// latest results; appended as a new record with covers links.
ir::CoverageMetrics& compute_coverage(agents::Workspace& ws, int iteration);

// Latest result per property: highest iteration, later entry on ties.
std::map<std::string, ir::FormalResult> latest_results(const ir::RunBundle& b);

// Properties whose latest result is among `invalidated`.
std::set<std::string> recheck_targets(const ir::RunBundle& b, const std::set<std::string>& invalidated);

struct RunReport {
  int gen_total = 0, gen_passed = 0, gen_failed = 0;
  int syntax_failing = 0, syntax_attempts = 0, syntax_fixed = 0, syntax_disabled = 0;
  int cex_total = 0, cex_corrected = 0, cex_not_corrected = 0, cex_attempts = 0, cex_rtl_bugs = 0;
  double cov_initial_pct = 0.0, cov_final_pct = 0.0;
  int vacuous = 0, cov_new_props = 0, defensive = 0;
  int final_total = 0, final_passed = 0, final_failed = 0;
  int kg_nodes = 0, kg_edges = 0;
  bool operator==(const RunReport&) const = default;
};

RunReport make_report(const ir::RunBundle& b);
std::string render_report(const RunReport& r);
Json to_json(const RunReport& r);

struct RunOutcome {
  bool ok = false;
  std::string run_id;
  std::string error;
  RunReport report;
};

// Ingest, elaborate, generate, repair syntax, check, repair counterexamples,
// close coverage gaps, then save with graph rows, transcript, property file,
// report and HTML view. Every stage is saved; the previous stage's directory
// is removed once the next one is in place.
RunOutcome run_all(const RunConfig& cfg, agents::Backend& backend);

}  // namespace kgv::orch

#endif  // KGV_ORCH_RUN_HPP_
