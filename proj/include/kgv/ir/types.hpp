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

#ifndef KGV_IR_TYPES_HPP_
#define KGV_IR_TYPES_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgv/rtl/design.hpp"
#include "kgv/sva/property.hpp"

namespace kgv::ir {

using Json = nlohmann::ordered_json;

enum class ReqCategory { kFunctional, kTiming, kInterface, kSafety };
enum class Priority { kHigh, kMedium, kLow };
enum class PropStatus { kActive, kDisabled };
enum class LinkKind { kDerivesFrom, kValidates, kProves, kFails, kCovers };
enum class FormalStatus { kProven, kCex, kVacuous, kBounded, kError };
enum class RootCause { kRtlBug, kOverSpecification, kMissingAssumption, kUnderSpecification };
enum class DeadCodeClass { kDefensive, kGap };
enum class LoopKind { kSyntax, kCex, kCoverage, kReview };
enum class AttemptOutcome { kFixed, kRetry, kDisabled };

std::string_view to_string(ReqCategory v);
std::string_view to_string(Priority v);
std::string_view to_string(PropStatus v);
std::string_view to_string(LinkKind v);
std::string_view to_string(FormalStatus v);
std::string_view to_string(RootCause v);
std::string_view to_string(DeadCodeClass v);
std::string_view to_string(LoopKind v);
std::string_view to_string(AttemptOutcome v);

std::optional<ReqCategory> parse_req_category(std::string_view s);
std::optional<Priority> parse_priority(std::string_view s);
std::optional<PropStatus> parse_prop_status(std::string_view s);
std::optional<LinkKind> parse_link_kind(std::string_view s);
std::optional<FormalStatus> parse_formal_status(std::string_view s);
std::optional<RootCause> parse_root_cause(std::string_view s);
std::optional<DeadCodeClass> parse_dead_code_class(std::string_view s);
std::optional<LoopKind> parse_loop_kind(std::string_view s);
std::optional<AttemptOutcome> parse_attempt_outcome(std::string_view s);

struct SpecChunk {
  std::string chunk_id;
  std::vector<std::string> heading_path;
  std::string text;
  std::vector<std::string> semantic_tags;
  int order_index = 0;
  bool operator==(const SpecChunk&) const = default;
};

struct Requirement {
  std::string req_id;
  std::string text;
  ReqCategory category = ReqCategory::kFunctional;
  Priority priority = Priority::kMedium;
  std::vector<std::string> source_chunks;
  bool operator==(const Requirement&) const = default;
};

struct TestPlanEntry {
  std::string req_id;
  std::vector<std::string> observable_signals;
  std::string stimulus;
  std::string expected_response;
  std::optional<std::string> timing_constraint;
  bool operator==(const TestPlanEntry&) const = default;
};

struct AttemptNote {
  LoopKind loop_kind = LoopKind::kSyntax;
  int attempt_no = 1;
  std::string diagnosis;
  std::string patch_summary;
  AttemptOutcome outcome = AttemptOutcome::kRetry;
  bool operator==(const AttemptNote&) const = default;
};

struct PropertyRecord {
  std::string prop_id;
  std::vector<std::string> req_ids;
  sva::PropKind kind = sva::PropKind::kAssertion;
  std::string sva_text;
  std::pair<int, int> line_span{0, 0};
  PropStatus status = PropStatus::kActive;
  std::vector<AttemptNote> attempt_history;
  bool operator==(const PropertyRecord&) const = default;
};

struct MacroDef {
  std::string name;
  std::string text;
  bool operator==(const MacroDef&) const = default;
};

// Contents of properties.json: the records plus the shared preamble needed
// to assemble the property file.
struct PropertySet {
  std::vector<MacroDef> macros;
  std::string default_clock;
  std::vector<PropertyRecord> properties;
  bool operator==(const PropertySet&) const = default;
  PropertyRecord* find(std::string_view prop_id);
  const PropertyRecord* find(std::string_view prop_id) const;
};

struct TraceLink {
  std::string src_id;
  std::string dst_id;
  LinkKind link_kind = LinkKind::kDerivesFrom;
  bool operator==(const TraceLink&) const = default;
};

struct FormalResult {
  std::string result_id;
  std::string prop_id;
  FormalStatus status = FormalStatus::kError;
  std::optional<int> proof_depth;
  std::int64_t runtime_ms = 0;
  std::optional<std::string> artifact_path;
  std::string message;
  int iteration = 0;
  bool external = false;
  bool operator==(const FormalResult&) const = default;
};

struct CexCase {
  std::string cex_id;
  std::string prop_id;
  std::string result_id;
  std::string vcd_path;
  std::int64_t failure_time = 0;
  int failure_line = 0;
  std::vector<AttemptNote> attempts;
  std::optional<RootCause> root_cause;
  std::string diagnosis;
  bool operator==(const CexCase&) const = default;
};

struct DeadCode {
  std::string statement_id;
  DeadCodeClass classification = DeadCodeClass::kGap;
  bool operator==(const DeadCode&) const = default;
};

struct CoverageMetrics {
  std::string cov_id;
  std::string run_ref;
  double reachable_pct = 0.0;
  std::vector<std::string> covered_statements;
  std::vector<std::string> unreachable_statements;
  std::vector<DeadCode> dead_code;
  int vacuity_count = 0;
  std::optional<double> proof_core_ratio;
  bool partial = false;
  bool operator==(const CoverageMetrics&) const = default;
};

struct RunContext {
  std::string run_id;
  std::map<std::string, std::string> artifact_paths;
  std::map<std::string, int> iteration_counts;
  std::string tool_version;
  std::string created_at;
  Json config_snapshot = Json::object();
  bool operator==(const RunContext&) const = default;
};

// Collections are optional so a loaded run can tell "absent" from "empty".
struct RunBundle {
  RunContext context;
  std::optional<std::vector<SpecChunk>> spec_chunks;
  std::optional<std::vector<Requirement>> requirements;
  std::optional<std::vector<TestPlanEntry>> testplan;
  std::optional<rtl::DesignModel> design_model;
  std::optional<PropertySet> properties;
  std::optional<std::vector<TraceLink>> tracelinks;
  std::optional<std::vector<FormalResult>> formal_results;
  std::optional<std::vector<CexCase>> cex_cases;
  std::optional<std::vector<CoverageMetrics>> coverage_metrics;
  bool operator==(const RunBundle&) const = default;
};

// Artifact kinds with their file names in a run directory.
enum class ArtifactKind {
  kSpecChunks,
  kRequirements,
  kTestPlan,
  kDesignModel,
  kProperties,
  kTraceLinks,
  kFormalResults,
  kCexCases,
  kCoverageMetrics,
  kRunContext,
  kNodes,
  kEdges,
};

std::string_view artifact_name(ArtifactKind kind);  // e.g. "formal_results"
std::string_view artifact_file(ArtifactKind kind);  // e.g. "formal_results.json"
std::optional<ArtifactKind> parse_artifact_kind(std::string_view name);
const std::vector<ArtifactKind>& all_artifact_kinds();

// Node type labels used in the exported graph.
inline constexpr std::string_view kNodeSpecChunk = "spec_chunk";
inline constexpr std::string_view kNodeRequirement = "requirement";
inline constexpr std::string_view kNodeProperty = "property";
inline constexpr std::string_view kNodeFormalResult = "formal_result";
inline constexpr std::string_view kNodeCexCase = "cex_case";
inline constexpr std::string_view kNodeCoverage = "coverage_metrics";
inline constexpr std::string_view kNodeModule = "rtl_module";
inline constexpr std::string_view kNodeSignal = "rtl_signal";
inline constexpr std::string_view kNodeStatement = "rtl_statement";

// Structural edge labels emitted next to the trace-link kinds.
inline constexpr std::string_view kEdgeContains = "contains";
inline constexpr std::string_view kEdgePrecedes = "precedes";
inline constexpr std::string_view kEdgeMentions = "mentions";
inline constexpr std::string_view kEdgeReferences = "references";

}  // namespace kgv::ir

#endif  // KGV_IR_TYPES_HPP_
