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

#include "kgv/ir/types.hpp"

#include <array>

namespace kgv::ir {
namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, 4> kCategory = {"functional", "timing", "interface", "safety"};
constexpr std::array<std::string_view, 3> kPriority = {"high", "medium", "low"};
constexpr std::array<std::string_view, 2> kPropStatus = {"active", "disabled"};
constexpr std::array<std::string_view, 5> kLinkKind = {"derives_from", "validates", "proves", "fails",
                                                       "covers"};
constexpr std::array<std::string_view, 5> kFormalStatus = {"proven", "cex", "vacuous", "bounded", "error"};
constexpr std::array<std::string_view, 4> kRootCause = {"rtl_bug", "over_specification",
                                                        "missing_assumption", "under_specification"};
constexpr std::array<std::string_view, 2> kDeadCode = {"defensive", "gap"};
constexpr std::array<std::string_view, 4> kLoopKind = {"syntax", "cex", "coverage", "review"};
constexpr std::array<std::string_view, 3> kOutcome = {"fixed", "retry", "disabled"};
constexpr std::array<std::string_view, 12> kArtifact = {
    "spec_chunks",   "requirements", "testplan",         "design_model",
    "properties",    "tracelinks",   "formal_results",   "cex_cases",
    "coverage_metrics", "run_context", "nodes",          "edges"};
constexpr std::array<std::string_view, 12> kArtifactFile = {
    "spec_chunks.json",      "requirements.json", "testplan.json",       "design_model.json",
    "properties.json",       "tracelinks.json",   "formal_results.json", "cex_cases.json",
    "coverage_metrics.json", "run_context.json",  "nodes.csv",           "edges.csv"};

}  // namespace

std::string_view to_string(ReqCategory v) { return kCategory[static_cast<std::size_t>(v)]; }
std::string_view to_string(Priority v) { return kPriority[static_cast<std::size_t>(v)]; }
std::string_view to_string(PropStatus v) { return kPropStatus[static_cast<std::size_t>(v)]; }
std::string_view to_string(LinkKind v) { return kLinkKind[static_cast<std::size_t>(v)]; }
std::string_view to_string(FormalStatus v) { return kFormalStatus[static_cast<std::size_t>(v)]; }
std::string_view to_string(RootCause v) { return kRootCause[static_cast<std::size_t>(v)]; }
std::string_view to_string(DeadCodeClass v) { return kDeadCode[static_cast<std::size_t>(v)]; }
std::string_view to_string(LoopKind v) { return kLoopKind[static_cast<std::size_t>(v)]; }
std::string_view to_string(AttemptOutcome v) { return kOutcome[static_cast<std::size_t>(v)]; }

std::optional<ReqCategory> parse_req_category(std::string_view s) { return lookup<ReqCategory>(kCategory, s); }
std::optional<Priority> parse_priority(std::string_view s) { return lookup<Priority>(kPriority, s); }
std::optional<PropStatus> parse_prop_status(std::string_view s) { return lookup<PropStatus>(kPropStatus, s); }
std::optional<LinkKind> parse_link_kind(std::string_view s) { return lookup<LinkKind>(kLinkKind, s); }
std::optional<FormalStatus> parse_formal_status(std::string_view s) {
  return lookup<FormalStatus>(kFormalStatus, s);
}
std::optional<RootCause> parse_root_cause(std::string_view s) { return lookup<RootCause>(kRootCause, s); }
std::optional<DeadCodeClass> parse_dead_code_class(std::string_view s) {
  return lookup<DeadCodeClass>(kDeadCode, s);
}
std::optional<LoopKind> parse_loop_kind(std::string_view s) { return lookup<LoopKind>(kLoopKind, s); }
std::optional<AttemptOutcome> parse_attempt_outcome(std::string_view s) {
  return lookup<AttemptOutcome>(kOutcome, s);
}

std::string_view artifact_name(ArtifactKind kind) { return kArtifact[static_cast<std::size_t>(kind)]; }
std::string_view artifact_file(ArtifactKind kind) { return kArtifactFile[static_cast<std::size_t>(kind)]; }
std::optional<ArtifactKind> parse_artifact_kind(std::string_view name) {
  return lookup<ArtifactKind>(kArtifact, name);
}

const std::vector<ArtifactKind>& all_artifact_kinds() {
  static const std::vector<ArtifactKind> kAll = [] {
    std::vector<ArtifactKind> v;
    for (std::size_t i = 0; i < kArtifact.size(); ++i) v.push_back(static_cast<ArtifactKind>(i));
    return v;
  }();
  return kAll;
}

PropertyRecord* PropertySet::find(std::string_view prop_id) {
  for (auto& p : properties) {
    if (p.prop_id == prop_id) return &p;
  }
  return nullptr;
}

const PropertyRecord* PropertySet::find(std::string_view prop_id) const {
  for (const auto& p : properties) {
    if (p.prop_id == prop_id) return &p;
  }
  return nullptr;
}

}  // namespace kgv::ir
