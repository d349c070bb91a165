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

#ifndef KGV_AGENTS_PROTOCOL_HPP_
#define KGV_AGENTS_PROTOCOL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgv/base/error.hpp"
#include "kgv/ir/types.hpp"

namespace kgv::agents {

using Json = ir::Json;

enum class Role {
  kSvaLead,
  kSpecAnalyst,
  kSvaAuthor,
  kSvaReviewer,
  kSvaPatcher,
  kCodeExtractor,
  kSyntaxAnalyzer,
  kSyntaxFixer,
  kSyntaxValidator,
  kVcdParser,
  kSpecAssertionAnalyzer,
  kRtlAnalyzer,
  kCexFixer,
  kCovLeadAgent,
  kCovAnalyzer,
  kCovProcessor,
  kCovImprover,
};

const std::vector<Role>& all_roles();
std::string_view to_string(Role r);
std::optional<Role> parse_role(std::string_view s);
std::string_view system_instructions(Role r);

enum class Shape { kAnalysis, kCodePatch, kVerdict, kPropertyBlock };
std::string_view to_string(Shape s);
std::optional<Shape> parse_shape(std::string_view s);

// Context sections, in rendering order.
enum class Section { kRequirement, kSpecFragment, kSignalTable, kRulebook, kPriorCode, kDiagnostics };
std::string_view heading(Section s);

inline constexpr std::size_t kDefaultBudget = 16384;

struct PromptEnvelope {
  Role role = Role::kSvaLead;
  std::string step_id;
  Shape expected_shape = Shape::kAnalysis;
  std::map<Section, std::string> sections;
  std::size_t budget = kDefaultBudget;

  PromptEnvelope& set(Section s, std::string text);
  const std::string* get(Section s) const;
  // Sections in fixed order; bodies are cut so the result fits the budget.
  std::string context() const;
  // sha256 over role, step, shape and context.
  std::string digest() const;
};

class ProtocolError : public Error {
 public:
  ProtocolError(const std::string& message, std::string raw = {})
      : Error("protocol error: " + message), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

class PatchError : public Error {
 public:
  using Error::Error;
};

struct Hunk {
  int old_start = 1;
  std::vector<std::string> lines;  // with leading ' ', '-' or '+'
};

struct UnifiedPatch {
  std::vector<Hunk> hunks;
};

// Single-file unified diff. `name` fills the ---/+++ headers.
std::string make_patch(std::string_view before, std::string_view after, std::string_view name);
UnifiedPatch parse_patch(std::string_view text);  // throws PatchError
std::string apply_patch(std::string_view before, const UnifiedPatch& p);  // throws PatchError

struct Verdict {
  bool approve = false;
  std::vector<std::string> reasons;
};

struct AgentResponse {
  Role role = Role::kSvaLead;
  std::string step_id;
  Shape shape = Shape::kAnalysis;
  std::string raw;
  std::string analysis;  // analysis
  UnifiedPatch patch;    // code_patch
  Verdict verdict;       // verdict
  std::string block;     // property_block
};

// Throws ProtocolError (carrying `raw`) when the text does not parse as the
// envelope's expected shape.
AgentResponse parse_response(const PromptEnvelope& env, const std::string& raw);

// `key: value` lines of an analysis payload; keys lower-cased.
std::map<std::string, std::string> analysis_fields(std::string_view text);

struct TranscriptEntry {
  std::string digest;
  Role role = Role::kSvaLead;
  std::string step_id;
  Shape shape = Shape::kAnalysis;
  std::string response;
  bool operator==(const TranscriptEntry&) const = default;
};

struct Transcript {
  std::string run_id;
  std::string created_at;
  std::vector<TranscriptEntry> entries;
  bool operator==(const Transcript&) const = default;
};

Json to_json(const Transcript& t);
Transcript transcript_from_json(const Json& j);  // throws Error
std::string serialize(const Transcript& t);
Transcript load_transcript(const std::string& path);

}  // namespace kgv::agents

#endif  // KGV_AGENTS_PROTOCOL_HPP_
