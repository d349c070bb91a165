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

#ifndef KGV_IR_JSON_HPP_
#define KGV_IR_JSON_HPP_

#include "kgv/ir/types.hpp"
#include "kgv/ir/validate.hpp"

namespace kgv::ir {

Json to_json(const SpecChunk& v);
Json to_json(const Requirement& v);
Json to_json(const TestPlanEntry& v);
Json to_json(const AttemptNote& v);
Json to_json(const PropertyRecord& v);
Json to_json(const PropertySet& v);
Json to_json(const TraceLink& v);
Json to_json(const FormalResult& v);
Json to_json(const CexCase& v);
Json to_json(const CoverageMetrics& v);
Json to_json(const RunContext& v);
Json to_json(const rtl::DesignModel& v);

template <typename T>
Json to_json(const std::vector<T>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

// The document stored for `kind`. Throws when the bundle lacks that kind or
// the kind is one of the graph tables.
Json artifact_document(const RunBundle& b, ArtifactKind kind);
bool has_artifact(const RunBundle& b, ArtifactKind kind);

// Decodes `doc` into the matching member of `into`. Shape problems are added
// to `report` (paths relative to the document root); the member is set even
// when some fields were defaulted.
void decode_artifact(const Json& doc, ArtifactKind kind, RunBundle& into, ValidationReport& report);

// Decode or throw ValidationError.
template <typename T>
T from_json(const Json& doc);
template <>
SpecChunk from_json<SpecChunk>(const Json& doc);
template <>
Requirement from_json<Requirement>(const Json& doc);
template <>
PropertyRecord from_json<PropertyRecord>(const Json& doc);
template <>
FormalResult from_json<FormalResult>(const Json& doc);
template <>
CexCase from_json<CexCase>(const Json& doc);
template <>
CoverageMetrics from_json<CoverageMetrics>(const Json& doc);

}  // namespace kgv::ir

#endif  // KGV_IR_JSON_HPP_
