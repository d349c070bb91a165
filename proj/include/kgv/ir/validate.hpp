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

#ifndef KGV_IR_VALIDATE_HPP_
#define KGV_IR_VALIDATE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "kgv/base/error.hpp"
#include "kgv/ir/types.hpp"

namespace kgv::ir {

struct Violation {
  std::string path;  // JSON pointer into the document, "" for the root
  std::string message;
  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string path, std::string message) {
    violations.push_back({std::move(path), std::move(message)});
  }
  std::string format() const;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Checks one artifact document against its type invariants. Cross-document
// references are checked by validate_bundle.
ValidationReport validate_artifact(const Json& doc, ArtifactKind kind);
ValidationReport validate_artifact_text(std::string_view text, ArtifactKind kind);
ValidationReport validate_bundle(const RunBundle& b);

// Node type implied by the identifier scheme (CHUNK-, REQ-, PROP-, RES-,
// CEX-, COV-, S<n>), if any.
std::optional<std::string_view> node_type_from_id(std::string_view id);
// Endpoint table for trace links.
bool endpoint_kinds_ok(LinkKind kind, std::string_view src_type, std::string_view dst_type);

}  // namespace kgv::ir

#endif  // KGV_IR_VALIDATE_HPP_
