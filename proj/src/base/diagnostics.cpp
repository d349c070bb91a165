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

#include "kgv/base/diagnostics.hpp"

#include <algorithm>

namespace kgv {

std::string_view to_string(DiagCode code) {
  switch (code) {
    case DiagCode::kSyntax:
      return "SYNTAX";
    case DiagCode::kUnsupported:
      return "UNSUPPORTED";
    case DiagCode::kUndeclared:
      return "UNDECLARED";
    case DiagCode::kDuplicate:
      return "DUPLICATE";
    case DiagCode::kWidthMismatch:
      return "WIDTH_MISMATCH";
    case DiagCode::kMultipleDrivers:
      return "MULTIPLE_DRIVERS";
    case DiagCode::kCombCycle:
      return "COMB_CYCLE";
    case DiagCode::kUnresolvedInstance:
      return "UNRESOLVED_INSTANCE";
    case DiagCode::kUnknownParameter:
      return "UNKNOWN_PARAMETER";
    case DiagCode::kLatch:
      return "LATCH";
    case DiagCode::kNestedImplication:
      return "NESTED_IMPLICATION";
    case DiagCode::kUndefinedMacro:
      return "UNDEFINED_MACRO";
    case DiagCode::kRecursiveMacro:
      return "RECURSIVE_MACRO";
    case DiagCode::kBoundExceeded:
      return "BOUND_EXCEEDED";
    case DiagCode::kAmbiguousPath:
      return "AMBIGUOUS_PATH";
  }
  return "UNKNOWN";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

void Diagnostics::error(DiagCode code, SourceLoc loc, std::string message,
                        std::optional<std::string> prop_id) {
  items_.push_back(Diagnostic{Severity::kError, loc.line, loc.col,
                              std::move(message), code, std::move(prop_id), {}});
}

void Diagnostics::warning(DiagCode code, SourceLoc loc, std::string message) {
  items_.push_back(Diagnostic{Severity::kWarning, loc.line, loc.col,
                              std::move(message), code, std::nullopt, {}});
}

void Diagnostics::append(const Diagnostics& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

void Diagnostics::set_file(const std::string& file) {
  for (auto& d : items_) {
    if (d.file.empty()) d.file = file;
  }
}

bool Diagnostics::has_errors() const { return error_count() > 0; }

std::size_t Diagnostics::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(items_.begin(), items_.end(), [](const Diagnostic& d) {
        return d.severity == Severity::kError;
      }));
}

std::string format_diagnostic(std::string_view file, const Diagnostic& d) {
  std::string out;
  out += d.file.empty() ? file : std::string_view(d.file);
  out += ':' + std::to_string(d.line) + ':' + std::to_string(d.col) + ": ";
  out += to_string(d.severity);
  out += '[';
  out += to_string(d.code);
  out += "]: ";
  out += d.message;
  return out;
}

std::string Diagnostics::format(std::string_view file) const {
  std::string out;
  for (const auto& d : items_) {
    out += format_diagnostic(file, d);
    out += '\n';
  }
  return out;
}

}  // namespace kgv
