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

#ifndef KGV_BASE_DIAGNOSTICS_HPP_
#define KGV_BASE_DIAGNOSTICS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgv {

enum class Severity { kError, kWarning };

enum class DiagCode {
  kSyntax,
  kUnsupported,
  kUndeclared,
  kDuplicate,
  kWidthMismatch,
  kMultipleDrivers,
  kCombCycle,
  kUnresolvedInstance,
  kUnknownParameter,
  kLatch,
  kNestedImplication,
  kUndefinedMacro,
  kRecursiveMacro,
  kBoundExceeded,
  kAmbiguousPath,
};

std::string_view to_string(DiagCode code);
std::string_view to_string(Severity severity);

struct SourceLoc {
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  Severity severity = Severity::kError;
  int line = 0;
  int col = 0;
  std::string message;
  DiagCode code = DiagCode::kSyntax;
  // Enclosing property, when the diagnostic was raised inside one.
  std::optional<std::string> prop_id;
  // Source file, when known; overrides the file passed to format().
  std::string file;
};

class Diagnostics {
 public:
  void error(DiagCode code, SourceLoc loc, std::string message,
             std::optional<std::string> prop_id = std::nullopt);
  void warning(DiagCode code, SourceLoc loc, std::string message);
  void add(Diagnostic d) { items_.push_back(std::move(d)); }
  void append(const Diagnostics& other);

  bool has_errors() const;
  std::size_t error_count() const;
  bool empty() const { return items_.empty(); }
  void set_file(const std::string& file);
  const std::vector<Diagnostic>& items() const { return items_; }
  std::vector<Diagnostic>& mutable_items() { return items_; }

  // `file:line:col: severity[CODE]: message`, one per line.
  std::string format(std::string_view file) const;

 private:
  std::vector<Diagnostic> items_;
};

std::string format_diagnostic(std::string_view file, const Diagnostic& d);

// A value plus the diagnostics produced while computing it. `value` is
// present iff no error-severity diagnostic was raised.
template <typename T>
struct ParseResult {
  std::optional<T> value;
  Diagnostics diags;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  T& operator*() { return *value; }
  const T* operator->() const { return &*value; }
  T* operator->() { return &*value; }
};

}  // namespace kgv

#endif  // KGV_BASE_DIAGNOSTICS_HPP_
