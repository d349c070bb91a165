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

#ifndef KGV_SVA_BIND_HPP_
#define KGV_SVA_BIND_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "kgv/kg/signal_index.hpp"
#include "kgv/rtl/design.hpp"
#include "kgv/rtl/netmodel.hpp"
#include "kgv/sva/property.hpp"

namespace kgv::sva {

enum class BindErrorKind {
  kUndeclaredIdentifier,
  kUndefinedMacro,
  kWidthMismatch,
  kAmbiguousPath,
  kRecursiveMacro,
};

std::string_view to_string(BindErrorKind kind);

struct BindError {
  std::string prop_id;
  std::string identifier;
  int line = 0;
  int col = 0;
  BindErrorKind kind = BindErrorKind::kUndeclaredIdentifier;
  std::string message;
  std::vector<std::string> candidates;  // ambiguous_path only
};

// A property whose expressions reference NetModel names only, with widths
// resolved and every sequence element and the disable condition 1 bit.
struct BoundProperty {
  std::string prop_id;
  PropKind kind = PropKind::kAssertion;
  int line = 0;  // first line of the declaration
  std::string clock;
  ExprPtr disable;
  bool has_implication = false;
  bool overlapped = true;
  Sequence antecedent;
  Sequence consequent;
};

struct BindResult {
  std::vector<BoundProperty> bound;
  std::vector<BindError> errors;
  bool ok() const { return errors.empty(); }
  std::vector<BindError> errors_for(std::string_view prop_id) const;
};

// Identifiers resolve by exact path, then relative to the top module, then
// as a top-module parameter, then by unique suffix. Macros expand one level.
BindResult bind(const PropertyFile& f, const rtl::DesignModel& m, const rtl::NetModel& net,
                const kg::SignalIndex& idx);

// Converts bind errors to diagnostics carrying the property id.
Diagnostics to_diagnostics(const std::vector<BindError>& errors);

}  // namespace kgv::sva

#endif  // KGV_SVA_BIND_HPP_
