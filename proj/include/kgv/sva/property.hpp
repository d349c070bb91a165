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

#ifndef KGV_SVA_PROPERTY_HPP_
#define KGV_SVA_PROPERTY_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgv/base/diagnostics.hpp"
#include "kgv/expr/expr.hpp"

namespace kgv::sva {

constexpr int kDefaultMaxDelay = 32;

enum class PropKind { kAssertion, kAssumption, kCover };

std::string_view to_string(PropKind kind);
std::optional<PropKind> parse_prop_kind(std::string_view text);
std::string_view directive_keyword(PropKind kind);  // assert/assume/cover

// One step of a flattened sequence: wait between `min_delay` and
// `max_delay` cycles after the previous element (after the start for the
// first element), then `expr` must hold.
struct SeqElem {
  int min_delay = 0;
  int max_delay = 0;
  ExprPtr expr;
};

using Sequence = std::vector<SeqElem>;

struct PropAst {
  std::optional<std::string> clock;  // explicit `@(posedge clk)`
  ExprPtr disable;                   // `disable iff (...)`, may be null
  // With an implication, `antecedent |-> consequent` (or `|=>`).
  // Without one, the body is `consequent` and `antecedent` is empty.
  bool has_implication = false;
  bool overlapped = true;
  Sequence antecedent;
  Sequence consequent;
};

struct Macro {
  std::string name;
  std::string text;
  int line = 0;
};

struct PropertyDecl {
  std::string prop_id;
  PropKind kind = PropKind::kAssertion;
  PropAst ast;
  int start_line = 0;
  int end_line = 0;
};

struct PropertyFile {
  std::vector<Macro> macros;
  std::optional<std::string> default_clock;
  std::vector<PropertyDecl> properties;
  std::map<std::string, std::pair<int, int>> line_map;

  const Macro* find_macro(std::string_view name) const;
  const PropertyDecl* find(std::string_view prop_id) const;
};

struct ParseOptions {
  int max_delay = kDefaultMaxDelay;
  // Skip the check that every property has a clock (used when compiling a
  // fragment whose clocking comes from elsewhere).
  bool require_clock = true;
};

ParseResult<PropertyFile> parse_properties(std::string_view source, const ParseOptions& opt = {});

// Macros, then default clocking, then one property per line in id order.
// Updates `f.line_map` to the emitted positions.
std::string emit_properties(PropertyFile& f);

// Single-line text of one property statement, with its label.
std::string format_property(const PropertyDecl& p);
std::string format_body(const PropAst& ast);
std::string format_sequence(const Sequence& s);

// PROP-001 <-> PROP_001; other labels keep their spelling.
std::string label_for(std::string_view prop_id);
std::string prop_id_for(std::string_view label);

// Orders ids by prefix, then numerically (PROP-2 before PROP-10).
bool id_less(std::string_view a, std::string_view b);

// Structural equality of parsed files, ignoring line numbers.
bool equivalent(const PropertyFile& a, const PropertyFile& b);
bool equivalent(const PropAst& a, const PropAst& b);

}  // namespace kgv::sva

#endif  // KGV_SVA_PROPERTY_HPP_
