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

#ifndef KGV_AGENTS_PROPFILE_HPP_
#define KGV_AGENTS_PROPFILE_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kgv/ir/types.hpp"
#include "kgv/kg/signal_index.hpp"
#include "kgv/rtl/netmodel.hpp"
#include "kgv/sva/bind.hpp"

namespace kgv::agents {

// Property file text for a set: macros, default clocking, then each record
// in id order. Disabled records are kept as comments. Updates line spans.
std::string assemble(ir::PropertySet& set);

struct Compiled {
  std::optional<sva::PropertyFile> file;
  Diagnostics parse;
  std::vector<sva::BindError> bind;
  std::vector<sva::BoundProperty> bound;
  bool ok() const { return file && !parse.has_errors() && bind.empty(); }
  // One line per problem, parse diagnostics first.
  std::string describe() const;
};

struct DesignView {
  const rtl::DesignModel& design;
  const rtl::NetModel& net;
  const kg::SignalIndex& index;
};

// Compiles `text` in a wrapper holding only the set's macros and clocking.
Compiled compile_text(const ir::PropertySet& set, const std::string& text, const DesignView& dv);
// Compiles the active records whose id passes `keep` (all when empty).
Compiled compile_set(const ir::PropertySet& set, const DesignView& dv,
                     const std::function<bool(const ir::PropertyRecord&)>& keep = {});

// Next free PROP-<n> id.
std::string next_prop_id(const ir::PropertySet& set);

// Copies `e` with every kRef named `from` replaced by `to`.
ExprPtr replace_ref(const ExprPtr& e, const std::string& from, const ExprPtr& to);
sva::PropAst replace_ref(const sva::PropAst& ast, const std::string& from, const ExprPtr& to);

// The only signal an identifier can mean once wrong leading scope tokens are
// dropped (split on '.' and '_'), or nullopt when none or several fit.
std::optional<std::string> unique_candidate(const kg::SignalIndex& idx, const rtl::NetModel& net,
                                            const std::string& ident);

// `path width` lines for every design signal.
std::string signal_table(const rtl::NetModel& net);

}  // namespace kgv::agents

#endif  // KGV_AGENTS_PROPFILE_HPP_
