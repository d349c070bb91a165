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

#ifndef KGV_RTL_NETMODEL_HPP_
#define KGV_RTL_NETMODEL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgv/base/diagnostics.hpp"
#include "kgv/expr/expr.hpp"
#include "kgv/rtl/design.hpp"

namespace kgv::rtl {

// Single-clock transition system over hierarchical names (`top.inst.sig`).
// Every expression refers only to names in `state_bits` and `inputs`.
struct NetModel {
  std::string top;
  std::string clock;  // empty for purely combinational designs
  std::vector<std::pair<std::string, int>> state_bits;  // sorted by name
  std::vector<std::pair<std::string, int>> inputs;      // sorted by name, clock excluded
  std::map<std::string, ExprPtr> next_state;
  std::map<std::string, std::uint64_t> init;
  std::map<std::string, ExprPtr> statement_guards;
  // Every other net (wires, outputs, combinational regs), fully inlined.
  std::map<std::string, ExprPtr> comb;

  // All named signals with widths, sorted by name.
  std::vector<std::pair<std::string, int>> signal_paths() const;
  std::optional<int> width_of(std::string_view name) const;
  bool is_state(std::string_view name) const;
  bool is_input(std::string_view name) const;
};

ParseResult<NetModel> elaborate(const DesignModel& m, const std::string& top,
                                const std::map<std::string, std::int64_t>& overrides = {});

// Records the elaborated top and flattened signal paths in the design model.
void attach_elaboration(DesignModel& m, const NetModel& net);

}  // namespace kgv::rtl

#endif  // KGV_RTL_NETMODEL_HPP_
