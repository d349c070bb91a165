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

#ifndef KGV_SRC_RTL_INTERNAL_HPP_
#define KGV_SRC_RTL_INTERNAL_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "kgv/rtl/ast.hpp"

namespace kgv::rtl::detail {

using ParamValues = std::map<std::string, std::int64_t>;

// All three throw ExprError.
std::int64_t const_int(const ExprPtr& raw, const ParamValues& params);
int range_width(const RangeAst& r, const ParamValues& params, SourceLoc loc);
ParamValues eval_params(const ModuleAst& m, const ParamValues& overrides);

}  // namespace kgv::rtl::detail

#endif  // KGV_SRC_RTL_INTERNAL_HPP_
