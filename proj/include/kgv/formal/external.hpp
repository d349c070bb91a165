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

#ifndef KGV_FORMAL_EXTERNAL_HPP_
#define KGV_FORMAL_EXTERNAL_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "kgv/ir/types.hpp"
#include "kgv/ir/validate.hpp"

namespace kgv::formal {

// External tool report:
//   {"tool": str, "version": str?,
//    "properties": [{"name": str, "status": str, "depth": int?,
//                    "runtime_ms": number?, "vcd": str?, "message": str?}]}
// `name` is a property label (PROP_001) or id (PROP-001). Vendor statuses map
// case-insensitively:
//   proven, proved, pass, passed, holds, covered       -> proven
//   cex, fail, failed, falsified, violated             -> cex (vcd required)
//   vacuous, vacuously_proven, unreachable             -> vacuous
//   undetermined, inconclusive, bounded, timeout,
//   bounded_proof, unknown                             -> bounded
//   error                                              -> error
// Any other status becomes error with the vendor text kept in `message`.
std::optional<ir::FormalStatus> map_external_status(std::string_view vendor_status);

// Throws ir::ValidationError when the report does not match the schema.
std::vector<ir::FormalResult> import_external_results(const ir::Json& report);

}  // namespace kgv::formal

#endif  // KGV_FORMAL_EXTERNAL_HPP_
