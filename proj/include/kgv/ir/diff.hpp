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

#ifndef KGV_IR_DIFF_HPP_
#define KGV_IR_DIFF_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgv/ir/types.hpp"

namespace kgv::ir {

struct KindDiff {
  std::vector<std::string> added;
  std::vector<std::string> removed;
  std::vector<std::string> changed;
  bool empty() const { return added.empty() && removed.empty() && changed.empty(); }
  bool operator==(const KindDiff&) const = default;
};

// Latest verdict of one property in each run.
struct StatusTransition {
  std::string prop_id;
  FormalStatus from = FormalStatus::kError;
  FormalStatus to = FormalStatus::kError;
  bool operator==(const StatusTransition&) const = default;
};

struct RunDiff {
  std::map<std::string, KindDiff> kinds;  // only kinds with differences
  std::vector<StatusTransition> transitions;
  bool empty() const { return kinds.empty() && transitions.empty(); }
};

RunDiff diff_runs(const RunBundle& a, const RunBundle& b);
Json to_json(const RunDiff& d);

// The verdict that counts for each property: highest iteration, later entry
// on ties.
std::map<std::string, FormalStatus> latest_status(const std::vector<FormalResult>& results);

}  // namespace kgv::ir

#endif  // KGV_IR_DIFF_HPP_
