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

#ifndef KGV_TESTS_SUPPORT_NETSIM_HPP_
#define KGV_TESTS_SUPPORT_NETSIM_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "kgv/rtl/netmodel.hpp"

namespace kgv::testing {

// Cycle simulator over an elaborated NetModel.
class NetSim {
 public:
  explicit NetSim(const rtl::NetModel& net);
  const std::map<std::string, std::uint64_t>& state() const { return state_; }
  void set_state(std::map<std::string, std::uint64_t> s) { state_ = std::move(s); }
  // Applies one edge; returns the statements whose guard held.
  std::set<std::string> step(const std::map<std::string, std::uint64_t>& inputs);
  std::uint64_t comb(const std::string& name, const std::map<std::string, std::uint64_t>& inputs) const;

 private:
  const rtl::NetModel& net_;
  std::map<std::string, std::uint64_t> state_;
};

// Checks every node of every expression for width agreement; returns an
// empty string or a description of the first violation.
std::string check_widths(const rtl::NetModel& net);

}  // namespace kgv::testing

#endif  // KGV_TESTS_SUPPORT_NETSIM_HPP_
