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

#ifndef KGV_TESTS_SUPPORT_RTL_INTERP_HPP_
#define KGV_TESTS_SUPPORT_RTL_INTERP_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "kgv/rtl/design.hpp"

namespace kgv::testing {

// Direct statement-level interpreter for a single flat module. Values are
// keyed by local signal name. Knows nothing about NetModel.
class RtlInterpreter {
 public:
  RtlInterpreter(const rtl::DesignModel& m, const std::string& module);

  void set_registers(const std::map<std::string, std::uint64_t>& values);
  // Settles combinational logic for `inputs`, then applies one clock edge.
  // Returns the ids of every statement executed in that cycle.
  std::set<std::string> step(const std::map<std::string, std::uint64_t>& inputs);
  const std::map<std::string, std::uint64_t>& values() const { return values_; }
  int width(const std::string& name) const { return widths_.at(name); }

 private:
  struct Val {
    std::uint64_t v;
    int w;  // 0: unsized
  };
  Val eval(const ExprPtr& e, const std::map<std::string, std::uint64_t>& env) const;
  void exec(const rtl::StmtPtr& s, std::map<std::string, std::uint64_t>& blk,
            std::map<std::string, std::uint64_t>& nba, std::set<std::string>* ran);
  void settle();

  const rtl::ModuleAst* m_ = nullptr;
  std::map<std::string, std::int64_t> params_;
  std::map<std::string, int> widths_;
  std::map<std::string, std::uint64_t> values_;
};

}  // namespace kgv::testing

#endif  // KGV_TESTS_SUPPORT_RTL_INTERP_HPP_
