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

#ifndef KGV_FORMAL_PROGRAM_HPP_
#define KGV_FORMAL_PROGRAM_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgv/expr/expr.hpp"
#include "kgv/rtl/netmodel.hpp"

namespace kgv::formal::detail {

struct Instr {
  Op op = Op::kConst;
  int width = 0;
  int dst = 0;
  int a = -1;
  int b = -1;
  int c = -1;
  std::uint64_t imm = 0;  // constant value or history index
  int arg_width = 0;      // operand width for binary ops
  int lo = 0;
};

// History kept for a sampled-value node: `depth` previous values of `arg`.
struct Sampled {
  int arg_slot = 0;
  int offset = 0;
  int depth = 0;
};

// Straight-line evaluation of a set of expressions over one slot vector.
// Slots [0, leaves) hold state registers then inputs, in NetModel order.
class Program {
 public:
  explicit Program(const rtl::NetModel& net);

  int add_root(const ExprPtr& e);
  int const_slot(std::uint64_t v);

  int num_slots() const { return next_slot_; }
  int num_state() const { return static_cast<int>(net_.state_bits.size()); }
  int num_inputs() const { return static_cast<int>(net_.inputs.size()); }
  int history_size() const { return history_size_; }
  const std::vector<Sampled>& sampled() const { return sampled_; }

  void run(std::uint64_t* slots, const std::uint64_t* history) const;
  // Shifts every history register, inserting this cycle's argument values.
  void advance_history(const std::uint64_t* slots, std::uint64_t* history) const;

 private:
  int compile(const ExprPtr& e);
  int emit(Instr ins);

  const rtl::NetModel& net_;
  std::unordered_map<std::string, int> leaf_;
  std::unordered_map<const Expr*, int> memo_;
  std::unordered_map<std::string, int> comb_memo_;
  std::map<std::uint64_t, int> consts_;
  std::vector<std::string> comb_stack_;
  std::vector<Instr> code_;
  std::vector<Sampled> sampled_;
  int next_slot_ = 0;
  int history_size_ = 0;
};

}  // namespace kgv::formal::detail

#endif  // KGV_FORMAL_PROGRAM_HPP_
