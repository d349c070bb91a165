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

#ifndef KGV_EXPR_EXPR_HPP_
#define KGV_EXPR_EXPR_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kgv/base/diagnostics.hpp"

namespace kgv {

// Bit-vector expression tree shared by the RTL frontend, the property
// language and the formal engine. Two-valued, at most 64 bits wide.
enum class Op : std::uint8_t {
  kConst,
  kRef,
  kMacro,
  kNot,     // ~
  kLogNot,  // !
  kAnd,
  kOr,
  kXor,
  kLogAnd,
  kLogOr,
  kAdd,
  kSub,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kMux,
  kConcat,
  kSlice,
  kPast,
  kRose,
  kFell,
  kStable,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Op op = Op::kConst;
  // 0 marks an unsized constant whose width is taken from context.
  int width = 0;
  std::uint64_t value = 0;
  // kRef: (possibly dotted) signal name; kMacro: macro name.
  std::string name;
  // kSlice once resolved: bit bounds. kPast: cycle count in `hi`.
  int hi = 0;
  int lo = 0;
  // kSlice before resolution carries {base, msb, lsb}; after, {base}.
  std::vector<ExprPtr> args;
  SourceLoc loc;
};

constexpr int kMaxWidth = 64;

inline std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

bool is_const(const Expr& e);
bool is_flex(const Expr& e);
bool is_temporal(Op op);
bool is_binary(Op op);
bool is_comparison(Op op);

ExprPtr make_const(std::uint64_t value, int width, SourceLoc loc = {});
ExprPtr make_ref(std::string name, int width = 0, SourceLoc loc = {});
ExprPtr make_macro(std::string name, SourceLoc loc = {});
ExprPtr make_unary(Op op, ExprPtr a, SourceLoc loc = {});
ExprPtr make_binary(Op op, ExprPtr a, ExprPtr b, SourceLoc loc = {});
ExprPtr make_mux(ExprPtr cond, ExprPtr t, ExprPtr f, SourceLoc loc = {});
ExprPtr make_concat(std::vector<ExprPtr> parts, SourceLoc loc = {});
ExprPtr make_slice(ExprPtr base, int hi, int lo, SourceLoc loc = {});
ExprPtr make_raw_slice(ExprPtr base, ExprPtr msb, ExprPtr lsb, SourceLoc loc = {});
ExprPtr make_past(ExprPtr a, int cycles, SourceLoc loc = {});

// Structural equality, ignoring source locations.
bool equal(const Expr& a, const Expr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);

// Verilog/SVA surface syntax with minimal parenthesization.
std::string to_verilog(const Expr& e);

// Every kRef name in the tree, in first-occurrence order.
std::vector<std::string> referenced_names(const Expr& e);
bool contains_op(const Expr& e, Op op);

}  // namespace kgv

#endif  // KGV_EXPR_EXPR_HPP_
