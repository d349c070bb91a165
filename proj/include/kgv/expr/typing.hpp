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

#ifndef KGV_EXPR_TYPING_HPP_
#define KGV_EXPR_TYPING_HPP_

#include <cstdint>
#include <functional>
#include <string>

#include "kgv/base/diagnostics.hpp"
#include "kgv/base/error.hpp"
#include "kgv/expr/expr.hpp"

namespace kgv {

class ExprError : public Error {
 public:
  ExprError(DiagCode code, SourceLoc loc, const std::string& message)
      : Error(message), code_(code), loc_(loc) {}
  DiagCode code() const { return code_; }
  SourceLoc loc() const { return loc_; }

 private:
  DiagCode code_;
  SourceLoc loc_;
};

// Name binding for resolve(). `ref` maps a raw kRef node to a resolved
// expression (a sized kRef, a constant, or any resolved subtree) and throws
// ExprError when the name is unknown.
struct Resolver {
  std::function<ExprPtr(const Expr&)> ref;
  std::function<ExprPtr(const Expr&)> macro;
  bool allow_temporal = false;
};

// Binds names and assigns a width to every node under the width discipline:
// operands of bitwise, arithmetic and comparison operators must agree,
// unsized constants adopt the width of the other operand, and constant
// subtrees are folded. The result may itself be an unsized constant.
ExprPtr resolve(const ExprPtr& raw, const Resolver& resolver);

// Gives an unsized constant the requested width; sized expressions must
// already match.
ExprPtr coerce(const ExprPtr& e, int width);

// 1-bit truth value of a resolved expression (nonzero test).
ExprPtr as_bool(const ExprPtr& e);

// Folding constructors over resolved operands.
ExprPtr fold_not(const ExprPtr& a);  // logical negation
ExprPtr fold_and(const ExprPtr& a, const ExprPtr& b);
ExprPtr fold_or(const ExprPtr& a, const ExprPtr& b);
ExprPtr fold_mux(const ExprPtr& c, const ExprPtr& t, const ExprPtr& f);
ExprPtr fold_eq(const ExprPtr& a, const ExprPtr& b);

bool is_true_const(const ExprPtr& e);
bool is_false_const(const ExprPtr& e);

// Values of kRef and temporal nodes during evaluation.
class ValueEnv {
 public:
  virtual ~ValueEnv() = default;
  virtual std::uint64_t ref(const Expr& node) const = 0;
  virtual std::uint64_t temporal(const Expr& node) const;
};

std::uint64_t evaluate(const Expr& e, const ValueEnv& env);

// Applies a non-temporal operator to already evaluated operands.
std::uint64_t apply_binary(Op op, int operand_width, std::uint64_t a, std::uint64_t b);

}  // namespace kgv

#endif  // KGV_EXPR_TYPING_HPP_
