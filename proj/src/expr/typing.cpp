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

#include "kgv/expr/typing.hpp"

#include <utility>
#include <vector>

namespace kgv {
namespace {

std::int64_t as_signed(const Expr& c) { return static_cast<std::int64_t>(c.value); }

class NoRefEnv : public ValueEnv {
 public:
  std::uint64_t ref(const Expr& node) const override {
    throw Error("unexpected reference '" + node.name + "' in constant");
  }
};

ExprPtr fold_if_const(ExprPtr e) {
  if (is_temporal(e->op) || e->op == Op::kConst) return e;
  for (const auto& a : e->args) {
    if (a->op != Op::kConst) return e;
  }
  return make_const(evaluate(*e, NoRefEnv{}), e->width, e->loc);
}

// Unsized-unsized arithmetic follows signed 64-bit integer semantics.
ExprPtr fold_flex(Op op, const Expr& a, const Expr& b, SourceLoc loc) {
  std::int64_t x = as_signed(a);
  std::int64_t y = as_signed(b);
  switch (op) {
    case Op::kAdd:
      return make_const(static_cast<std::uint64_t>(x + y), 0, loc);
    case Op::kSub:
      return make_const(static_cast<std::uint64_t>(x - y), 0, loc);
    case Op::kAnd:
      return make_const(static_cast<std::uint64_t>(x & y), 0, loc);
    case Op::kOr:
      return make_const(static_cast<std::uint64_t>(x | y), 0, loc);
    case Op::kXor:
      return make_const(static_cast<std::uint64_t>(x ^ y), 0, loc);
    case Op::kEq:
      return make_const(x == y, 1, loc);
    case Op::kNe:
      return make_const(x != y, 1, loc);
    case Op::kLt:
      return make_const(x < y, 1, loc);
    case Op::kLe:
      return make_const(x <= y, 1, loc);
    case Op::kGt:
      return make_const(x > y, 1, loc);
    case Op::kGe:
      return make_const(x >= y, 1, loc);
    default:
      break;
  }
  throw ExprError(DiagCode::kSyntax, loc, "unexpected operator in constant fold");
}

std::pair<ExprPtr, ExprPtr> unify(ExprPtr a, ExprPtr b, SourceLoc loc) {
  if (is_flex(*a) && !is_flex(*b)) a = coerce(a, b->width);
  if (is_flex(*b) && !is_flex(*a)) b = coerce(b, a->width);
  if (a->width != b->width) {
    throw ExprError(DiagCode::kWidthMismatch, loc,
                    "width mismatch: " + std::to_string(a->width) + " vs " +
                        std::to_string(b->width) + " bits");
  }
  return {std::move(a), std::move(b)};
}

ExprPtr require_sized(ExprPtr e, const char* what) {
  if (is_flex(*e)) {
    throw ExprError(DiagCode::kWidthMismatch, e->loc,
                    std::string("unsized constant not allowed as ") + what);
  }
  return e;
}

ExprPtr resolve_node(const ExprPtr& raw, const Resolver& r) {
  const Expr& e = *raw;
  switch (e.op) {
    case Op::kConst:
      return raw;
    case Op::kRef: {
      ExprPtr out = r.ref(e);
      if (!out) throw ExprError(DiagCode::kUndeclared, e.loc, "undeclared identifier '" + e.name + "'");
      return out;
    }
    case Op::kMacro: {
      if (!r.macro) throw ExprError(DiagCode::kUndefinedMacro, e.loc, "undefined macro `" + e.name);
      ExprPtr out = r.macro(e);
      if (!out) throw ExprError(DiagCode::kUndefinedMacro, e.loc, "undefined macro `" + e.name);
      return out;
    }
    case Op::kNot: {
      ExprPtr a = require_sized(resolve_node(e.args[0], r), "operand of '~'");
      return fold_if_const(make_unary(Op::kNot, a, e.loc));
    }
    case Op::kLogNot:
      return fold_not(as_bool(resolve_node(e.args[0], r)));
    case Op::kLogAnd:
    case Op::kLogOr: {
      ExprPtr a = as_bool(resolve_node(e.args[0], r));
      ExprPtr b = as_bool(resolve_node(e.args[1], r));
      return fold_if_const(make_binary(e.op, a, b, e.loc));
    }
    case Op::kAnd:
    case Op::kOr:
    case Op::kXor:
    case Op::kAdd:
    case Op::kSub:
    case Op::kEq:
    case Op::kNe:
    case Op::kLt:
    case Op::kLe:
    case Op::kGt:
    case Op::kGe: {
      ExprPtr a = resolve_node(e.args[0], r);
      ExprPtr b = resolve_node(e.args[1], r);
      if (is_flex(*a) && is_flex(*b)) return fold_flex(e.op, *a, *b, e.loc);
      auto [x, y] = unify(a, b, e.loc);
      return fold_if_const(make_binary(e.op, x, y, e.loc));
    }
    case Op::kMux: {
      ExprPtr c = as_bool(resolve_node(e.args[0], r));
      ExprPtr t = resolve_node(e.args[1], r);
      ExprPtr f = resolve_node(e.args[2], r);
      if (is_flex(*t) && is_flex(*f)) {
        if (c->op == Op::kConst) return c->value ? t : f;
        t = coerce(t, 32);
        f = coerce(f, 32);
      }
      auto [x, y] = unify(t, f, e.loc);
      return fold_mux(c, x, y);
    }
    case Op::kConcat: {
      std::vector<ExprPtr> parts;
      int total = 0;
      for (const auto& a : e.args) {
        parts.push_back(require_sized(resolve_node(a, r), "concatenation operand"));
        total += parts.back()->width;
      }
      if (total > kMaxWidth) {
        throw ExprError(DiagCode::kUnsupported, e.loc, "concatenation wider than 64 bits");
      }
      return fold_if_const(make_concat(std::move(parts), e.loc));
    }
    case Op::kSlice: {
      ExprPtr base = require_sized(resolve_node(e.args[0], r), "part-select base");
      int hi = e.hi;
      int lo = e.lo;
      if (e.args.size() == 3) {
        ExprPtr m = resolve_node(e.args[1], r);
        ExprPtr l = resolve_node(e.args[2], r);
        if (m->op != Op::kConst || l->op != Op::kConst) {
          throw ExprError(DiagCode::kUnsupported, e.loc, "part-select bounds must be constant");
        }
        hi = static_cast<int>(as_signed(*m));
        lo = static_cast<int>(as_signed(*l));
      }
      if (lo < 0 || hi < lo || hi >= base->width) {
        throw ExprError(DiagCode::kWidthMismatch, e.loc,
                        "part-select [" + std::to_string(hi) + ":" + std::to_string(lo) +
                            "] out of range for " + std::to_string(base->width) + "-bit operand");
      }
      if (lo == 0 && hi == base->width - 1) return base;
      return fold_if_const(make_slice(base, hi, lo, e.loc));
    }
    case Op::kPast:
    case Op::kRose:
    case Op::kFell:
    case Op::kStable: {
      if (!r.allow_temporal) {
        throw ExprError(DiagCode::kUnsupported, e.loc, "sampled-value functions are not allowed here");
      }
      ExprPtr a = require_sized(resolve_node(e.args[0], r), "sampled-value argument");
      if (e.op == Op::kPast) return make_past(a, e.hi, e.loc);
      return make_unary(e.op, a, e.loc);
    }
  }
  throw ExprError(DiagCode::kSyntax, e.loc, "unknown expression node");
}

}  // namespace

ExprPtr resolve(const ExprPtr& raw, const Resolver& resolver) {
  return resolve_node(raw, resolver);
}

ExprPtr coerce(const ExprPtr& e, int width) {
  if (!is_flex(*e)) {
    if (e->width != width) {
      throw ExprError(DiagCode::kWidthMismatch, e->loc,
                      "width mismatch: " + std::to_string(e->width) + " vs " +
                          std::to_string(width) + " bits");
    }
    return e;
  }
  std::int64_t v = as_signed(*e);
  if (v < 0 || (width < 64 && static_cast<std::uint64_t>(v) >> width != 0)) {
    throw ExprError(DiagCode::kWidthMismatch, e->loc,
                    "constant " + std::to_string(v) + " does not fit in " +
                        std::to_string(width) + " bits");
  }
  return make_const(static_cast<std::uint64_t>(v), width, e->loc);
}

ExprPtr as_bool(const ExprPtr& e) {
  if (e->width == 1) return e;
  if (e->op == Op::kConst) return make_const(e->value != 0, 1, e->loc);
  return make_binary(Op::kNe, e, make_const(0, e->width), e->loc);
}

bool is_true_const(const ExprPtr& e) { return e->op == Op::kConst && e->value != 0; }
bool is_false_const(const ExprPtr& e) { return e->op == Op::kConst && e->value == 0; }

ExprPtr fold_not(const ExprPtr& a) {
  ExprPtr b = as_bool(a);
  if (b->op == Op::kConst) return make_const(b->value == 0, 1, b->loc);
  if (b->op == Op::kLogNot) return as_bool(b->args[0]);
  return make_unary(Op::kLogNot, b, b->loc);
}

ExprPtr fold_and(const ExprPtr& a, const ExprPtr& b) {
  ExprPtr x = as_bool(a);
  ExprPtr y = as_bool(b);
  if (is_false_const(x) || is_false_const(y)) return make_const(0, 1);
  if (is_true_const(x)) return y;
  if (is_true_const(y)) return x;
  return make_binary(Op::kLogAnd, x, y, x->loc);
}

ExprPtr fold_or(const ExprPtr& a, const ExprPtr& b) {
  ExprPtr x = as_bool(a);
  ExprPtr y = as_bool(b);
  if (is_true_const(x) || is_true_const(y)) return make_const(1, 1);
  if (is_false_const(x)) return y;
  if (is_false_const(y)) return x;
  return make_binary(Op::kLogOr, x, y, x->loc);
}

ExprPtr fold_mux(const ExprPtr& c, const ExprPtr& t, const ExprPtr& f) {
  ExprPtr cond = as_bool(c);
  if (cond->op == Op::kConst) return cond->value ? t : f;
  if (t == f || equal(*t, *f)) return t;
  return fold_if_const(make_mux(cond, t, f, cond->loc));
}

ExprPtr fold_eq(const ExprPtr& a, const ExprPtr& b) {
  auto [x, y] = unify(a, b, a->loc);
  return fold_if_const(make_binary(Op::kEq, x, y, a->loc));
}

std::uint64_t ValueEnv::temporal(const Expr& node) const {
  throw Error("sampled-value function evaluated without history: " + to_verilog(node));
}

std::uint64_t apply_binary(Op op, int w, std::uint64_t a, std::uint64_t b) {
  std::uint64_t m = width_mask(w);
  switch (op) {
    case Op::kAnd:
      return a & b;
    case Op::kOr:
      return a | b;
    case Op::kXor:
      return a ^ b;
    case Op::kLogAnd:
      return (a != 0) && (b != 0);
    case Op::kLogOr:
      return (a != 0) || (b != 0);
    case Op::kAdd:
      return (a + b) & m;
    case Op::kSub:
      return (a - b) & m;
    case Op::kEq:
      return a == b;
    case Op::kNe:
      return a != b;
    case Op::kLt:
      return a < b;
    case Op::kLe:
      return a <= b;
    case Op::kGt:
      return a > b;
    case Op::kGe:
      return a >= b;
    default:
      break;
  }
  throw Error("apply_binary: not a binary operator");
}

std::uint64_t evaluate(const Expr& e, const ValueEnv& env) {
  switch (e.op) {
    case Op::kConst:
      return e.value;
    case Op::kRef:
      return env.ref(e) & width_mask(e.width);
    case Op::kMacro:
      throw Error("unexpanded macro `" + e.name);
    case Op::kNot:
      return ~evaluate(*e.args[0], env) & width_mask(e.width);
    case Op::kLogNot:
      return evaluate(*e.args[0], env) == 0;
    case Op::kLogAnd:
      return evaluate(*e.args[0], env) != 0 && evaluate(*e.args[1], env) != 0;
    case Op::kLogOr:
      return evaluate(*e.args[0], env) != 0 || evaluate(*e.args[1], env) != 0;
    case Op::kMux:
      return evaluate(*e.args[0], env) ? evaluate(*e.args[1], env) : evaluate(*e.args[2], env);
    case Op::kConcat: {
      std::uint64_t v = 0;
      for (const auto& a : e.args) {
        v = (a->width >= 64 ? 0 : v << a->width) | evaluate(*a, env);
      }
      return v;
    }
    case Op::kSlice:
      return (evaluate(*e.args[0], env) >> e.lo) & width_mask(e.width);
    case Op::kPast:
    case Op::kRose:
    case Op::kFell:
    case Op::kStable:
      return env.temporal(e);
    default:
      return apply_binary(e.op, e.args[0]->width, evaluate(*e.args[0], env),
                          evaluate(*e.args[1], env));
  }
}

}  // namespace kgv
