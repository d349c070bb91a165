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

#include "kgv/expr/expr.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace kgv {

bool is_const(const Expr& e) { return e.op == Op::kConst; }
bool is_flex(const Expr& e) { return e.op == Op::kConst && e.width == 0; }

bool is_temporal(Op op) {
  return op == Op::kPast || op == Op::kRose || op == Op::kFell ||
         op == Op::kStable;
}

bool is_binary(Op op) {
  switch (op) {
    case Op::kAnd:
    case Op::kOr:
    case Op::kXor:
    case Op::kLogAnd:
    case Op::kLogOr:
    case Op::kAdd:
    case Op::kSub:
    case Op::kEq:
    case Op::kNe:
    case Op::kLt:
    case Op::kLe:
    case Op::kGt:
    case Op::kGe:
      return true;
    default:
      return false;
  }
}

bool is_comparison(Op op) {
  return op == Op::kEq || op == Op::kNe || op == Op::kLt || op == Op::kLe ||
         op == Op::kGt || op == Op::kGe;
}

ExprPtr make_const(std::uint64_t value, int width, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kConst;
  e->width = width;
  e->value = width > 0 ? value & width_mask(width) : value;
  e->loc = loc;
  return e;
}

ExprPtr make_ref(std::string name, int width, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kRef;
  e->name = std::move(name);
  e->width = width;
  e->loc = loc;
  return e;
}

ExprPtr make_macro(std::string name, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kMacro;
  e->name = std::move(name);
  e->loc = loc;
  return e;
}

ExprPtr make_unary(Op op, ExprPtr a, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->loc = loc;
  if (op == Op::kLogNot || op == Op::kRose || op == Op::kFell ||
      op == Op::kStable) {
    e->width = 1;
  } else {
    e->width = a->width;
  }
  e->args.push_back(std::move(a));
  return e;
}

ExprPtr make_binary(Op op, ExprPtr a, ExprPtr b, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->loc = loc;
  if (is_comparison(op) || op == Op::kLogAnd || op == Op::kLogOr) {
    e->width = 1;
  } else {
    e->width = std::max(a->width, b->width);
  }
  e->args = {std::move(a), std::move(b)};
  return e;
}

ExprPtr make_mux(ExprPtr cond, ExprPtr t, ExprPtr f, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kMux;
  e->loc = loc;
  e->width = std::max(t->width, f->width);
  e->args = {std::move(cond), std::move(t), std::move(f)};
  return e;
}

ExprPtr make_concat(std::vector<ExprPtr> parts, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kConcat;
  e->loc = loc;
  for (const auto& p : parts) e->width += p->width;
  e->args = std::move(parts);
  return e;
}

ExprPtr make_slice(ExprPtr base, int hi, int lo, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kSlice;
  e->loc = loc;
  e->hi = hi;
  e->lo = lo;
  e->width = hi - lo + 1;
  e->args = {std::move(base)};
  return e;
}

ExprPtr make_raw_slice(ExprPtr base, ExprPtr msb, ExprPtr lsb, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kSlice;
  e->loc = loc;
  e->args = {std::move(base), std::move(msb), std::move(lsb)};
  return e;
}

ExprPtr make_past(ExprPtr a, int cycles, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kPast;
  e->loc = loc;
  e->width = a->width;
  e->hi = cycles;
  e->args = {std::move(a)};
  return e;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.op != b.op || a.width != b.width || a.value != b.value ||
      a.name != b.name || a.hi != b.hi || a.lo != b.lo ||
      a.args.size() != b.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

namespace {

// Binding strength; larger binds tighter.
int precedence(Op op) {
  switch (op) {
    case Op::kMux:
      return 1;
    case Op::kLogOr:
      return 2;
    case Op::kLogAnd:
      return 3;
    case Op::kOr:
      return 4;
    case Op::kXor:
      return 5;
    case Op::kAnd:
      return 6;
    case Op::kEq:
    case Op::kNe:
      return 7;
    case Op::kLt:
    case Op::kLe:
    case Op::kGt:
    case Op::kGe:
      return 8;
    case Op::kAdd:
    case Op::kSub:
      return 9;
    case Op::kNot:
    case Op::kLogNot:
      return 10;
    default:
      return 11;
  }
}

const char* op_text(Op op) {
  switch (op) {
    case Op::kAnd:
      return "&";
    case Op::kOr:
      return "|";
    case Op::kXor:
      return "^";
    case Op::kLogAnd:
      return "&&";
    case Op::kLogOr:
      return "||";
    case Op::kAdd:
      return "+";
    case Op::kSub:
      return "-";
    case Op::kEq:
      return "==";
    case Op::kNe:
      return "!=";
    case Op::kLt:
      return "<";
    case Op::kLe:
      return "<=";
    case Op::kGt:
      return ">";
    case Op::kGe:
      return ">=";
    case Op::kNot:
      return "~";
    case Op::kLogNot:
      return "!";
    default:
      return "?";
  }
}

std::string const_text(const Expr& e) {
  if (e.width == 0) return std::to_string(e.value);
  if (e.width == 1) return e.value ? "1'b1" : "1'b0";
  return std::to_string(e.width) + "'d" + std::to_string(e.value);
}

std::string print(const Expr& e, int parent_prec) {
  std::string s;
  int prec = precedence(e.op);
  switch (e.op) {
    case Op::kConst:
      return const_text(e);
    case Op::kRef:
      return e.name;
    case Op::kMacro:
      return "`" + e.name;
    case Op::kNot:
    case Op::kLogNot:
      s = std::string(op_text(e.op)) + print(*e.args[0], prec);
      break;
    case Op::kMux:
      s = print(*e.args[0], prec + 1) + " ? " + print(*e.args[1], prec + 1) +
          " : " + print(*e.args[2], prec);
      break;
    case Op::kConcat: {
      s = "{";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) s += ", ";
        s += print(*e.args[i], 0);
      }
      s += "}";
      return s;
    }
    case Op::kSlice: {
      s = print(*e.args[0], 12);
      if (e.args.size() == 3) {
        s += "[" + print(*e.args[1], 0) + ":" + print(*e.args[2], 0) + "]";
      } else if (e.hi == e.lo) {
        s += "[" + std::to_string(e.hi) + "]";
      } else {
        s += "[" + std::to_string(e.hi) + ":" + std::to_string(e.lo) + "]";
      }
      return s;
    }
    case Op::kPast:
      s = "$past(" + print(*e.args[0], 0);
      if (e.hi != 1) s += ", " + std::to_string(e.hi);
      return s + ")";
    case Op::kRose:
      return "$rose(" + print(*e.args[0], 0) + ")";
    case Op::kFell:
      return "$fell(" + print(*e.args[0], 0) + ")";
    case Op::kStable:
      return "$stable(" + print(*e.args[0], 0) + ")";
    default:
      // Left-associative binary operators: the right operand needs parens at
      // equal precedence.
      s = print(*e.args[0], prec) + " " + op_text(e.op) + " " +
          print(*e.args[1], prec + 1);
      break;
  }
  if (prec < parent_prec) return "(" + s + ")";
  return s;
}

void collect_names(const Expr& e, std::vector<std::string>& out) {
  if (e.op == Op::kRef &&
      std::find(out.begin(), out.end(), e.name) == out.end()) {
    out.push_back(e.name);
  }
  for (const auto& a : e.args) collect_names(*a, out);
}

}  // namespace

std::string to_verilog(const Expr& e) { return print(e, 0); }

std::vector<std::string> referenced_names(const Expr& e) {
  std::vector<std::string> out;
  collect_names(e, out);
  return out;
}

bool contains_op(const Expr& e, Op op) {
  if (e.op == op) return true;
  return std::any_of(e.args.begin(), e.args.end(),
                     [op](const ExprPtr& a) { return contains_op(*a, op); });
}

}  // namespace kgv
