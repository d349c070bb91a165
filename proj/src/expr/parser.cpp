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

#include "kgv/expr/parser.hpp"

#include <array>
#include <utility>

namespace kgv {

bool is_reserved_word(std::string_view word) {
  static constexpr std::array<std::string_view, 36> kWords = {
      "module",    "endmodule", "input",     "output",     "inout",
      "wire",      "reg",       "logic",     "assign",     "always",
      "begin",     "end",       "if",        "else",       "case",
      "endcase",   "default",   "posedge",   "negedge",    "parameter",
      "localparam", "assert",   "assume",    "cover",      "property",
      "disable",   "iff",       "generate",  "endgenerate", "initial",
      "function",  "task",      "or",        "and",        "not",
      "always_ff"};
  for (auto w : kWords) {
    if (w == word) return true;
  }
  return false;
}

const Token& TokenCursor::peek(std::size_t k) const {
  std::size_t i = pos_ + k;
  if (i >= tokens_.size()) return tokens_.back();
  return tokens_[i];
}

const Token& TokenCursor::next() {
  const Token& t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenCursor::at_punct(std::string_view p, std::size_t k) const {
  const Token& t = peek(k);
  return t.kind == Tok::kPunct && t.text == p;
}

bool TokenCursor::at_keyword(std::string_view kw, std::size_t k) const {
  const Token& t = peek(k);
  return t.kind == Tok::kIdent && t.text == kw;
}

bool TokenCursor::accept_punct(std::string_view p) {
  if (!at_punct(p)) return false;
  next();
  return true;
}

bool TokenCursor::accept_keyword(std::string_view kw) {
  if (!at_keyword(kw)) return false;
  next();
  return true;
}

const Token& TokenCursor::expect_punct(std::string_view p) {
  if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
  return next();
}

const Token& TokenCursor::expect_keyword(std::string_view kw) {
  if (!at_keyword(kw)) fail("expected '" + std::string(kw) + "'");
  return next();
}

const Token& TokenCursor::expect_ident() {
  const Token& t = peek();
  if (t.kind != Tok::kIdent || is_reserved_word(t.text)) fail("expected identifier");
  return next();
}

void TokenCursor::fail(const std::string& message, DiagCode code) const {
  const Token& t = peek();
  std::string found = t.kind == Tok::kEof ? "end of input" : "'" + t.text + "'";
  throw ParseError(code, t.loc, message + ", found " + found);
}

namespace {

struct BinaryOp {
  std::string_view text;
  Op op;
  int prec;
};

constexpr std::array<BinaryOp, 13> kBinaryOps = {{
    {"||", Op::kLogOr, 2},
    {"&&", Op::kLogAnd, 3},
    {"|", Op::kOr, 4},
    {"^", Op::kXor, 5},
    {"&", Op::kAnd, 6},
    {"==", Op::kEq, 7},
    {"!=", Op::kNe, 7},
    {"<", Op::kLt, 8},
    {"<=", Op::kLe, 8},
    {">", Op::kGt, 8},
    {">=", Op::kGe, 8},
    {"+", Op::kAdd, 9},
    {"-", Op::kSub, 9},
}};

class ExprParser {
 public:
  ExprParser(TokenCursor& cur, const ExprSyntax& syntax) : cur_(cur), syntax_(syntax) {}

  ExprPtr ternary() {
    ExprPtr cond = binary(2);
    if (cur_.at_punct("?")) {
      SourceLoc loc = cur_.next().loc;
      ExprPtr t = ternary();
      cur_.expect_punct(":");
      ExprPtr f = ternary();
      return make_mux(std::move(cond), std::move(t), std::move(f), loc);
    }
    return cond;
  }

 private:
  const BinaryOp* binary_at() const {
    const Token& t = cur_.peek();
    if (t.kind != Tok::kPunct) return nullptr;
    for (const auto& b : kBinaryOps) {
      if (b.text == t.text) return &b;
    }
    if (t.text == "*" || t.text == "/" || t.text == "%" || t.text == "<<" ||
        t.text == ">>" || t.text == "**" || t.text == "===" || t.text == "!==") {
      cur_.fail("operator '" + t.text + "' is not supported", DiagCode::kUnsupported);
    }
    return nullptr;
  }

  ExprPtr binary(int min_prec) {
    ExprPtr lhs = unary();
    while (true) {
      const BinaryOp* b = binary_at();
      if (!b || b->prec < min_prec) break;
      SourceLoc loc = cur_.next().loc;
      ExprPtr rhs = binary(b->prec + 1);
      lhs = make_binary(b->op, std::move(lhs), std::move(rhs), loc);
    }
    return lhs;
  }

  ExprPtr unary() {
    const Token& t = cur_.peek();
    if (t.kind == Tok::kPunct && (t.text == "!" || t.text == "~")) {
      SourceLoc loc = cur_.next().loc;
      Op op = t.text == "!" ? Op::kLogNot : Op::kNot;
      return make_unary(op, unary(), loc);
    }
    if (t.kind == Tok::kPunct && (t.text == "-" || t.text == "&" || t.text == "|" || t.text == "^")) {
      cur_.fail("unary '" + t.text + "' is not supported", DiagCode::kUnsupported);
    }
    return postfix(primary());
  }

  ExprPtr postfix(ExprPtr base) {
    while (cur_.at_punct("[")) {
      SourceLoc loc = cur_.next().loc;
      if (base->op != Op::kRef) cur_.fail("part-select requires a signal name");
      ExprPtr msb = ternary();
      ExprPtr lsb = msb;
      if (cur_.accept_punct(":")) lsb = ternary();
      cur_.expect_punct("]");
      base = make_raw_slice(std::move(base), std::move(msb), std::move(lsb), loc);
    }
    return base;
  }

  ExprPtr primary() {
    const Token& t = cur_.peek();
    switch (t.kind) {
      case Tok::kNumber: {
        cur_.next();
        return make_const(t.value, t.width, t.loc);
      }
      case Tok::kIdent: {
        if (is_reserved_word(t.text)) cur_.fail("unexpected keyword");
        cur_.next();
        std::string name = t.text;
        while (cur_.at_punct(".") && cur_.peek(1).kind == Tok::kIdent) {
          if (!syntax_.allow_dotted_names) {
            cur_.fail("hierarchical references are not supported here", DiagCode::kUnsupported);
          }
          cur_.next();
          name += "." + cur_.next().text;
        }
        return make_ref(std::move(name), 0, t.loc);
      }
      case Tok::kMacro: {
        if (!syntax_.allow_macros) cur_.fail("macro references are not supported here", DiagCode::kUnsupported);
        cur_.next();
        return make_macro(t.text, t.loc);
      }
      case Tok::kSysName:
        return system_call();
      case Tok::kPunct:
        if (t.text == "(") {
          cur_.next();
          ExprPtr e = ternary();
          cur_.expect_punct(")");
          return e;
        }
        if (t.text == "{") return concat();
        break;
      default:
        break;
    }
    cur_.fail("expected expression");
  }

  ExprPtr concat() {
    SourceLoc loc = cur_.expect_punct("{").loc;
    std::vector<ExprPtr> parts;
    parts.push_back(ternary());
    if (cur_.at_punct("{")) cur_.fail("replication is not supported", DiagCode::kUnsupported);
    while (cur_.accept_punct(",")) parts.push_back(ternary());
    cur_.expect_punct("}");
    return make_concat(std::move(parts), loc);
  }

  ExprPtr system_call() {
    const Token& t = cur_.next();
    if (!syntax_.allow_temporal) {
      throw ParseError(DiagCode::kUnsupported, t.loc,
                       "system function " + t.text + " is not supported here");
    }
    cur_.expect_punct("(");
    ExprPtr arg = ternary();
    if (t.text == "$past") {
      int cycles = 1;
      if (cur_.accept_punct(",")) {
        const Token& n = cur_.peek();
        if (n.kind != Tok::kNumber) cur_.fail("$past cycle count must be a literal");
        cur_.next();
        if (n.value < 1) throw ParseError(DiagCode::kSyntax, n.loc, "$past cycle count must be >= 1");
        if (n.value > static_cast<std::uint64_t>(syntax_.max_past)) {
          throw ParseError(DiagCode::kBoundExceeded, n.loc,
                           "$past depth " + std::to_string(n.value) + " exceeds maximum " +
                               std::to_string(syntax_.max_past));
        }
        cycles = static_cast<int>(n.value);
      }
      cur_.expect_punct(")");
      return make_past(std::move(arg), cycles, t.loc);
    }
    Op op;
    if (t.text == "$rose") {
      op = Op::kRose;
    } else if (t.text == "$fell") {
      op = Op::kFell;
    } else if (t.text == "$stable") {
      op = Op::kStable;
    } else {
      throw ParseError(DiagCode::kUnsupported, t.loc, "unsupported system function " + t.text);
    }
    cur_.expect_punct(")");
    return make_unary(op, std::move(arg), t.loc);
  }

  TokenCursor& cur_;
  const ExprSyntax& syntax_;
};

}  // namespace

ExprPtr parse_expression(TokenCursor& cur, const ExprSyntax& syntax) {
  ExprParser p(cur, syntax);
  return p.ternary();
}

}  // namespace kgv
