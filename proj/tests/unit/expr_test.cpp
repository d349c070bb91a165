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

#include <gtest/gtest.h>

#include "kgv/expr/lexer.hpp"
#include "kgv/expr/parser.hpp"
#include "kgv/expr/typing.hpp"

namespace kgv {
namespace {

ExprPtr parse(const std::string& text, ExprSyntax syn = {}) {
  Diagnostics d;
  auto toks = tokenize(text, d);
  EXPECT_FALSE(d.has_errors()) << d.format("expr");
  TokenCursor cur(toks);
  ExprPtr e = parse_expression(cur, syn);
  EXPECT_TRUE(cur.at_end());
  return e;
}

Resolver widths(std::map<std::string, int> w) {
  Resolver r;
  r.ref = [w](const Expr& e) -> ExprPtr {
    auto it = w.find(e.name);
    if (it == w.end()) throw ExprError(DiagCode::kUndeclared, e.loc, "undeclared " + e.name);
    return make_ref(e.name, it->second, e.loc);
  };
  r.allow_temporal = true;
  return r;
}

class MapEnv : public ValueEnv {
 public:
  explicit MapEnv(std::map<std::string, std::uint64_t> v) : v_(std::move(v)) {}
  std::uint64_t ref(const Expr& e) const override { return v_.at(e.name); }

 private:
  std::map<std::string, std::uint64_t> v_;
};

TEST(ExprLexer, SizedLiterals) {
  Diagnostics d;
  auto toks = tokenize("4'b1010 8'hff 2'd3 17", d);
  ASSERT_FALSE(d.has_errors());
  ASSERT_EQ(toks.size(), 5u);
  EXPECT_EQ(toks[0].value, 10u);
  EXPECT_EQ(toks[0].width, 4);
  EXPECT_EQ(toks[1].value, 255u);
  EXPECT_EQ(toks[2].width, 2);
  EXPECT_EQ(toks[3].width, 0);
  EXPECT_EQ(toks[3].value, 17u);
}

TEST(ExprLexer, XZDigitsAreUnsupported) {
  Diagnostics d;
  tokenize("4'b10x0", d);
  ASSERT_TRUE(d.has_errors());
  EXPECT_EQ(d.items()[0].code, DiagCode::kUnsupported);
}

TEST(ExprParser, Precedence) {
  EXPECT_EQ(to_verilog(*parse("a + b == c && d | e")), "a + b == c && d | e");
  EXPECT_EQ(to_verilog(*parse("(a || b) && c")), "(a || b) && c");
  EXPECT_EQ(to_verilog(*parse("(a ? b : c) ^ d")), "(a ? b : c) ^ d");
}

TEST(ExprParser, UnsupportedOperator) {
  Diagnostics d;
  auto toks = tokenize("a * b", d);
  TokenCursor cur(toks);
  try {
    parse_expression(cur, {});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), DiagCode::kUnsupported);
  }
}

TEST(ExprParser, PastDepthBound) {
  Diagnostics d;
  auto toks = tokenize("$past(a, 33)", d);
  TokenCursor cur(toks);
  ExprSyntax syn;
  syn.allow_temporal = true;
  try {
    parse_expression(cur, syn);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), DiagCode::kBoundExceeded);
  }
}

TEST(ExprTyping, FlexAdaptsToSizedOperand) {
  ExprPtr e = resolve(parse("count + 1"), widths({{"count", 2}}));
  EXPECT_EQ(e->width, 2);
  EXPECT_EQ(e->args[1]->width, 2);
}

TEST(ExprTyping, WidthMismatchReportsBothWidths) {
  try {
    resolve(parse("a == b"), widths({{"a", 2}, {"b", 3}}));
    FAIL();
  } catch (const ExprError& e) {
    EXPECT_EQ(e.code(), DiagCode::kWidthMismatch);
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(ExprTyping, ConstantDoesNotFit) {
  EXPECT_THROW(resolve(parse("a == 4"), widths({{"a", 2}})), ExprError);
}

TEST(ExprTyping, ConstantsFold) {
  ExprPtr e = resolve(parse("{2'b10, 1'b1} + 3'd1"), widths({}));
  ASSERT_EQ(e->op, Op::kConst);
  EXPECT_EQ(e->value, 6u);
  EXPECT_EQ(e->width, 3);
}

TEST(ExprTyping, SliceBounds) {
  ExprPtr e = resolve(parse("a[2:1]"), widths({{"a", 4}}));
  EXPECT_EQ(e->width, 2);
  EXPECT_THROW(resolve(parse("a[4]"), widths({{"a", 4}})), ExprError);
}

TEST(ExprEval, ArithmeticWraps) {
  ExprPtr e = resolve(parse("a - b"), widths({{"a", 2}, {"b", 2}}));
  EXPECT_EQ(evaluate(*e, MapEnv({{"a", 0}, {"b", 1}})), 3u);
  ExprPtr n = resolve(parse("~a"), widths({{"a", 3}}));
  EXPECT_EQ(evaluate(*n, MapEnv({{"a", 5}})), 2u);
}

TEST(ExprEval, ConcatAndSlice) {
  ExprPtr e = resolve(parse("{a, b[1:0]}"), widths({{"a", 1}, {"b", 4}}));
  EXPECT_EQ(e->width, 3);
  EXPECT_EQ(evaluate(*e, MapEnv({{"a", 1}, {"b", 6}})), 6u);
}

TEST(ExprPrint, RoundTripsThroughParser) {
  for (const char* text : {"a && !b", "(a | b) & c", "x ? y : z", "a[3:1] == 3'd2", "{a, b}"}) {
    ExprPtr e = parse(text);
    EXPECT_TRUE(equal(e, parse(to_verilog(*e)))) << text;
  }
}

}  // namespace
}  // namespace kgv
