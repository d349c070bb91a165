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

#ifndef KGV_EXPR_PARSER_HPP_
#define KGV_EXPR_PARSER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "kgv/base/diagnostics.hpp"
#include "kgv/base/error.hpp"
#include "kgv/expr/expr.hpp"
#include "kgv/expr/lexer.hpp"

namespace kgv {

class ParseError : public Error {
 public:
  ParseError(DiagCode code, SourceLoc loc, const std::string& message)
      : Error(message), code_(code), loc_(loc) {}
  DiagCode code() const { return code_; }
  SourceLoc loc() const { return loc_; }

 private:
  DiagCode code_;
  SourceLoc loc_;
};

bool is_reserved_word(std::string_view word);

class TokenCursor {
 public:
  explicit TokenCursor(const std::vector<Token>& tokens) : tokens_(tokens) {}

  const Token& peek(std::size_t k = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == Tok::kEof; }
  bool at_punct(std::string_view p, std::size_t k = 0) const;
  bool at_keyword(std::string_view kw, std::size_t k = 0) const;
  bool accept_punct(std::string_view p);
  bool accept_keyword(std::string_view kw);
  const Token& expect_punct(std::string_view p);
  const Token& expect_keyword(std::string_view kw);
  const Token& expect_ident();
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t pos) { pos_ = pos; }

  [[noreturn]] void fail(const std::string& message,
                         DiagCode code = DiagCode::kSyntax) const;

 private:
  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

struct ExprSyntax {
  bool allow_temporal = false;    // $past/$rose/$fell/$stable
  bool allow_macros = false;      // `NAME references
  bool allow_dotted_names = false;
  int max_past = 32;
};

// Precedence-climbing parser for the shared operator set. Throws ParseError.
ExprPtr parse_expression(TokenCursor& cur, const ExprSyntax& syntax);

}  // namespace kgv

#endif  // KGV_EXPR_PARSER_HPP_
