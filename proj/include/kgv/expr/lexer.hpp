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

#ifndef KGV_EXPR_LEXER_HPP_
#define KGV_EXPR_LEXER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kgv/base/diagnostics.hpp"

namespace kgv {

enum class Tok {
  kIdent,
  kNumber,
  kSysName,    // $past, $rose, ...
  kMacro,      // `NAME
  kDirective,  // `define
  kRestOfLine,  // raw text following `define NAME
  kPunct,
  kEof,
};

struct Token {
  Tok kind = Tok::kEof;
  std::string text;
  SourceLoc loc;
  std::size_t offset = 0;
  // kNumber only.
  std::uint64_t value = 0;
  int width = 0;  // 0: unsized
};

// Tokenizer for the Verilog subset and the assertion language. Lexical
// errors are reported into `diags` and the offending character skipped.
std::vector<Token> tokenize(std::string_view src, Diagnostics& diags);

}  // namespace kgv

#endif  // KGV_EXPR_LEXER_HPP_
