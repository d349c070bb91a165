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

#include "kgv/expr/lexer.hpp"

#include <array>
#include <cctype>

#include "kgv/expr/expr.hpp"

namespace kgv {
namespace {

constexpr std::array<std::string_view, 14> kMultiPunct = {
    "|->", "|=>", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "##",
    "===", "!==", "**"};
constexpr std::string_view kSinglePunct = "()[]{};,:.?~!&|^+-*/<>=@#%";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Scanner {
 public:
  Scanner(std::string_view src, Diagnostics& diags) : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ignored();
      if (pos_ >= src_.size()) break;
      Token t;
      t.loc = {line_, col_};
      t.offset = pos_;
      char c = src_[pos_];
      if (ident_start(c)) {
        t.kind = Tok::kIdent;
        t.text = take_while(ident_char);
      } else if (c == '$') {
        advance();
        t.kind = Tok::kSysName;
        t.text = "$" + take_while(ident_char);
      } else if (c == '`') {
        advance();
        std::string name = take_while(ident_char);
        if (name == "define") {
          t.kind = Tok::kDirective;
          t.text = name;
          out.push_back(t);
          // `define NAME <rest of line>
          skip_blanks();
          Token n;
          n.loc = {line_, col_};
          n.offset = pos_;
          n.kind = Tok::kIdent;
          n.text = take_while(ident_char);
          out.push_back(n);
          skip_blanks();
          Token r;
          r.loc = {line_, col_};
          r.offset = pos_;
          r.kind = Tok::kRestOfLine;
          std::size_t start = pos_;
          while (pos_ < src_.size() && src_[pos_] != '\n') advance();
          r.text = std::string(src_.substr(start, pos_ - start));
          auto cut = r.text.find("//");
          if (cut != std::string::npos) r.text.resize(cut);
          while (!r.text.empty() && std::isspace(static_cast<unsigned char>(r.text.back()))) {
            r.text.pop_back();
          }
          out.push_back(r);
          continue;
        }
        if (name.empty()) {
          diags_.error(DiagCode::kSyntax, t.loc, "stray '`'");
          continue;
        }
        t.kind = Tok::kMacro;
        t.text = name;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
        if (!number(t)) continue;
      } else {
        t.kind = Tok::kPunct;
        bool matched = false;
        for (auto p : kMultiPunct) {
          if (src_.substr(pos_, p.size()) == p) {
            t.text = std::string(p);
            for (std::size_t i = 0; i < p.size(); ++i) advance();
            matched = true;
            break;
          }
        }
        if (!matched) {
          if (kSinglePunct.find(c) == std::string_view::npos) {
            diags_.error(DiagCode::kSyntax, t.loc,
                         std::string("unexpected character '") + c + "'");
            advance();
            continue;
          }
          t.text = std::string(1, c);
          advance();
        }
      }
      out.push_back(std::move(t));
    }
    Token eof;
    eof.kind = Tok::kEof;
    eof.loc = {line_, col_};
    eof.offset = pos_;
    out.push_back(eof);
    return out;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  template <typename Pred>
  std::string take_while(Pred pred) {
    std::size_t start = pos_;
    while (pos_ < src_.size() && pred(src_[pos_])) advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  void skip_blanks() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) advance();
  }

  void skip_ignored() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        SourceLoc at{line_, col_};
        advance();
        advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= src_.size()) {
          diags_.error(DiagCode::kSyntax, at, "unterminated block comment");
          return;
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  static int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  }

  // Parses `123`, `4'b1010`, `'hff`, `8'd255` (underscores allowed).
  bool number(Token& t) {
    t.kind = Tok::kNumber;
    std::size_t start = pos_;
    std::uint64_t size = 0;
    bool has_size = false;
    bool overflow = false;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      if (src_[pos_] != '_') {
        if (size > (~std::uint64_t{0} - 9) / 10) overflow = true;
        size = size * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
      }
      has_size = true;
      advance();
    }
    if (pos_ < src_.size() && src_[pos_] == '\'' && pos_ + 1 < src_.size() &&
        std::string_view("bBoOdDhHsS").find(src_[pos_ + 1]) != std::string_view::npos) {
      advance();
      if (src_[pos_] == 's' || src_[pos_] == 'S') advance();
      if (pos_ >= src_.size()) {
        diags_.error(DiagCode::kSyntax, t.loc, "truncated based literal");
        return false;
      }
      char base_char = static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_])));
      advance();
      int base = base_char == 'b' ? 2 : base_char == 'o' ? 8 : base_char == 'd' ? 10 : 16;
      std::uint64_t value = 0;
      bool any = false;
      while (pos_ < src_.size()) {
        char c = src_[pos_];
        if (c == '_') {
          advance();
          continue;
        }
        if (c == 'x' || c == 'X' || c == 'z' || c == 'Z' || c == '?') {
          diags_.error(DiagCode::kUnsupported, t.loc,
                       "x/z literal digits are not supported (two-valued semantics)");
          advance();
          any = true;
          continue;
        }
        int d = digit_value(c);
        if (d < 0 || d >= base) break;
        if (value > (~std::uint64_t{0} - static_cast<std::uint64_t>(d)) / static_cast<std::uint64_t>(base)) {
          overflow = true;
        }
        value = value * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(d);
        any = true;
        advance();
      }
      if (!any) {
        diags_.error(DiagCode::kSyntax, t.loc, "based literal without digits");
        return false;
      }
      if (has_size) {
        if (size == 0 || size > static_cast<std::uint64_t>(kMaxWidth)) {
          diags_.error(DiagCode::kUnsupported, t.loc,
                       "literal width " + std::to_string(size) + " outside 1..64");
          return false;
        }
        t.width = static_cast<int>(size);
        if (t.width < 64 && (value >> t.width) != 0) {
          diags_.warning(DiagCode::kWidthMismatch, t.loc,
                         "literal value truncated to " + std::to_string(t.width) + " bits");
          value &= width_mask(t.width);
        }
      }
      t.value = value;
    } else {
      if (!has_size) {
        diags_.error(DiagCode::kSyntax, t.loc, "stray apostrophe");
        advance();
        return false;
      }
      t.value = size;
    }
    if (overflow) {
      diags_.error(DiagCode::kUnsupported, t.loc, "literal exceeds 64 bits");
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    return true;
  }

  std::string_view src_;
  Diagnostics& diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view src, Diagnostics& diags) {
  return Scanner(src, diags).run();
}

}  // namespace kgv
