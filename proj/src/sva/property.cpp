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

#include "kgv/sva/property.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "kgv/expr/lexer.hpp"
#include "kgv/expr/parser.hpp"

namespace kgv::sva {
namespace {

class PropParser {
 public:
  PropParser(const std::vector<Token>& toks, const ParseOptions& opt, Diagnostics& diags)
      : cur_(toks), opt_(opt), diags_(diags) {
    syn_.allow_temporal = true;
    syn_.allow_macros = true;
    syn_.allow_dotted_names = true;
    syn_.max_past = opt.max_delay;
  }

  PropertyFile run() {
    PropertyFile f;
    while (!cur_.at_end()) {
      const Token& t = cur_.peek();
      current_id_.reset();
      try {
        if (t.kind == Tok::kDirective) {
          macro(f);
        } else if (cur_.at_keyword("default")) {
          clocking(f);
        } else if (cur_.accept_punct(";")) {
          continue;
        } else {
          property(f);
        }
      } catch (const ParseError& e) {
        diags_.error(e.code(), e.loc(), e.what(), current_id_);
        resync();
      }
    }
    if (opt_.require_clock && !f.default_clock) {
      for (const auto& p : f.properties) {
        if (!p.ast.clock) {
          diags_.error(DiagCode::kSyntax, {p.start_line, 1},
                       "property has no clock and the file has no default clocking", p.prop_id);
        }
      }
    }
    return f;
  }

 private:
  void resync() {
    while (!cur_.at_end() && !cur_.at_punct(";") && cur_.peek().kind != Tok::kDirective) cur_.next();
    cur_.accept_punct(";");
  }

  void macro(PropertyFile& f) {
    const Token& d = cur_.next();
    const Token& name = cur_.next();
    if (name.kind != Tok::kIdent || name.text.empty()) {
      throw ParseError(DiagCode::kSyntax, d.loc, "`define needs a macro name");
    }
    std::string text;
    if (cur_.peek().kind == Tok::kRestOfLine) text = cur_.next().text;
    if (f.find_macro(name.text)) {
      throw ParseError(DiagCode::kDuplicate, name.loc, "macro `" + name.text + " defined twice");
    }
    f.macros.push_back(Macro{name.text, text, d.loc.line});
    defined_.insert(name.text);
  }

  void clocking(PropertyFile& f) {
    SourceLoc loc = cur_.expect_keyword("default").loc;
    cur_.expect_keyword("clocking");
    if (cur_.peek().kind == Tok::kIdent && !cur_.at_punct("@")) cur_.next();
    std::string clk = clock_event();
    cur_.expect_punct(";");
    cur_.expect_keyword("endclocking");
    if (f.default_clock) throw ParseError(DiagCode::kDuplicate, loc, "second default clocking block");
    f.default_clock = clk;
  }

  std::string clock_event() {
    cur_.expect_punct("@");
    cur_.expect_punct("(");
    if (cur_.at_keyword("negedge")) cur_.fail("negedge clocking", DiagCode::kUnsupported);
    cur_.expect_keyword("posedge");
    std::string name = cur_.expect_ident().text;
    while (cur_.at_punct(".")) {
      cur_.next();
      name += "." + cur_.expect_ident().text;
    }
    cur_.expect_punct(")");
    return name;
  }

  void property(PropertyFile& f) {
    const Token& first = cur_.peek();
    PropertyDecl p;
    p.start_line = first.loc.line;
    std::string label;
    if (first.kind == Tok::kIdent && cur_.at_punct(":", 1)) {
      label = first.text;
      current_id_ = prop_id_for(label);
      cur_.next();
      cur_.next();
    } else {
      current_id_ = "ANON-" + std::to_string(++anon_);
    }
    p.prop_id = *current_id_;
    const Token& kw = cur_.peek();
    if (kw.kind != Tok::kIdent) cur_.fail("expected assert, assume or cover");
    if (kw.text == "property" || kw.text == "sequence") {
      cur_.fail("named " + kw.text + " declarations", DiagCode::kUnsupported);
    }
    auto kind = kw.text == "assert" ? std::optional(PropKind::kAssertion)
                : kw.text == "assume" ? std::optional(PropKind::kAssumption)
                : kw.text == "cover" ? std::optional(PropKind::kCover)
                : std::nullopt;
    if (!kind) cur_.fail("expected assert, assume or cover");
    cur_.next();
    p.kind = *kind;
    cur_.expect_keyword("property");
    cur_.expect_punct("(");
    if (cur_.at_punct("@")) p.ast.clock = clock_event();
    if (cur_.accept_keyword("disable")) {
      cur_.expect_keyword("iff");
      cur_.expect_punct("(");
      p.ast.disable = element_expr();
      cur_.expect_punct(")");
    }
    Sequence body = sequence();
    if (cur_.at_punct("|->") || cur_.at_punct("|=>")) {
      p.ast.has_implication = true;
      p.ast.overlapped = cur_.next().text == "|->";
      p.ast.antecedent = std::move(body);
      p.ast.consequent = sequence();
      if (cur_.at_punct("|->") || cur_.at_punct("|=>")) {
        cur_.fail("implication inside a sequence", DiagCode::kNestedImplication);
      }
    } else {
      p.ast.consequent = std::move(body);
    }
    if (cur_.at_keyword("and") || cur_.at_keyword("or") || cur_.at_keyword("intersect") ||
        cur_.at_keyword("throughout") || cur_.at_keyword("within") || cur_.at_keyword("until")) {
      cur_.fail("sequence operator '" + cur_.peek().text + "'", DiagCode::kUnsupported);
    }
    p.end_line = cur_.expect_punct(")").loc.line;
    if (cur_.at_keyword("else")) cur_.fail("action block", DiagCode::kUnsupported);
    if (cur_.at_punct(";")) p.end_line = cur_.next().loc.line;
    check_bounds(p.ast.antecedent);
    check_bounds(p.ast.consequent);
    for (const auto& other : f.properties) {
      if (other.prop_id == p.prop_id) {
        throw ParseError(DiagCode::kDuplicate, first.loc, "duplicate property label '" + label + "'");
      }
    }
    f.line_map[p.prop_id] = {p.start_line, p.end_line};
    f.properties.push_back(std::move(p));
  }

  void check_bounds(const Sequence& s) {
    for (const auto& e : s) {
      if (e.max_delay > opt_.max_delay) {
        throw ParseError(DiagCode::kBoundExceeded, e.expr->loc,
                         "delay " + std::to_string(e.max_delay) + " exceeds maximum " +
                             std::to_string(opt_.max_delay));
      }
    }
  }

  ExprPtr element_expr() {
    ExprPtr e = parse_expression(cur_, syn_);
    check_macros(*e);
    return e;
  }

  void check_macros(const Expr& e) {
    if (e.op == Op::kMacro && !defined_.count(e.name)) {
      throw ParseError(DiagCode::kUndefinedMacro, e.loc, "macro `" + e.name + " used before definition");
    }
    for (const auto& a : e.args) check_macros(*a);
  }

  std::pair<int, int> delay() {
    SourceLoc loc = cur_.expect_punct("##").loc;
    auto number = [&]() -> int {
      const Token& t = cur_.peek();
      if ((t.kind == Tok::kPunct || t.kind == Tok::kSysName) && t.text == "$") {
        throw ParseError(DiagCode::kBoundExceeded, t.loc, "unbounded delay range");
      }
      if (t.kind != Tok::kNumber) cur_.fail("expected delay count");
      cur_.next();
      if (t.value > static_cast<std::uint64_t>(opt_.max_delay)) {
        throw ParseError(DiagCode::kBoundExceeded, t.loc,
                         "delay " + std::to_string(t.value) + " exceeds maximum " +
                             std::to_string(opt_.max_delay));
      }
      return static_cast<int>(t.value);
    };
    if (cur_.accept_punct("[")) {
      int lo = number();
      cur_.expect_punct(":");
      int hi = number();
      cur_.expect_punct("]");
      if (hi < lo) throw ParseError(DiagCode::kSyntax, loc, "empty delay range");
      return {lo, hi};
    }
    if (cur_.at_punct("(")) cur_.fail("computed delay", DiagCode::kUnsupported);
    int n = number();
    return {n, n};
  }

  static void append(Sequence& s, std::pair<int, int> d, Sequence tail) {
    if (tail.empty()) return;
    tail[0].min_delay += d.first;
    tail[0].max_delay += d.second;
    s.insert(s.end(), tail.begin(), tail.end());
  }

  Sequence sequence() {
    Sequence s;
    std::pair<int, int> lead{0, 0};
    if (cur_.at_punct("##")) lead = delay();
    append(s, lead, element());
    while (cur_.at_punct("##")) {
      auto d = delay();
      append(s, d, element());
    }
    if (cur_.at_punct("[")) cur_.fail("repetition", DiagCode::kUnsupported);
    return s;
  }

  Sequence element() {
    if (cur_.at_punct("(")) {
      std::size_t start = cur_.pos();
      try {
        ExprPtr e = element_expr();
        if (cur_.at_punct("##") || cur_.at_punct(")") || cur_.at_punct("|->") || cur_.at_punct("|=>") ||
            cur_.at_punct(";")) {
          return {SeqElem{0, 0, e}};
        }
        cur_.fail("expected '##', ')' or implication");
      } catch (const ParseError& as_expr) {
        std::size_t expr_reach = cur_.pos();
        cur_.set_pos(start);
        try {
          cur_.expect_punct("(");
          Sequence inner = sequence();
          if (cur_.at_punct("|->") || cur_.at_punct("|=>")) {
            cur_.fail("implication inside a sequence", DiagCode::kNestedImplication);
          }
          cur_.expect_punct(")");
          return inner;
        } catch (const ParseError& as_seq) {
          if (as_seq.code() != DiagCode::kSyntax || cur_.pos() >= expr_reach) throw;
          throw as_expr;
        }
      }
    }
    return {SeqElem{0, 0, element_expr()}};
  }

  TokenCursor cur_;
  const ParseOptions& opt_;
  Diagnostics& diags_;
  ExprSyntax syn_;
  std::set<std::string> defined_;
  std::optional<std::string> current_id_;
  int anon_ = 0;
};

std::string format_delay(int lo, int hi) {
  if (lo == hi) return "##" + std::to_string(lo);
  return "##[" + std::to_string(lo) + ":" + std::to_string(hi) + "]";
}

bool equal_seq(const Sequence& a, const Sequence& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].min_delay != b[i].min_delay || a[i].max_delay != b[i].max_delay) return false;
    if (!equal(a[i].expr, b[i].expr)) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(PropKind kind) {
  switch (kind) {
    case PropKind::kAssertion:
      return "assertion";
    case PropKind::kAssumption:
      return "assumption";
    case PropKind::kCover:
      return "cover";
  }
  return "assertion";
}

std::optional<PropKind> parse_prop_kind(std::string_view text) {
  if (text == "assertion") return PropKind::kAssertion;
  if (text == "assumption") return PropKind::kAssumption;
  if (text == "cover") return PropKind::kCover;
  return std::nullopt;
}

std::string_view directive_keyword(PropKind kind) {
  switch (kind) {
    case PropKind::kAssertion:
      return "assert";
    case PropKind::kAssumption:
      return "assume";
    case PropKind::kCover:
      return "cover";
  }
  return "assert";
}

const Macro* PropertyFile::find_macro(std::string_view name) const {
  for (const auto& m : macros) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

const PropertyDecl* PropertyFile::find(std::string_view prop_id) const {
  for (const auto& p : properties) {
    if (p.prop_id == prop_id) return &p;
  }
  return nullptr;
}

ParseResult<PropertyFile> parse_properties(std::string_view source, const ParseOptions& opt) {
  ParseResult<PropertyFile> out;
  std::vector<Token> toks = tokenize(source, out.diags);
  PropParser parser(toks, opt, out.diags);
  PropertyFile f = parser.run();
  // Lexical errors inside a property's span belong to that property.
  for (auto& d : out.diags.mutable_items()) {
    if (d.prop_id) continue;
    for (const auto& [id, span] : f.line_map) {
      if (d.line >= span.first && d.line <= span.second) d.prop_id = id;
    }
  }
  if (!out.diags.has_errors()) out.value = std::move(f);
  return out;
}

std::string label_for(std::string_view prop_id) {
  std::string s(prop_id);
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

std::string prop_id_for(std::string_view label) {
  auto us = label.rfind('_');
  if (us == std::string_view::npos || us == 0 || us + 1 == label.size()) return std::string(label);
  for (std::size_t i = 0; i < us; ++i) {
    if (!std::isupper(static_cast<unsigned char>(label[i])) && label[i] != '_') return std::string(label);
  }
  for (std::size_t i = us + 1; i < label.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(label[i]))) return std::string(label);
  }
  std::string s(label);
  s[us] = '-';
  return s;
}

bool id_less(std::string_view a, std::string_view b) {
  auto split_num = [](std::string_view s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    std::string_view digits = s.substr(i);
    long long n = digits.empty() || digits.size() > 18 ? -1 : std::stoll(std::string(digits));
    return std::make_pair(s.substr(0, i), n);
  };
  auto [pa, na] = split_num(a);
  auto [pb, nb] = split_num(b);
  if (pa != pb) return pa < pb;
  if (na != nb) return na < nb;
  return a < b;
}

std::string format_sequence(const Sequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ' ';
    if (i > 0 || s[i].min_delay != 0 || s[i].max_delay != 0) {
      out += format_delay(s[i].min_delay, s[i].max_delay) + ' ';
    }
    out += to_verilog(*s[i].expr);
  }
  return out;
}

std::string format_body(const PropAst& ast) {
  std::string out;
  if (ast.clock) out += "@(posedge " + *ast.clock + ") ";
  if (ast.disable) out += "disable iff (" + to_verilog(*ast.disable) + ") ";
  if (ast.has_implication) {
    out += format_sequence(ast.antecedent);
    out += ast.overlapped ? " |-> " : " |=> ";
  }
  out += format_sequence(ast.consequent);
  return out;
}

std::string format_property(const PropertyDecl& p) {
  return label_for(p.prop_id) + ": " + std::string(directive_keyword(p.kind)) + " property (" +
         format_body(p.ast) + ");";
}

std::string emit_properties(PropertyFile& f) {
  std::ostringstream o;
  int line = 1;
  o << "// kgverify property file\n";
  for (const auto& m : f.macros) {
    o << "`define " << m.name;
    if (!m.text.empty()) o << ' ' << m.text;
    o << '\n';
    ++line;
  }
  if (f.default_clock) {
    o << "default clocking @(posedge " << *f.default_clock << "); endclocking\n";
    ++line;
  }
  std::vector<const PropertyDecl*> order;
  for (const auto& p : f.properties) order.push_back(&p);
  std::sort(order.begin(), order.end(),
            [](const PropertyDecl* a, const PropertyDecl* b) { return id_less(a->prop_id, b->prop_id); });
  f.line_map.clear();
  for (const PropertyDecl* p : order) {
    o << format_property(*p) << '\n';
    ++line;
    f.line_map[p->prop_id] = {line, line};
  }
  for (auto& p : f.properties) {
    p.start_line = f.line_map[p.prop_id].first;
    p.end_line = f.line_map[p.prop_id].second;
  }
  return o.str();
}

bool equivalent(const PropAst& a, const PropAst& b) {
  if (a.clock != b.clock || a.has_implication != b.has_implication) return false;
  if (a.has_implication && a.overlapped != b.overlapped) return false;
  if (static_cast<bool>(a.disable) != static_cast<bool>(b.disable)) return false;
  if (a.disable && !equal(a.disable, b.disable)) return false;
  return equal_seq(a.antecedent, b.antecedent) && equal_seq(a.consequent, b.consequent);
}

bool equivalent(const PropertyFile& a, const PropertyFile& b) {
  if (a.default_clock != b.default_clock || a.macros.size() != b.macros.size()) return false;
  for (std::size_t i = 0; i < a.macros.size(); ++i) {
    if (a.macros[i].name != b.macros[i].name || a.macros[i].text != b.macros[i].text) return false;
  }
  if (a.properties.size() != b.properties.size()) return false;
  for (const auto& p : a.properties) {
    const PropertyDecl* q = b.find(p.prop_id);
    if (!q || q->kind != p.kind || !equivalent(p.ast, q->ast)) return false;
  }
  return true;
}

}  // namespace kgv::sva
