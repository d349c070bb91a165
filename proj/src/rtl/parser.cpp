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

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "kgv/base/text.hpp"
#include "kgv/expr/lexer.hpp"
#include "kgv/expr/parser.hpp"
#include "kgv/expr/typing.hpp"
#include "kgv/rtl/design.hpp"
#include "src/rtl/internal.hpp"

namespace kgv::rtl {

namespace detail {

std::int64_t const_int(const ExprPtr& raw, const ParamValues& params) {
  Resolver r;
  r.ref = [&](const Expr& e) -> ExprPtr {
    auto it = params.find(e.name);
    if (it == params.end()) {
      throw ExprError(DiagCode::kUndeclared, e.loc, "'" + e.name + "' is not a parameter");
    }
    return make_const(static_cast<std::uint64_t>(it->second), 0, e.loc);
  };
  ExprPtr v = resolve(raw, r);
  if (v->op != Op::kConst) throw ExprError(DiagCode::kSyntax, raw->loc, "expression is not constant");
  return static_cast<std::int64_t>(v->value);
}

int range_width(const RangeAst& r, const ParamValues& params, SourceLoc loc) {
  if (r.scalar()) return 1;
  std::int64_t msb = const_int(r.msb, params);
  std::int64_t lsb = const_int(r.lsb, params);
  if (lsb != 0) throw ExprError(DiagCode::kUnsupported, loc, "range with nonzero lsb is not supported");
  if (msb < 0) throw ExprError(DiagCode::kSyntax, loc, "range msb is negative");
  if (msb + 1 > kMaxWidth) throw ExprError(DiagCode::kUnsupported, loc, "signal wider than 64 bits");
  return static_cast<int>(msb + 1);
}

ParamValues eval_params(const ModuleAst& m, const ParamValues& overrides) {
  ParamValues params;
  for (const auto& p : m.params) {
    auto it = overrides.find(p.name);
    if (it != overrides.end() && !p.local) {
      params[p.name] = it->second;
    } else {
      params[p.name] = const_int(p.value, params);
    }
  }
  return params;
}

}  // namespace detail

namespace {

using detail::const_int;
using detail::eval_params;
using detail::range_width;


const std::set<std::string, std::less<>> kItemStarts = {
    "input",  "output",    "inout",     "wire",        "reg",      "logic",    "parameter",
    "localparam", "assign", "always",  "always_ff",   "always_comb", "always_latch",
    "initial", "generate", "function", "task",        "integer",  "genvar",   "endmodule",
    "module"};

class RtlParser {
 public:
  RtlParser(const std::vector<Token>& toks, std::string file, Diagnostics& diags,
            std::vector<StatementRef>& stmts)
      : cur_(toks), file_(std::move(file)), diags_(diags), stmts_(stmts) {}

  void parse_file(std::vector<ModuleAst>& out) {
    while (!cur_.at_end()) {
      if (cur_.at_keyword("module")) {
        try {
          out.push_back(parse_module());
        } catch (const ParseError& e) {
          report(e);
          skip_to_endmodule();
        }
        continue;
      }
      try {
        const Token& t = cur_.peek();
        if (t.kind == Tok::kDirective || t.kind == Tok::kMacro) {
          throw ParseError(DiagCode::kUnsupported, t.loc, "compiler directive " + t.text);
        }
        cur_.fail("expected 'module'");
      } catch (const ParseError& e) {
        report(e);
        cur_.next();
        while (!cur_.at_end() && !cur_.at_keyword("module")) cur_.next();
      }
    }
  }

 private:
  void report(const ParseError& e) {
    diags_.error(e.code(), e.loc(), e.what());
  }

  void skip_to_endmodule() {
    while (!cur_.at_end() && !cur_.at_keyword("endmodule") && !cur_.at_keyword("module")) cur_.next();
    cur_.accept_keyword("endmodule");
  }

  // Resynchronizes at the next token that can start a module item.
  void resync() {
    cur_.next();
    while (!cur_.at_end()) {
      const Token& t = cur_.peek();
      if (t.kind == Tok::kIdent && kItemStarts.count(t.text)) return;
      cur_.next();
    }
  }

  ExprPtr expr() {
    ExprSyntax syn;
    return parse_expression(cur_, syn);
  }

  RangeAst opt_range() {
    RangeAst r;
    if (cur_.accept_punct("[")) {
      r.msb = expr();
      cur_.expect_punct(":");
      r.lsb = expr();
      cur_.expect_punct("]");
    }
    return r;
  }

  int new_stmt(StatementKind kind, SourceLoc loc) {
    int n = static_cast<int>(stmts_.size()) + 1;
    stmts_.push_back(StatementRef{statement_id(n), module_->name, loc.line, kind});
    return n;
  }

  ModuleAst parse_module() {
    ModuleAst m;
    module_ = &m;
    undeclared_dir_.clear();
    m.loc = cur_.expect_keyword("module").loc;
    m.file = file_;
    m.name = cur_.expect_ident().text;
    if (cur_.accept_punct("#")) {
      cur_.expect_punct("(");
      if (!cur_.at_punct(")")) {
        do {
          cur_.accept_keyword("parameter");
          cur_.accept_keyword("integer");
          param_assignment(m, false);
        } while (cur_.accept_punct(","));
      }
      cur_.expect_punct(")");
    }
    if (cur_.accept_punct("(")) {
      if (!cur_.at_punct(")")) port_list(m);
      cur_.expect_punct(")");
    }
    cur_.expect_punct(";");
    while (!cur_.at_keyword("endmodule")) {
      if (cur_.at_end()) cur_.fail("missing 'endmodule'");
      if (cur_.at_keyword("module")) cur_.fail("missing 'endmodule'");
      try {
        module_item(m);
      } catch (const ParseError& e) {
        report(e);
        resync();
        if (cur_.at_keyword("module")) break;
      }
    }
    m.end_line = cur_.peek().loc.line;
    cur_.accept_keyword("endmodule");
    for (const auto& p : m.ports) {
      if (undeclared_dir_.count(p.name)) {
        diags_.error(DiagCode::kSyntax, p.loc, "port '" + p.name + "' has no direction declaration");
      }
    }
    module_ = nullptr;
    return m;
  }

  void port_list(ModuleAst& m) {
    bool ansi = cur_.at_keyword("input") || cur_.at_keyword("output") || cur_.at_keyword("inout");
    if (!ansi) {
      do {
        PortAst p;
        p.loc = cur_.peek().loc;
        p.name = cur_.expect_ident().text;
        p.dir = PortDir::kInput;
        m.ports.push_back(std::move(p));
      } while (cur_.accept_punct(","));
      // Directions come from the body; marked unset until declared.
      for (auto& p : m.ports) undeclared_dir_.insert(p.name);
      return;
    }
    PortDir dir = PortDir::kInput;
    bool is_reg = false;
    RangeAst range;
    do {
      if (cur_.at_keyword("inout")) cur_.fail("inout port", DiagCode::kUnsupported);
      if (cur_.at_keyword("input") || cur_.at_keyword("output")) {
        dir = cur_.next().text == "input" ? PortDir::kInput : PortDir::kOutput;
        is_reg = false;
        if (cur_.accept_keyword("reg") || cur_.accept_keyword("logic")) {
          is_reg = true;
        } else {
          cur_.accept_keyword("wire");
        }
        if (cur_.at_keyword("signed")) cur_.fail("signed port", DiagCode::kUnsupported);
        range = opt_range();
      }
      PortAst p;
      p.loc = cur_.peek().loc;
      p.name = cur_.expect_ident().text;
      p.dir = dir;
      p.is_reg = is_reg;
      p.range = range;
      if (cur_.at_punct("[")) cur_.fail("unpacked array", DiagCode::kUnsupported);
      m.ports.push_back(std::move(p));
    } while (cur_.accept_punct(","));
  }

  void param_assignment(ModuleAst& m, bool local) {
    if (cur_.at_punct("[")) opt_range();
    ParamAst p;
    p.loc = cur_.peek().loc;
    p.name = cur_.expect_ident().text;
    p.local = local;
    cur_.expect_punct("=");
    p.value = expr();
    m.params.push_back(std::move(p));
  }

  void module_item(ModuleAst& m) {
    const Token& t = cur_.peek();
    if (t.kind != Tok::kIdent) {
      if (t.kind == Tok::kDirective || t.kind == Tok::kMacro) {
        cur_.fail("compiler directive", DiagCode::kUnsupported);
      }
      cur_.fail("expected module item");
    }
    const std::string& kw = t.text;
    if (kw == "generate" || kw == "initial" || kw == "function" || kw == "task" ||
        kw == "integer" || kw == "genvar" || kw == "always_latch" || kw == "inout" ||
        kw == "specify" || kw == "for") {
      std::string what = kw == "initial" ? "initial block" : kw == "always_latch" ? "always_latch block" : kw;
      if (kw == "generate" || kw == "function" || kw == "task") what += " block";
      SourceLoc loc = t.loc;
      std::string closer = "end" + kw;
      throw_after_skip(loc, what, kw == "generate" || kw == "function" || kw == "task" ? closer : "");
    }
    if (kw == "input" || kw == "output") {
      body_port_decl(m);
    } else if (kw == "wire" || kw == "reg" || kw == "logic") {
      net_decl(m);
    } else if (kw == "parameter" || kw == "localparam") {
      cur_.next();
      cur_.accept_keyword("integer");
      do {
        param_assignment(m, kw == "localparam");
      } while (cur_.accept_punct(","));
      cur_.expect_punct(";");
    } else if (kw == "assign") {
      SourceLoc loc = cur_.next().loc;
      do {
        ContAssignAst a;
        a.loc = loc;
        a.lhs = lvalue();
        cur_.expect_punct("=");
        a.rhs = expr();
        a.stmt_id = new_stmt(StatementKind::kAssign, loc);
        m.assigns.push_back(std::move(a));
      } while (cur_.accept_punct(","));
      cur_.expect_punct(";");
    } else if (kw == "always" || kw == "always_ff" || kw == "always_comb") {
      always_block(m);
    } else if (is_reserved_word(kw)) {
      cur_.fail("unexpected keyword");
    } else {
      instance(m);
    }
  }

  [[noreturn]] void throw_after_skip(SourceLoc loc, const std::string& what, const std::string& closer) {
    if (!closer.empty()) {
      while (!cur_.at_end() && !cur_.at_keyword(closer) && !cur_.at_keyword("endmodule")) cur_.next();
    }
    throw ParseError(DiagCode::kUnsupported, loc, what + " is not supported");
  }

  std::string lvalue() {
    if (cur_.at_punct("{")) cur_.fail("concatenation assignment target", DiagCode::kUnsupported);
    std::string name = cur_.expect_ident().text;
    if (cur_.at_punct("[")) cur_.fail("part-select assignment target", DiagCode::kUnsupported);
    return name;
  }

  void body_port_decl(ModuleAst& m) {
    PortDir dir = cur_.next().text == "input" ? PortDir::kInput : PortDir::kOutput;
    bool is_reg = false;
    if (cur_.accept_keyword("reg") || cur_.accept_keyword("logic")) {
      is_reg = true;
    } else {
      cur_.accept_keyword("wire");
    }
    if (cur_.at_keyword("signed")) cur_.fail("signed port", DiagCode::kUnsupported);
    RangeAst range = opt_range();
    do {
      const Token& id = cur_.expect_ident();
      PortAst* port = nullptr;
      for (auto& p : m.ports) {
        if (p.name == id.text) port = &p;
      }
      if (!port || !undeclared_dir_.count(id.text)) {
        if (port) throw ParseError(DiagCode::kDuplicate, id.loc, "duplicate declaration of '" + id.text + "'");
        throw ParseError(DiagCode::kUndeclared, id.loc, "'" + id.text + "' is not in the port list");
      }
      undeclared_dir_.erase(id.text);
      port->dir = dir;
      port->is_reg = is_reg;
      port->range = range;
      port->loc = id.loc;
    } while (cur_.accept_punct(","));
    cur_.expect_punct(";");
  }

  void net_decl(ModuleAst& m) {
    bool is_reg = cur_.next().text != "wire";
    if (cur_.at_keyword("signed")) cur_.fail("signed net", DiagCode::kUnsupported);
    RangeAst range = opt_range();
    do {
      const Token& id = cur_.expect_ident();
      if (cur_.at_punct("[")) cur_.fail("unpacked array", DiagCode::kUnsupported);
      bool merged = false;
      for (auto& p : m.ports) {
        if (p.name != id.text) continue;
        // `output q; reg q;` style redeclaration of a port.
        if (p.is_reg || !is_reg) {
          throw ParseError(DiagCode::kDuplicate, id.loc, "duplicate declaration of '" + id.text + "'");
        }
        p.is_reg = true;
        if (!range.scalar()) p.range = range;
        merged = true;
      }
      if (!merged) {
        for (const auto& n : m.nets) {
          if (n.name == id.text) {
            throw ParseError(DiagCode::kDuplicate, id.loc, "duplicate declaration of '" + id.text + "'");
          }
        }
        m.nets.push_back(NetAst{id.text, range, is_reg, id.loc});
      }
      if (cur_.accept_punct("=")) {
        if (is_reg) throw ParseError(DiagCode::kUnsupported, id.loc, "variable initializer is not supported");
        ContAssignAst a;
        a.loc = id.loc;
        a.lhs = id.text;
        a.rhs = expr();
        a.stmt_id = new_stmt(StatementKind::kAssign, id.loc);
        m.assigns.push_back(std::move(a));
      }
    } while (cur_.accept_punct(","));
    cur_.expect_punct(";");
  }

  void always_block(ModuleAst& m) {
    AlwaysAst a;
    const Token& kw = cur_.next();
    a.loc = kw.loc;
    if (kw.text == "always_comb") {
      a.clocked = false;
    } else {
      cur_.expect_punct("@");
      if (cur_.accept_punct("*")) {
        a.clocked = false;
      } else {
        cur_.expect_punct("(");
        if (cur_.accept_punct("*")) {
          a.clocked = false;
        } else if (cur_.at_keyword("negedge")) {
          cur_.fail("negedge clock", DiagCode::kUnsupported);
        } else if (cur_.accept_keyword("posedge")) {
          a.clocked = true;
          a.clock = cur_.expect_ident().text;
          if (cur_.at_keyword("or") || cur_.at_punct(",")) {
            throw ParseError(DiagCode::kUnsupported, cur_.peek().loc,
                             "asynchronous reset (multi-edge sensitivity list) is not supported");
          }
        } else {
          cur_.fail("explicit sensitivity list", DiagCode::kUnsupported);
        }
        cur_.expect_punct(")");
      }
      if (kw.text == "always_ff" && !a.clocked) cur_.fail("always_ff without posedge clock");
    }
    in_clocked_ = a.clocked;
    a.body = statement();
    m.always.push_back(std::move(a));
  }

  StmtPtr statement() {
    const Token& t = cur_.peek();
    auto s = std::make_shared<Stmt>();
    s->loc = t.loc;
    if (t.kind == Tok::kIdent && t.text == "begin") {
      cur_.next();
      if (cur_.accept_punct(":")) cur_.expect_ident();
      s->kind = Stmt::Kind::kBlock;
      while (!cur_.accept_keyword("end")) {
        if (cur_.at_end() || cur_.at_keyword("endmodule")) cur_.fail("missing 'end'");
        s->body.push_back(statement());
      }
      if (cur_.accept_punct(":")) cur_.expect_ident();
      return s;
    }
    if (t.kind == Tok::kIdent && t.text == "if") {
      cur_.next();
      s->kind = Stmt::Kind::kIf;
      cur_.expect_punct("(");
      s->cond = expr();
      cur_.expect_punct(")");
      s->then_id = new_stmt(StatementKind::kBranchArm, s->loc);
      s->then_body = statement();
      if (cur_.at_keyword("else")) {
        SourceLoc eloc = cur_.next().loc;
        s->else_loc = eloc;
        s->else_id = new_stmt(StatementKind::kBranchArm, eloc);
        s->else_body = statement();
      }
      return s;
    }
    if (t.kind == Tok::kIdent && (t.text == "unique" || t.text == "priority")) {
      cur_.fail(t.text + " case", DiagCode::kUnsupported);
    }
    if (t.kind == Tok::kIdent && (t.text == "casez" || t.text == "casex")) {
      cur_.fail(t.text + " statement", DiagCode::kUnsupported);
    }
    if (t.kind == Tok::kIdent && (t.text == "for" || t.text == "while" || t.text == "repeat" || t.text == "forever")) {
      cur_.fail(t.text + " loop", DiagCode::kUnsupported);
    }
    if (t.kind == Tok::kIdent && t.text == "case") {
      cur_.next();
      s->kind = Stmt::Kind::kCase;
      cur_.expect_punct("(");
      s->cond = expr();
      cur_.expect_punct(")");
      bool seen_default = false;
      while (!cur_.accept_keyword("endcase")) {
        if (cur_.at_end() || cur_.at_keyword("endmodule")) cur_.fail("missing 'endcase'");
        CaseItemAst item;
        item.loc = cur_.peek().loc;
        if (cur_.accept_keyword("default")) {
          if (seen_default) throw ParseError(DiagCode::kDuplicate, item.loc, "duplicate default arm");
          seen_default = true;
          cur_.accept_punct(":");
        } else {
          do {
            item.labels.push_back(expr());
          } while (cur_.accept_punct(","));
          cur_.expect_punct(":");
        }
        item.stmt_id = new_stmt(StatementKind::kBranchArm, item.loc);
        item.body = statement();
        s->items.push_back(std::move(item));
      }
      // A default arm is matched last regardless of its position.
      std::stable_partition(s->items.begin(), s->items.end(),
                            [](const CaseItemAst& i) { return !i.labels.empty(); });
      return s;
    }
    if (t.kind == Tok::kPunct && t.text == ";") {
      cur_.next();
      s->kind = Stmt::Kind::kBlock;
      return s;
    }
    if (t.kind == Tok::kSysName) cur_.fail("system task " + t.text, DiagCode::kUnsupported);
    if (t.kind == Tok::kPunct && t.text == "#") cur_.fail("delay control", DiagCode::kUnsupported);
    s->kind = Stmt::Kind::kAssign;
    s->lhs = lvalue();
    if (cur_.accept_punct("<=")) {
      s->nonblocking = true;
    } else {
      cur_.expect_punct("=");
    }
    s->rhs = expr();
    cur_.expect_punct(";");
    s->stmt_id = new_stmt(StatementKind::kSeqAssign, s->loc);
    return s;
  }

  void instance(ModuleAst& m) {
    InstanceAst inst;
    const Token& mod = cur_.expect_ident();
    inst.module = mod.text;
    inst.loc = mod.loc;
    if (cur_.accept_punct("#")) {
      cur_.expect_punct("(");
      if (!cur_.at_punct(")")) {
        do {
          if (!cur_.at_punct(".")) cur_.fail("positional parameter override", DiagCode::kUnsupported);
          cur_.next();
          std::string name = cur_.expect_ident().text;
          cur_.expect_punct("(");
          ExprPtr v = expr();
          cur_.expect_punct(")");
          inst.param_overrides.emplace_back(name, v);
        } while (cur_.accept_punct(","));
      }
      cur_.expect_punct(")");
    }
    inst.name = cur_.expect_ident().text;
    cur_.expect_punct("(");
    if (!cur_.at_punct(")")) {
      do {
        if (!cur_.at_punct(".")) cur_.fail("positional port connection", DiagCode::kUnsupported);
        ConnectionAst c;
        c.loc = cur_.next().loc;
        c.port = cur_.expect_ident().text;
        cur_.expect_punct("(");
        if (!cur_.at_punct(")")) c.expr = expr();
        cur_.expect_punct(")");
        inst.connections.push_back(std::move(c));
      } while (cur_.accept_punct(","));
    }
    cur_.expect_punct(")");
    cur_.expect_punct(";");
    m.instances.push_back(std::move(inst));
  }

  TokenCursor cur_;
  std::string file_;
  Diagnostics& diags_;
  std::vector<StatementRef>& stmts_;
  ModuleAst* module_ = nullptr;
  bool in_clocked_ = false;
  std::set<std::string> undeclared_dir_;
};

// ---------------------------------------------------------------------------
// Declaration checks and metadata.

struct Scope {
  const ModuleAst& m;
  std::map<std::string, std::int64_t> params;

  bool has_signal(const std::string& n) const {
    for (const auto& p : m.ports) {
      if (p.name == n) return true;
    }
    for (const auto& s : m.nets) {
      if (s.name == n) return true;
    }
    return false;
  }
};

void check_names(const ExprPtr& e, const Scope& s, Diagnostics& diags) {
  if (!e) return;
  if (e->op == Op::kRef && !s.has_signal(e->name) && !s.params.count(e->name)) {
    diags.error(DiagCode::kUndeclared, e->loc, "undeclared identifier '" + e->name + "'");
    return;
  }
  for (const auto& a : e->args) check_names(a, s, diags);
}

void check_target(const std::string& lhs, SourceLoc loc, const Scope& s, Diagnostics& diags) {
  if (!s.has_signal(lhs)) {
    diags.error(DiagCode::kUndeclared, loc, "undeclared assignment target '" + lhs + "'");
    return;
  }
  for (const auto& p : s.m.ports) {
    if (p.name == lhs && p.dir == PortDir::kInput) {
      diags.error(DiagCode::kMultipleDrivers, loc, "assignment to input port '" + lhs + "'");
    }
  }
}

void check_stmt(const StmtPtr& st, const Scope& s, Diagnostics& diags) {
  if (!st) return;
  switch (st->kind) {
    case Stmt::Kind::kBlock:
      for (const auto& b : st->body) check_stmt(b, s, diags);
      break;
    case Stmt::Kind::kIf:
      check_names(st->cond, s, diags);
      check_stmt(st->then_body, s, diags);
      check_stmt(st->else_body, s, diags);
      break;
    case Stmt::Kind::kCase:
      check_names(st->cond, s, diags);
      for (const auto& item : st->items) {
        for (const auto& l : item.labels) check_names(l, s, diags);
        check_stmt(item.body, s, diags);
      }
      break;
    case Stmt::Kind::kAssign:
      check_target(st->lhs, st->loc, s, diags);
      check_names(st->rhs, s, diags);
      break;
  }
}

ModuleDecl build_decl(const ModuleAst& m, Diagnostics& diags) {
  ModuleDecl d;
  d.name = m.name;
  d.file = m.file;
  d.line = m.loc.line;
  std::map<std::string, std::int64_t> params;
  try {
    params = eval_params(m, {});
  } catch (const ExprError& e) {
    diags.error(e.code(), e.loc(), e.what());
    return d;
  }
  for (const auto& p : m.params) d.parameters.push_back(ParamInfo{p.name, params[p.name], p.local});
  std::set<std::string> names;
  auto claim = [&](const std::string& n, SourceLoc loc) {
    if (!names.insert(n).second) diags.error(DiagCode::kDuplicate, loc, "duplicate declaration of '" + n + "'");
    if (params.count(n)) diags.error(DiagCode::kDuplicate, loc, "'" + n + "' redeclares a parameter");
  };
  for (const auto& p : m.ports) {
    claim(p.name, p.loc);
    try {
      d.ports.push_back(PortInfo{p.name, p.dir, range_width(p.range, params, p.loc)});
    } catch (const ExprError& e) {
      diags.error(e.code(), e.loc(), e.what());
    }
  }
  for (const auto& n : m.nets) {
    claim(n.name, n.loc);
    try {
      d.signals.push_back(SignalInfo{n.name, range_width(n.range, params, n.loc), n.is_reg});
    } catch (const ExprError& e) {
      diags.error(e.code(), e.loc(), e.what());
    }
  }
  for (const auto& inst : m.instances) {
    InstanceInfo info{inst.name, inst.module, {}};
    for (const auto& c : inst.connections) {
      info.connections.emplace_back(c.port, c.expr ? to_verilog(*c.expr) : std::string());
    }
    claim(inst.name, inst.loc);
    d.instances.push_back(std::move(info));
  }
  Scope scope{m, params};
  for (const auto& a : m.assigns) {
    check_target(a.lhs, a.loc, scope, diags);
    check_names(a.rhs, scope, diags);
  }
  for (const auto& a : m.always) {
    if (a.clocked) {
      bool is_input = false;
      for (const auto& p : m.ports) is_input |= p.name == a.clock && p.dir == PortDir::kInput;
      if (!is_input) {
        diags.error(DiagCode::kUnsupported, a.loc, "clock '" + a.clock + "' is not an input port");
      }
    }
    check_stmt(a.body, scope, diags);
  }
  for (const auto& inst : m.instances) {
    for (const auto& c : inst.connections) check_names(c.expr, scope, diags);
    for (const auto& [n, v] : inst.param_overrides) check_names(v, scope, diags);
  }
  return d;
}

}  // namespace

const ModuleAst* DesignAst::find(const std::string& name) const {
  for (const auto& m : modules) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

std::string statement_id(int n) { return "S" + std::to_string(n); }

std::string_view to_string(StatementKind kind) {
  switch (kind) {
    case StatementKind::kAssign:
      return "assign";
    case StatementKind::kBranchArm:
      return "branch_arm";
    case StatementKind::kSeqAssign:
      return "seq_assign";
  }
  return "assign";
}

std::optional<StatementKind> parse_statement_kind(std::string_view text) {
  if (text == "assign") return StatementKind::kAssign;
  if (text == "branch_arm") return StatementKind::kBranchArm;
  if (text == "seq_assign") return StatementKind::kSeqAssign;
  return std::nullopt;
}

std::string_view to_string(PortDir dir) { return dir == PortDir::kInput ? "input" : "output"; }

const ModuleDecl* DesignModel::find_module(std::string_view name) const {
  for (const auto& m : modules) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

bool DesignModel::operator==(const DesignModel& o) const {
  return modules == o.modules && fsms == o.fsms && statements == o.statements && top == o.top &&
         signal_paths == o.signal_paths && sources == o.sources;
}

ParseResult<DesignModel> parse_rtl(std::string_view source, const std::string& file) {
  return parse_rtl(std::vector<SourceFile>{SourceFile{file, std::string(source)}});
}

ParseResult<DesignModel> parse_rtl(const std::vector<SourceFile>& files) {
  ParseResult<DesignModel> out;
  auto ast = std::make_shared<DesignAst>();
  std::vector<StatementRef> stmts;
  for (const auto& f : files) {
    Diagnostics diags;
    std::vector<Token> toks = tokenize(f.text, diags);
    RtlParser parser(toks, f.path, diags, stmts);
    parser.parse_file(ast->modules);
    diags.set_file(f.path);
    out.diags.append(diags);
  }
  DesignModel model;
  std::set<std::string> module_names;
  for (const auto& m : ast->modules) {
    Diagnostics diags;
    if (!module_names.insert(m.name).second) {
      diags.error(DiagCode::kDuplicate, m.loc, "duplicate module '" + m.name + "'");
    }
    model.modules.push_back(build_decl(m, diags));
    for (const auto& inst : m.instances) {
      if (!ast->find(inst.module)) {
        diags.error(DiagCode::kUnresolvedInstance, inst.loc,
                    "instance '" + inst.name + "' refers to unknown module '" + inst.module + "'");
      }
    }
    diags.set_file(m.file);
    out.diags.append(diags);
  }
  if (out.diags.has_errors()) return out;
  model.statements = std::move(stmts);
  model.sources = files;
  model.ast = ast;
  model.fsms = detect_fsms(model);
  out.value = std::move(model);
  return out;
}

void ensure_ast(DesignModel& m) {
  if (m.ast || m.sources.empty()) return;
  auto r = parse_rtl(m.sources);
  if (!r.ok()) throw Error("stored RTL sources no longer parse:\n" + r.diags.format("<rtl>"));
  m.ast = r->ast;
}

namespace {

void index_stmt(const StmtPtr& s, const std::string& module, std::vector<StatementRef>& out) {
  if (!s) return;
  switch (s->kind) {
    case Stmt::Kind::kBlock:
      for (const auto& b : s->body) index_stmt(b, module, out);
      break;
    case Stmt::Kind::kIf:
      out.push_back({statement_id(s->then_id), module, s->loc.line, StatementKind::kBranchArm});
      index_stmt(s->then_body, module, out);
      if (s->else_body) {
        out.push_back({statement_id(s->else_id), module, s->else_loc.line, StatementKind::kBranchArm});
        index_stmt(s->else_body, module, out);
      }
      break;
    case Stmt::Kind::kCase:
      for (const auto& item : s->items) {
        out.push_back({statement_id(item.stmt_id), module, item.loc.line, StatementKind::kBranchArm});
        index_stmt(item.body, module, out);
      }
      break;
    case Stmt::Kind::kAssign:
      out.push_back({statement_id(s->stmt_id), module, s->loc.line, StatementKind::kSeqAssign});
      break;
  }
}

}  // namespace

std::vector<StatementRef> statement_index(const DesignModel& m) {
  std::shared_ptr<const DesignAst> ast = m.ast;
  if (!ast) {
    DesignModel copy = m;
    ensure_ast(copy);
    ast = copy.ast;
  }
  if (!ast) return m.statements;
  std::vector<StatementRef> out;
  for (const auto& mod : ast->modules) {
    for (const auto& a : mod.assigns) {
      out.push_back({statement_id(a.stmt_id), mod.name, a.loc.line, StatementKind::kAssign});
    }
    for (const auto& a : mod.always) index_stmt(a.body, mod.name, out);
  }
  std::sort(out.begin(), out.end(), [](const StatementRef& a, const StatementRef& b) {
    return std::stoi(a.id.substr(1)) < std::stoi(b.id.substr(1));
  });
  return out;
}

}  // namespace kgv::rtl
