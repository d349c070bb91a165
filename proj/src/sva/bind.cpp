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

#include "kgv/sva/bind.hpp"

#include <map>
#include <set>

#include "kgv/expr/lexer.hpp"
#include "kgv/expr/parser.hpp"
#include "kgv/expr/typing.hpp"

namespace kgv::sva {
namespace {

struct Failure {
  BindErrorKind kind;
  std::string identifier;
  SourceLoc loc;
  std::string message;
  std::vector<std::string> candidates;
};

class Binder {
 public:
  Binder(const PropertyFile& f, const rtl::DesignModel& m, const rtl::NetModel& net,
         const kg::SignalIndex& idx)
      : f_(f), net_(net), idx_(idx) {
    if (const rtl::ModuleDecl* top = m.find_module(net.top)) {
      for (const auto& p : top->parameters) params_[p.name] = p.value;
    }
  }

  BindResult run() {
    BindResult out;
    for (const auto& p : f_.properties) {
      std::vector<Failure> fails;
      BoundProperty b = bind_one(p, fails);
      if (fails.empty()) {
        out.bound.push_back(std::move(b));
        continue;
      }
      for (auto& x : fails) {
        out.errors.push_back(BindError{p.prop_id, x.identifier, x.loc.line, x.loc.col, x.kind,
                                       x.message, x.candidates});
      }
    }
    return out;
  }

 private:
  // Name lookup without widths; records a failure and returns null.
  ExprPtr lookup(const Expr& e, std::vector<Failure>& fails) {
    const std::string& name = e.name;
    if (net_.width_of(name)) return make_ref(name, *net_.width_of(name), e.loc);
    std::string rel = net_.top + "." + name;
    if (net_.width_of(rel)) return make_ref(rel, *net_.width_of(rel), e.loc);
    auto p = params_.find(name);
    if (p != params_.end()) return make_const(static_cast<std::uint64_t>(p->second), 0, e.loc);
    std::vector<std::string> hits = kg::resolve_signal(idx_, name);
    std::vector<std::string> known;
    for (const auto& h : hits) {
      if (net_.width_of(h)) known.push_back(h);
    }
    if (known.size() == 1) return make_ref(known[0], *net_.width_of(known[0]), e.loc);
    if (known.size() > 1) {
      std::string list;
      for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
      fails.push_back({BindErrorKind::kAmbiguousPath, name, e.loc,
                       "identifier '" + name + "' matches " + std::to_string(known.size()) +
                           " signals: " + list,
                       known});
      return nullptr;
    }
    fails.push_back({BindErrorKind::kUndeclaredIdentifier, name, e.loc,
                     "undeclared identifier '" + name + "'", {}});
    return nullptr;
  }

  ExprPtr expand_macro(const Expr& e, std::vector<Failure>& fails) {
    const Macro* m = f_.find_macro(e.name);
    if (!m) {
      fails.push_back({BindErrorKind::kUndefinedMacro, "`" + e.name, e.loc, "undefined macro `" + e.name, {}});
      return nullptr;
    }
    Diagnostics d;
    auto toks = tokenize(m->text, d);
    ExprPtr body;
    try {
      TokenCursor cur(toks);
      ExprSyntax syn;
      syn.allow_temporal = true;
      syn.allow_macros = true;
      syn.allow_dotted_names = true;
      body = parse_expression(cur, syn);
      if (!cur.at_end()) cur.fail("trailing text in macro body");
    } catch (const ParseError& err) {
      fails.push_back({BindErrorKind::kUndefinedMacro, "`" + e.name, e.loc,
                       "macro `" + e.name + " does not expand to an expression: " + err.what(), {}});
      return nullptr;
    }
    if (d.has_errors()) {
      fails.push_back({BindErrorKind::kUndefinedMacro, "`" + e.name, e.loc,
                       "macro `" + e.name + " does not expand to an expression", {}});
      return nullptr;
    }
    if (contains_op(*body, Op::kMacro)) {
      fails.push_back({BindErrorKind::kRecursiveMacro, "`" + e.name, e.loc,
                       "macro `" + e.name + " refers to another macro; only one level of expansion is allowed",
                       {}});
      return nullptr;
    }
    // Report positions at the use site.
    return relocate(body, e.loc);
  }

  static ExprPtr relocate(const ExprPtr& e, SourceLoc loc) {
    auto copy = std::make_shared<Expr>(*e);
    copy->loc = loc;
    for (auto& a : copy->args) a = relocate(a, loc);
    return copy;
  }

  // Pass 1 collects every name failure; pass 2 resolves widths.
  void scan(const ExprPtr& e, std::vector<Failure>& fails) {
    if (!e) return;
    if (e->op == Op::kRef) {
      lookup(*e, fails);
      return;
    }
    if (e->op == Op::kMacro) {
      ExprPtr body = expand_macro(*e, fails);
      if (body) scan(body, fails);
      return;
    }
    for (const auto& a : e->args) scan(a, fails);
  }

  ExprPtr typed(const ExprPtr& raw, std::vector<Failure>& fails) {
    Resolver r;
    r.allow_temporal = true;
    r.ref = [&](const Expr& e) {
      std::vector<Failure> ignore;
      return lookup(e, ignore);
    };
    r.macro = [&](const Expr& e) -> ExprPtr {
      std::vector<Failure> ignore;
      ExprPtr body = expand_macro(e, ignore);
      return body ? resolve(body, r) : nullptr;
    };
    try {
      return as_bool(resolve(raw, r));
    } catch (const ExprError& err) {
      fails.push_back({BindErrorKind::kWidthMismatch, to_verilog(*raw), err.loc(), err.what(), {}});
      return nullptr;
    }
  }

  Sequence bind_seq(const Sequence& s, std::vector<Failure>& fails) {
    Sequence out;
    for (const auto& el : s) out.push_back(SeqElem{el.min_delay, el.max_delay, typed(el.expr, fails)});
    return out;
  }

  BoundProperty bind_one(const PropertyDecl& p, std::vector<Failure>& fails) {
    BoundProperty b;
    b.prop_id = p.prop_id;
    b.kind = p.kind;
    b.line = p.start_line;
    b.has_implication = p.ast.has_implication;
    b.overlapped = p.ast.overlapped;
    std::string clock = p.ast.clock ? *p.ast.clock : f_.default_clock.value_or("");
    if (!net_.clock.empty()) {
      Expr probe;
      probe.op = Op::kRef;
      probe.name = clock;
      probe.loc = {p.start_line, 1};
      ExprPtr c = lookup(probe, fails);
      if (c && (c->op != Op::kRef || c->name != net_.clock)) {
        fails.push_back({BindErrorKind::kUndeclaredIdentifier, clock, probe.loc,
                         "'" + clock + "' is not the design clock " + net_.clock, {}});
      }
      b.clock = net_.clock;
    } else {
      b.clock = clock;
    }
    scan(p.ast.disable, fails);
    for (const auto& el : p.ast.antecedent) scan(el.expr, fails);
    for (const auto& el : p.ast.consequent) scan(el.expr, fails);
    if (!fails.empty()) return b;
    if (p.ast.disable) b.disable = typed(p.ast.disable, fails);
    b.antecedent = bind_seq(p.ast.antecedent, fails);
    b.consequent = bind_seq(p.ast.consequent, fails);
    return b;
  }

  const PropertyFile& f_;
  const rtl::NetModel& net_;
  const kg::SignalIndex& idx_;
  std::map<std::string, std::int64_t> params_;
};

}  // namespace

std::string_view to_string(BindErrorKind kind) {
  switch (kind) {
    case BindErrorKind::kUndeclaredIdentifier:
      return "undeclared_identifier";
    case BindErrorKind::kUndefinedMacro:
      return "undefined_macro";
    case BindErrorKind::kWidthMismatch:
      return "width_mismatch";
    case BindErrorKind::kAmbiguousPath:
      return "ambiguous_path";
    case BindErrorKind::kRecursiveMacro:
      return "recursive_macro";
  }
  return "undeclared_identifier";
}

std::vector<BindError> BindResult::errors_for(std::string_view prop_id) const {
  std::vector<BindError> out;
  for (const auto& e : errors) {
    if (e.prop_id == prop_id) out.push_back(e);
  }
  return out;
}

BindResult bind(const PropertyFile& f, const rtl::DesignModel& m, const rtl::NetModel& net,
                const kg::SignalIndex& idx) {
  return Binder(f, m, net, idx).run();
}

Diagnostics to_diagnostics(const std::vector<BindError>& errors) {
  Diagnostics d;
  for (const auto& e : errors) {
    DiagCode code = DiagCode::kUndeclared;
    switch (e.kind) {
      case BindErrorKind::kUndeclaredIdentifier:
        code = DiagCode::kUndeclared;
        break;
      case BindErrorKind::kUndefinedMacro:
        code = DiagCode::kUndefinedMacro;
        break;
      case BindErrorKind::kWidthMismatch:
        code = DiagCode::kWidthMismatch;
        break;
      case BindErrorKind::kAmbiguousPath:
        code = DiagCode::kAmbiguousPath;
        break;
      case BindErrorKind::kRecursiveMacro:
        code = DiagCode::kRecursiveMacro;
        break;
    }
    d.error(code, {e.line, e.col}, e.message, e.prop_id);
  }
  return d;
}

}  // namespace kgv::sva
