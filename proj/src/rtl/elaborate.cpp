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
#include <functional>
#include <set>
#include <unordered_map>
#include <utility>

#include "kgv/expr/typing.hpp"
#include "kgv/rtl/netmodel.hpp"
#include "src/rtl/internal.hpp"

namespace kgv::rtl {
namespace {

using detail::ParamValues;

enum class NetKind { kUndriven, kInput, kState, kComb };

struct Net {
  int width = 1;
  NetKind kind = NetKind::kUndriven;
  ExprPtr def;  // kComb: over hierarchical net refs; kState: next value
  std::string driver;
  std::uint64_t init = 0;
};

struct Ctx {
  const ModuleAst* module = nullptr;
  std::string prefix;
  ParamValues params;
  const Ctx* parent = nullptr;
  const InstanceAst* via = nullptr;
  std::map<std::string, std::string> hier;  // local -> hierarchical
};

// A procedural variable's symbolic value. `partial` marks a combinational
// variable that is not assigned on every path.
struct Sym {
  ExprPtr value;
  bool partial = false;
};
using SymMap = std::map<std::string, Sym>;

class Elaborator {
 public:
  Elaborator(const DesignModel& m, Diagnostics& diags) : model_(m), diags_(diags) {}

  std::optional<NetModel> run(const std::string& top, const ParamValues& overrides) {
    const ModuleAst* tm = model_.ast->find(top);
    if (!tm) {
      diags_.error(DiagCode::kUnresolvedInstance, {}, "top module '" + top + "' not found");
      return std::nullopt;
    }
    for (const auto& [name, value] : overrides) {
      bool found = false;
      for (const auto& p : tm->params) found |= p.name == name && !p.local;
      if (!found) {
        error(*tm, DiagCode::kUnknownParameter, tm->loc,
              "module '" + top + "' has no parameter '" + name + "'");
      }
    }
    if (diags_.has_errors()) return std::nullopt;
    top_ = top;
    elab(*tm, top, overrides, nullptr, nullptr);
    if (diags_.has_errors()) return std::nullopt;
    return finish();
  }

 private:
  void error(const ModuleAst& m, DiagCode code, SourceLoc loc, std::string msg) {
    diags_.error(code, loc, std::move(msg));
    diags_.set_file(m.file);
  }

  void warning(const ModuleAst& m, DiagCode code, SourceLoc loc, std::string msg) {
    diags_.warning(code, loc, std::move(msg));
    diags_.set_file(m.file);
  }

  void drive(const ModuleAst& m, const std::string& hier, NetKind kind, ExprPtr def,
             const std::string& what, SourceLoc loc) {
    Net& n = nets_.at(hier);
    std::string desc = what + " at line " + std::to_string(loc.line);
    if (n.kind != NetKind::kUndriven) {
      error(m, DiagCode::kMultipleDrivers, loc,
            "'" + hier + "' has multiple drivers: " + n.driver + " and " + desc);
      return;
    }
    n.kind = kind;
    n.def = std::move(def);
    n.driver = desc;
  }

  ExprPtr local_ref(const Ctx& c, const Expr& e, const SymMap* sym) {
    if (sym) {
      auto it = sym->find(e.name);
      if (it != sym->end()) return it->second.value;
    }
    auto h = c.hier.find(e.name);
    if (h != c.hier.end()) return make_ref(h->second, nets_.at(h->second).width, e.loc);
    auto p = c.params.find(e.name);
    if (p != c.params.end()) return make_const(static_cast<std::uint64_t>(p->second), 0, e.loc);
    throw ExprError(DiagCode::kUndeclared, e.loc, "undeclared identifier '" + e.name + "'");
  }

  ExprPtr resolve_in(const Ctx& c, const ExprPtr& raw, const SymMap* sym) {
    Resolver r;
    r.ref = [&](const Expr& e) { return local_ref(c, e, sym); };
    return resolve(raw, r);
  }

  int width_of_local(const Ctx& c, const std::string& name) {
    return nets_.at(c.hier.at(name)).width;
  }

  void add_guard(int stmt_id, const ExprPtr& g) {
    std::string id = statement_id(stmt_id);
    auto it = guards_.find(id);
    guards_[id] = it == guards_.end() ? g : fold_or(it->second, g);
  }

  void elab(const ModuleAst& m, const std::string& prefix, const ParamValues& overrides,
            const Ctx* parent, const InstanceAst* via) {
    if (std::count(stack_.begin(), stack_.end(), m.name)) {
      error(m, DiagCode::kUnresolvedInstance, m.loc, "recursive instantiation of module '" + m.name + "'");
      return;
    }
    stack_.push_back(m.name);
    Ctx c;
    c.module = &m;
    c.prefix = prefix;
    c.parent = parent;
    c.via = via;
    try {
      c.params = detail::eval_params(m, overrides);
    } catch (const ExprError& e) {
      error(m, e.code(), e.loc(), e.what());
      stack_.pop_back();
      return;
    }
    auto declare = [&](const std::string& name, const RangeAst& range, SourceLoc loc) {
      std::string h = prefix + "." + name;
      c.hier[name] = h;
      Net n;
      try {
        n.width = detail::range_width(range, c.params, loc);
      } catch (const ExprError& e) {
        error(m, e.code(), e.loc(), e.what());
      }
      nets_[h] = n;
      order_.push_back(h);
    };
    for (const auto& p : m.ports) declare(p.name, p.range, p.loc);
    for (const auto& n : m.nets) declare(n.name, n.range, n.loc);
    if (!parent) {
      for (const auto& p : m.ports) {
        if (p.dir == PortDir::kInput) {
          drive(m, c.hier[p.name], NetKind::kInput, nullptr, "primary input", p.loc);
        }
      }
    }
    for (const auto& a : m.assigns) {
      try {
        ExprPtr v = coerce_to(resolve_in(c, a.rhs, nullptr), width_of_local(c, a.lhs), a.lhs, a.loc);
        drive(m, c.hier.at(a.lhs), NetKind::kComb, v, "continuous assignment", a.loc);
        add_guard(a.stmt_id, make_const(1, 1));
      } catch (const ExprError& e) {
        error(m, e.code(), e.loc(), e.what());
      }
    }
    for (const auto& a : m.always) always_block(c, a);
    for (const auto& inst : m.instances) instance(c, inst);
    stack_.pop_back();
  }

  ExprPtr coerce_to(const ExprPtr& v, int width, const std::string& lhs, SourceLoc loc) {
    if (!is_flex(*v) && v->width != width) {
      throw ExprError(DiagCode::kWidthMismatch, loc,
                      "width mismatch in assignment to '" + lhs + "': " + std::to_string(width) +
                          " vs " + std::to_string(v->width) + " bits");
    }
    try {
      return coerce(v, width);
    } catch (const ExprError& e) {
      throw ExprError(e.code(), loc, std::string(e.what()) + " (assignment to '" + lhs + "')");
    }
  }

  // Follows a clock port up the instance chain to a top-level input.
  std::string trace_clock(const Ctx& c, const std::string& name, SourceLoc loc) {
    if (!c.parent) return c.hier.at(name);
    for (const auto& conn : c.via->connections) {
      if (conn.port != name) continue;
      if (!conn.expr || conn.expr->op != Op::kRef) break;
      bool is_input = false;
      for (const auto& p : c.parent->module->ports) {
        is_input |= p.name == conn.expr->name && p.dir == PortDir::kInput;
      }
      if (!is_input) {
        throw ExprError(DiagCode::kUnsupported, conn.loc,
                        "derived clock '" + conn.expr->name + "' is not supported");
      }
      return trace_clock(*c.parent, conn.expr->name, conn.loc);
    }
    throw ExprError(DiagCode::kUnsupported, loc,
                    "clock '" + name + "' of instance '" + c.prefix + "' is not connected to a clock input");
  }

  static void collect_targets(const StmtPtr& s, std::map<std::string, std::pair<bool, bool>>& t) {
    if (!s) return;
    switch (s->kind) {
      case Stmt::Kind::kBlock:
        for (const auto& b : s->body) collect_targets(b, t);
        break;
      case Stmt::Kind::kIf:
        collect_targets(s->then_body, t);
        collect_targets(s->else_body, t);
        break;
      case Stmt::Kind::kCase:
        for (const auto& i : s->items) collect_targets(i.body, t);
        break;
      case Stmt::Kind::kAssign:
        (s->nonblocking ? t[s->lhs].second : t[s->lhs].first) = true;
        break;
    }
  }

  void always_block(Ctx& c, const AlwaysAst& a) {
    const ModuleAst& m = *c.module;
    std::map<std::string, std::pair<bool, bool>> targets;  // blocking, nonblocking
    collect_targets(a.body, targets);
    try {
      if (a.clocked) {
        std::string clk = trace_clock(c, a.clock, a.loc);
        if (clock_.empty()) clock_ = clk;
        if (clk != clock_) {
          throw ExprError(DiagCode::kUnsupported, a.loc,
                          "multiple clocks ('" + clock_ + "' and '" + clk + "') are not supported");
        }
      }
    } catch (const ExprError& e) {
      error(m, e.code(), e.loc(), e.what());
      return;
    }
    for (const auto& [name, kinds] : targets) {
      if (a.clocked && kinds.first && kinds.second) {
        error(m, DiagCode::kUnsupported, a.loc,
              "mixed blocking and non-blocking assignments to '" + name + "'");
        return;
      }
    }
    clocked_ = a.clocked;
    ctx_ = &c;
    SymMap blk;
    SymMap nba;
    bool ok = exec(a.body, make_const(1, 1), blk, nba);
    if (!ok) return;
    for (const auto& [name, kinds] : targets) {
      const std::string& h = c.hier.at(name);
      SymMap& src = (a.clocked && kinds.second) ? nba : blk;
      auto it = src.find(name);
      ExprPtr v = it == src.end() ? nullptr : it->second.value;
      if (a.clocked) {
        if (!v) v = make_ref(h, nets_.at(h).width);
        drive(m, h, NetKind::kState, v, "always block", a.loc);
      } else {
        if (!v || it->second.partial) {
          error(m, DiagCode::kLatch, a.loc,
                "'" + name + "' is not assigned on every path of a combinational block (latch)");
          continue;
        }
        drive(m, h, NetKind::kComb, v, "always block", a.loc);
      }
    }
    if (a.clocked) detect_reset(c, a);
  }

  // Default value of a variable not yet assigned on the current path.
  ExprPtr fallback(const std::string& name) {
    if (!clocked_) return nullptr;
    const std::string& h = ctx_->hier.at(name);
    return make_ref(h, nets_.at(h).width);
  }

  void merge_into(const ExprPtr& c, const SymMap& t, const SymMap& f, SymMap& out) {
    std::set<std::string> keys;
    for (const auto& [k, v] : t) keys.insert(k);
    for (const auto& [k, v] : f) keys.insert(k);
    out.clear();
    for (const auto& k : keys) {
      auto ti = t.find(k);
      auto fi = f.find(k);
      Sym a = ti != t.end() ? ti->second : Sym{fallback(k), false};
      Sym b = fi != f.end() ? fi->second : Sym{fallback(k), false};
      Sym r;
      r.partial = a.partial || b.partial || !a.value || !b.value;
      if (a.value && b.value) {
        r.value = fold_mux(c, a.value, b.value);
      } else {
        r.value = a.value ? a.value : b.value;
      }
      out[k] = r;
    }
  }

  bool exec(const StmtPtr& s, const ExprPtr& pc, SymMap& blk, SymMap& nba) {
    if (!s) return true;
    const ModuleAst& m = *ctx_->module;
    try {
      switch (s->kind) {
        case Stmt::Kind::kBlock:
          for (const auto& b : s->body) {
            if (!exec(b, pc, blk, nba)) return false;
          }
          return true;
        case Stmt::Kind::kAssign: {
          ExprPtr v = resolve_in(*ctx_, s->rhs, &blk);
          v = coerce_to(v, width_of_local(*ctx_, s->lhs), s->lhs, s->loc);
          add_guard(s->stmt_id, pc);
          SymMap& dst = (clocked_ && s->nonblocking) ? nba : blk;
          dst[s->lhs] = Sym{v, false};
          return true;
        }
        case Stmt::Kind::kIf: {
          ExprPtr cond = as_bool(resolve_in(*ctx_, s->cond, &blk));
          ExprPtr pt = fold_and(pc, cond);
          ExprPtr pf = fold_and(pc, fold_not(cond));
          add_guard(s->then_id, pt);
          SymMap tb = blk, tn = nba;
          if (!exec(s->then_body, pt, tb, tn)) return false;
          SymMap fb = blk, fn = nba;
          if (s->else_body) {
            add_guard(s->else_id, pf);
            if (!exec(s->else_body, pf, fb, fn)) return false;
          }
          merge_into(cond, tb, fb, blk);
          merge_into(cond, tn, fn, nba);
          return true;
        }
        case Stmt::Kind::kCase: {
          ExprPtr subject = resolve_in(*ctx_, s->cond, &blk);
          if (is_flex(*subject)) {
            throw ExprError(DiagCode::kWidthMismatch, s->loc, "case subject must be sized");
          }
          ExprPtr earlier = make_const(0, 1);
          struct Arm {
            ExprPtr cond;
            SymMap blk, nba;
          };
          std::vector<Arm> arms;
          SymMap dflt_b = blk, dflt_n = nba;
          for (const auto& item : s->items) {
            ExprPtr hit;
            if (item.labels.empty()) {
              hit = fold_not(earlier);
            } else {
              hit = make_const(0, 1);
              for (const auto& l : item.labels) {
                ExprPtr lv = resolve_in(*ctx_, l, &blk);
                hit = fold_or(hit, fold_eq(subject, lv));
              }
            }
            ExprPtr taken = item.labels.empty() ? hit : fold_and(fold_not(earlier), hit);
            ExprPtr p = fold_and(pc, taken);
            add_guard(item.stmt_id, p);
            SymMap b = blk, n = nba;
            if (!exec(item.body, p, b, n)) return false;
            if (item.labels.empty()) {
              dflt_b = std::move(b);
              dflt_n = std::move(n);
            } else {
              arms.push_back(Arm{hit, std::move(b), std::move(n)});
              earlier = fold_or(earlier, hit);
            }
          }
          for (auto it = arms.rbegin(); it != arms.rend(); ++it) {
            SymMap mb, mn;
            merge_into(it->cond, it->blk, dflt_b, mb);
            merge_into(it->cond, it->nba, dflt_n, mn);
            dflt_b = std::move(mb);
            dflt_n = std::move(mn);
          }
          blk = std::move(dflt_b);
          nba = std::move(dflt_n);
          return true;
        }
      }
    } catch (const ExprError& e) {
      error(m, e.code(), e.loc(), e.what());
      return false;
    }
    return true;
  }

  // `if (<1-bit input>) <constant assignments> else ...` as the whole body
  // of a clocked block supplies reset values.
  void detect_reset(const Ctx& c, const AlwaysAst& a) {
    StmtPtr s = a.body;
    while (s && s->kind == Stmt::Kind::kBlock && s->body.size() == 1) s = s->body[0];
    if (!s || s->kind != Stmt::Kind::kIf || !s->cond || s->cond->op != Op::kRef) return;
    bool is_input = false;
    for (const auto& p : c.module->ports) {
      is_input |= p.name == s->cond->name && p.dir == PortDir::kInput;
    }
    if (!is_input || width_of_local(c, s->cond->name) != 1) return;
    std::vector<StmtPtr> body;
    if (s->then_body && s->then_body->kind == Stmt::Kind::kBlock) {
      body = s->then_body->body;
    } else if (s->then_body) {
      body.push_back(s->then_body);
    }
    for (const auto& st : body) {
      if (st->kind != Stmt::Kind::kAssign) continue;
      try {
        ExprPtr v = resolve_in(c, st->rhs, nullptr);
        if (v->op != Op::kConst) continue;
        const std::string& h = c.hier.at(st->lhs);
        v = coerce(v, nets_.at(h).width);
        nets_.at(h).init = v->value;
      } catch (const ExprError&) {
      }
    }
  }

  void instance(Ctx& c, const InstanceAst& inst) {
    const ModuleAst& m = *c.module;
    const ModuleAst* child = model_.ast->find(inst.module);
    if (!child) {
      error(m, DiagCode::kUnresolvedInstance, inst.loc,
            "instance '" + inst.name + "' refers to unknown module '" + inst.module + "'");
      return;
    }
    ParamValues overrides;
    for (const auto& [name, raw] : inst.param_overrides) {
      bool found = false;
      for (const auto& p : child->params) found |= p.name == name && !p.local;
      if (!found) {
        error(m, DiagCode::kUnknownParameter, inst.loc,
              "module '" + inst.module + "' has no parameter '" + name + "'");
        continue;
      }
      try {
        overrides[name] = detail::const_int(raw, c.params);
      } catch (const ExprError& e) {
        error(m, e.code(), e.loc(), e.what());
      }
    }
    std::string prefix = c.prefix + "." + inst.name;
    elab(*child, prefix, overrides, &c, &inst);
    std::set<std::string> seen;
    for (const auto& conn : inst.connections) {
      const PortAst* port = nullptr;
      for (const auto& p : child->ports) {
        if (p.name == conn.port) port = &p;
      }
      if (!port) {
        error(m, DiagCode::kUnresolvedInstance, conn.loc,
              "module '" + inst.module + "' has no port '" + conn.port + "'");
        continue;
      }
      if (!seen.insert(conn.port).second) {
        error(m, DiagCode::kDuplicate, conn.loc, "port '" + conn.port + "' connected twice");
        continue;
      }
      if (!conn.expr) continue;
      std::string child_net = prefix + "." + conn.port;
      if (!nets_.count(child_net)) continue;
      int w = nets_.at(child_net).width;
      try {
        if (port->dir == PortDir::kInput) {
          ExprPtr v = coerce_to(resolve_in(c, conn.expr, nullptr), w, child_net, conn.loc);
          drive(m, child_net, NetKind::kComb, v, "port connection", conn.loc);
        } else {
          if (conn.expr->op != Op::kRef || !c.hier.count(conn.expr->name)) {
            throw ExprError(DiagCode::kUnsupported, conn.loc,
                            "output port '" + conn.port + "' must connect to a plain signal");
          }
          const std::string& h = c.hier.at(conn.expr->name);
          if (nets_.at(h).width != w) {
            throw ExprError(DiagCode::kWidthMismatch, conn.loc,
                            "width mismatch on port '" + conn.port + "': " + std::to_string(w) +
                                " vs " + std::to_string(nets_.at(h).width) + " bits");
          }
          drive(m, h, NetKind::kComb, make_ref(child_net, w), "output of instance " + inst.name, conn.loc);
        }
      } catch (const ExprError& e) {
        error(m, e.code(), e.loc(), e.what());
      }
    }
  }

  // ---- inlining ---------------------------------------------------------

  ExprPtr rebuild(const ExprPtr& e) {
    if (e->op == Op::kRef) {
      const Net& n = nets_.at(e->name);
      if (n.kind == NetKind::kComb || n.kind == NetKind::kUndriven) return inline_net(e->name);
      return e;
    }
    if (e->args.empty()) return e;
    auto memo = memo_.find(e.get());
    if (memo != memo_.end()) return memo->second;
    std::vector<ExprPtr> args;
    bool changed = false;
    for (const auto& a : e->args) {
      args.push_back(rebuild(a));
      changed |= args.back() != a;
    }
    ExprPtr out = e;
    if (changed) {
      if (e->op == Op::kMux) {
        out = fold_mux(args[0], args[1], args[2]);
      } else if (e->op == Op::kLogAnd) {
        out = fold_and(args[0], args[1]);
      } else if (e->op == Op::kLogOr) {
        out = fold_or(args[0], args[1]);
      } else if (e->op == Op::kLogNot) {
        out = fold_not(args[0]);
      } else {
        auto copy = std::make_shared<Expr>(*e);
        copy->args = std::move(args);
        bool all_const = !is_temporal(copy->op);
        for (const auto& a : copy->args) all_const &= a->op == Op::kConst;
        if (all_const) {
          struct NoRefs : ValueEnv {
            std::uint64_t ref(const Expr&) const override { return 0; }
          };
          out = make_const(evaluate(*copy, NoRefs{}), copy->width, copy->loc);
        } else {
          out = copy;
        }
      }
    }
    memo_[e.get()] = out;
    return out;
  }

  ExprPtr inline_net(const std::string& name) {
    auto done = inlined_.find(name);
    if (done != inlined_.end()) return done->second;
    auto on = std::find(visiting_.begin(), visiting_.end(), name);
    if (on != visiting_.end()) {
      std::vector<std::string> cycle(on, visiting_.end());
      cycle.push_back(name);
      throw ExprError(DiagCode::kCombCycle, {}, "combinational cycle: " + join_names(cycle));
    }
    Net& n = nets_.at(name);
    if (n.kind == NetKind::kUndriven) {
      inlined_[name] = make_const(0, n.width);
      return inlined_[name];
    }
    visiting_.push_back(name);
    ExprPtr v = rebuild(n.def);
    visiting_.pop_back();
    inlined_[name] = v;
    return v;
  }

  static std::string join_names(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += " -> ";
      out += v[i];
    }
    return out;
  }

  std::optional<NetModel> finish() {
    NetModel net;
    net.top = top_;
    net.clock = clock_;
    const ModuleAst* tm = model_.ast->find(top_);
    for (const auto& name : order_) {
      const Net& n = nets_.at(name);
      if (n.kind == NetKind::kUndriven) {
        bool top_input = false;
        for (const auto& p : tm->ports) top_input |= top_ + "." + p.name == name && p.dir == PortDir::kInput;
        if (!top_input) warning(*tm, DiagCode::kSyntax, {}, "'" + name + "' is never driven; tied to 0");
      }
    }
    try {
      for (const auto& name : order_) {
        const Net& n = nets_.at(name);
        if (n.kind == NetKind::kInput) {
          if (name != clock_) net.inputs.emplace_back(name, n.width);
        } else if (n.kind == NetKind::kState) {
          net.state_bits.emplace_back(name, n.width);
          net.init[name] = n.init;
        }
      }
      for (const auto& name : order_) {
        const Net& n = nets_.at(name);
        if (n.kind == NetKind::kState) net.next_state[name] = rebuild(n.def);
      }
      for (const auto& name : order_) {
        const Net& n = nets_.at(name);
        if (n.kind == NetKind::kComb || n.kind == NetKind::kUndriven) net.comb[name] = inline_net(name);
      }
      for (const auto& s : model_.statements) {
        auto it = guards_.find(s.id);
        net.statement_guards[s.id] = it == guards_.end() ? make_const(0, 1) : rebuild(it->second);
      }
    } catch (const ExprError& e) {
      error(*tm, e.code(), e.loc(), e.what());
      return std::nullopt;
    }
    if (!clock_.empty()) {
      auto uses_clock = [&](const ExprPtr& e) {
        auto names = referenced_names(*e);
        return std::find(names.begin(), names.end(), clock_) != names.end();
      };
      for (const auto& [name, e] : net.next_state) {
        if (uses_clock(e)) {
          error(*tm, DiagCode::kUnsupported, {}, "clock '" + clock_ + "' used as data in '" + name + "'");
          return std::nullopt;
        }
      }
      for (const auto& [id, e] : net.statement_guards) {
        if (uses_clock(e)) {
          error(*tm, DiagCode::kUnsupported, {}, "clock '" + clock_ + "' used as data in " + id);
          return std::nullopt;
        }
      }
      for (auto it = net.comb.begin(); it != net.comb.end();) {
        it = uses_clock(it->second) ? net.comb.erase(it) : std::next(it);
      }
    }
    auto by_name = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(net.inputs.begin(), net.inputs.end(), by_name);
    std::sort(net.state_bits.begin(), net.state_bits.end(), by_name);
    return net;
  }

  const DesignModel& model_;
  Diagnostics& diags_;
  std::string top_;
  std::string clock_;
  std::map<std::string, Net> nets_;
  std::vector<std::string> order_;
  std::map<std::string, ExprPtr> guards_;
  std::vector<std::string> stack_;
  bool clocked_ = false;
  const Ctx* ctx_ = nullptr;
  std::unordered_map<const Expr*, ExprPtr> memo_;
  std::map<std::string, ExprPtr> inlined_;
  std::vector<std::string> visiting_;
};

}  // namespace

std::vector<std::pair<std::string, int>> NetModel::signal_paths() const {
  std::vector<std::pair<std::string, int>> out;
  if (!clock.empty()) out.emplace_back(clock, 1);
  out.insert(out.end(), inputs.begin(), inputs.end());
  out.insert(out.end(), state_bits.begin(), state_bits.end());
  for (const auto& [name, e] : comb) out.emplace_back(name, e->width);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> NetModel::width_of(std::string_view name) const {
  if (name == clock && !clock.empty()) return 1;
  for (const auto& [n, w] : inputs) {
    if (n == name) return w;
  }
  for (const auto& [n, w] : state_bits) {
    if (n == name) return w;
  }
  auto it = comb.find(std::string(name));
  if (it != comb.end()) return it->second->width;
  return std::nullopt;
}

bool NetModel::is_state(std::string_view name) const {
  return std::any_of(state_bits.begin(), state_bits.end(), [&](const auto& s) { return s.first == name; });
}

bool NetModel::is_input(std::string_view name) const {
  return std::any_of(inputs.begin(), inputs.end(), [&](const auto& s) { return s.first == name; });
}

ParseResult<NetModel> elaborate(const DesignModel& m, const std::string& top,
                                const std::map<std::string, std::int64_t>& overrides) {
  ParseResult<NetModel> out;
  DesignModel copy;
  const DesignModel* model = &m;
  if (!m.ast) {
    copy = m;
    ensure_ast(copy);
    model = &copy;
  }
  if (!model->ast) {
    out.diags.error(DiagCode::kSyntax, {}, "design model carries no RTL source");
    return out;
  }
  Elaborator e(*model, out.diags);
  out.value = e.run(top, overrides);
  if (out.diags.has_errors()) out.value.reset();
  return out;
}

void attach_elaboration(DesignModel& m, const NetModel& net) {
  m.top = net.top;
  m.signal_paths = net.signal_paths();
}

}  // namespace kgv::rtl
