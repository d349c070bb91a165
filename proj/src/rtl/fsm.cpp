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

#include "kgv/expr/typing.hpp"
#include "kgv/rtl/design.hpp"

namespace kgv::rtl {
namespace {

struct Candidate {
  int decl_line = 0;
  bool rejected = false;
  bool compared = false;
  std::set<std::string> constants;
  std::set<int> lines;
};

class FsmScan {
 public:
  explicit FsmScan(const ModuleAst& m) : m_(m) {
    for (const auto& p : m.params) {
      if (p.local) localparams_.insert(p.name);
    }
    for (const auto& p : m.ports) {
      if (p.is_reg) regs_[p.name].decl_line = p.loc.line;
    }
    for (const auto& n : m.nets) {
      if (n.is_reg) regs_[n.name].decl_line = n.loc.line;
    }
  }

  std::vector<FsmDesc> run() {
    for (const auto& a : m_.assigns) {
      assigned(a.lhs, a.rhs, a.loc.line);
      expr(a.rhs);
    }
    for (const auto& a : m_.always) stmt(a.body);
    for (const auto& inst : m_.instances) {
      for (const auto& c : inst.connections) expr(c.expr);
    }
    std::vector<std::pair<std::string, const Candidate*>> hits;
    for (const auto& [name, c] : regs_) {
      if (!c.rejected && c.compared && !c.lines.empty()) hits.emplace_back(name, &c);
    }
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
      return a.second->decl_line != b.second->decl_line ? a.second->decl_line < b.second->decl_line
                                                        : a.first < b.first;
    });
    std::map<std::string, std::int64_t> values;
    for (const auto& p : m_.params) {
      try {
        Resolver r;
        r.ref = [&](const Expr& e) -> ExprPtr {
          auto it = values.find(e.name);
          if (it == values.end()) return nullptr;
          return make_const(static_cast<std::uint64_t>(it->second), 0);
        };
        ExprPtr v = resolve(p.value, r);
        values[p.name] = v->op == Op::kConst ? static_cast<std::int64_t>(v->value) : 0;
      } catch (const Error&) {
        values[p.name] = 0;
      }
    }
    std::vector<FsmDesc> out;
    for (const auto& [name, c] : hits) {
      FsmDesc d;
      d.module = m_.name;
      d.state_register = name;
      for (const auto& p : m_.params) {
        if (c->constants.count(p.name)) d.encoding.emplace_back(p.name, values[p.name]);
      }
      d.transition_lines.assign(c->lines.begin(), c->lines.end());
      out.push_back(std::move(d));
    }
    return out;
  }

 private:
  Candidate* reg(const ExprPtr& e) {
    if (!e || e->op != Op::kRef) return nullptr;
    auto it = regs_.find(e->name);
    return it == regs_.end() ? nullptr : &it->second;
  }

  bool is_localparam(const ExprPtr& e) const {
    return e && e->op == Op::kRef && localparams_.count(e->name);
  }

  void assigned(const std::string& lhs, const ExprPtr& rhs, int line) {
    auto it = regs_.find(lhs);
    if (it == regs_.end()) return;
    if (is_localparam(rhs)) {
      it->second.constants.insert(rhs->name);
      it->second.lines.insert(line);
    } else {
      it->second.rejected = true;
    }
  }

  void expr(const ExprPtr& e) {
    if (!e) return;
    if (is_comparison(e->op)) {
      for (int side = 0; side < 2; ++side) {
        Candidate* c = reg(e->args[side]);
        if (!c) continue;
        const ExprPtr& other = e->args[1 - side];
        if (is_localparam(other)) {
          c->compared = true;
          c->constants.insert(other->name);
        } else {
          c->rejected = true;
        }
      }
    }
    for (const auto& a : e->args) expr(a);
  }

  void stmt(const StmtPtr& s) {
    if (!s) return;
    switch (s->kind) {
      case Stmt::Kind::kBlock:
        for (const auto& b : s->body) stmt(b);
        break;
      case Stmt::Kind::kIf:
        expr(s->cond);
        stmt(s->then_body);
        stmt(s->else_body);
        break;
      case Stmt::Kind::kCase: {
        expr(s->cond);
        Candidate* c = reg(s->cond);
        for (const auto& item : s->items) {
          for (const auto& l : item.labels) {
            if (c) {
              if (is_localparam(l)) {
                c->compared = true;
                c->constants.insert(l->name);
              } else {
                c->rejected = true;
              }
            }
            expr(l);
          }
          stmt(item.body);
        }
        break;
      }
      case Stmt::Kind::kAssign:
        assigned(s->lhs, s->rhs, s->loc.line);
        expr(s->rhs);
        break;
    }
  }

  const ModuleAst& m_;
  std::set<std::string> localparams_;
  std::map<std::string, Candidate> regs_;
};

}  // namespace

std::vector<FsmDesc> detect_fsms(const DesignModel& m) {
  std::shared_ptr<const DesignAst> ast = m.ast;
  if (!ast) {
    DesignModel copy = m;
    ensure_ast(copy);
    ast = copy.ast;
  }
  std::vector<FsmDesc> out;
  if (!ast) return out;
  for (const auto& mod : ast->modules) {
    auto found = FsmScan(mod).run();
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

}  // namespace kgv::rtl
