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

#include "kgv/agents/propfile.hpp"

#include <algorithm>
#include <sstream>

#include "kgv/base/text.hpp"

namespace kgv::agents {

namespace {

std::string clock_name(const std::string& c) {
  std::string s = trim(c);
  if (starts_with(s, "posedge ")) s = trim(s.substr(8));
  return s;
}

std::string preamble(const ir::PropertySet& set, int& line) {
  std::ostringstream o;
  o << "// kgverify property file\n";
  line = 1;
  for (const auto& m : set.macros) {
    o << "`define " << m.name;
    if (!m.text.empty()) o << ' ' << m.text;
    o << '\n';
    ++line;
  }
  if (!set.default_clock.empty()) {
    o << "default clocking @(posedge " << clock_name(set.default_clock) << "); endclocking\n";
    ++line;
  }
  return o.str();
}

Compiled compile_source(const std::string& source, const DesignView& dv) {
  Compiled c;
  sva::ParseOptions opt;
  opt.require_clock = false;
  auto parsed = sva::parse_properties(source, opt);
  c.parse = parsed.diags;
  if (!parsed.ok()) return c;
  c.file = std::move(*parsed.value);
  auto b = sva::bind(*c.file, dv.design, dv.net, dv.index);
  c.bind = std::move(b.errors);
  c.bound = std::move(b.bound);
  return c;
}

}  // namespace

std::string assemble(ir::PropertySet& set) {
  int line = 0;
  std::string out = preamble(set, line);
  std::vector<ir::PropertyRecord*> order;
  for (auto& p : set.properties) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return sva::id_less(a->prop_id, b->prop_id); });
  for (auto* p : order) {
    auto lines = split(p->sva_text, '\n');
    while (lines.size() > 1 && trim(lines.back()).empty()) lines.pop_back();
    const int first = line + 1;
    for (const auto& l : lines) {
      out += (p->status == ir::PropStatus::kDisabled ? "// disabled: " : "") + l + "\n";
      ++line;
    }
    p->line_span = {first, line};
  }
  return out;
}

std::string Compiled::describe() const {
  std::vector<std::string> out;
  for (const auto& d : parse.items()) {
    if (d.severity == Severity::kError) out.push_back(format_diagnostic("properties", d));
  }
  for (const auto& e : bind) out.push_back(std::string(sva::to_string(e.kind)) + ": " + e.message);
  return join(out, "\n");
}

Compiled compile_text(const ir::PropertySet& set, const std::string& text, const DesignView& dv) {
  int line = 0;
  return compile_source(preamble(set, line) + text + "\n", dv);
}

Compiled compile_set(const ir::PropertySet& set, const DesignView& dv,
                     const std::function<bool(const ir::PropertyRecord&)>& keep) {
  ir::PropertySet sub = set;
  sub.properties.clear();
  for (const auto& p : set.properties) {
    if (p.status != ir::PropStatus::kActive) continue;
    if (keep && !keep(p)) continue;
    sub.properties.push_back(p);
  }
  return compile_source(assemble(sub), dv);
}

std::string next_prop_id(const ir::PropertySet& set) {
  int n = 0;
  for (const auto& p : set.properties) {
    if (!starts_with(p.prop_id, "PROP-")) continue;
    try {
      n = std::max(n, std::stoi(p.prop_id.substr(5)));
    } catch (const std::exception&) {
    }
  }
  return make_id("PROP", n + 1);
}

ExprPtr replace_ref(const ExprPtr& e, const std::string& from, const ExprPtr& to) {
  if (!e) return e;
  if (e->op == Op::kRef && e->name == from) return to;
  bool changed = false;
  std::vector<ExprPtr> args;
  for (const auto& a : e->args) {
    args.push_back(replace_ref(a, from, to));
    changed = changed || args.back() != a;
  }
  if (!changed) return e;
  auto copy = std::make_shared<Expr>(*e);
  copy->args = std::move(args);
  return copy;
}

sva::PropAst replace_ref(const sva::PropAst& ast, const std::string& from, const ExprPtr& to) {
  sva::PropAst out = ast;
  out.disable = replace_ref(ast.disable, from, to);
  for (auto& s : out.antecedent) s.expr = replace_ref(s.expr, from, to);
  for (auto& s : out.consequent) s.expr = replace_ref(s.expr, from, to);
  return out;
}

std::optional<std::string> unique_candidate(const kg::SignalIndex& idx, const rtl::NetModel& net,
                                            const std::string& ident) {
  std::vector<std::string> tries = {ident};
  for (std::size_t i = 0; i < ident.size(); ++i) {
    if ((ident[i] == '.' || ident[i] == '_') && i + 1 < ident.size()) tries.push_back(ident.substr(i + 1));
  }
  for (const auto& t : tries) {
    if (t.empty() || t.front() == '_' || t.front() == '.') continue;
    std::vector<std::string> known;
    for (const auto& h : kg::resolve_signal(idx, t)) {
      if (net.width_of(h)) known.push_back(h);
    }
    if (known.size() == 1) return known[0];
    if (known.size() > 1) return std::nullopt;
  }
  return std::nullopt;
}

std::string signal_table(const rtl::NetModel& net) {
  std::string out;
  for (const auto& [path, width] : net.signal_paths()) {
    out += path + " " + std::to_string(width);
    if (net.is_input(path)) out += " input";
    out += "\n";
  }
  return out;
}

}  // namespace kgv::agents
