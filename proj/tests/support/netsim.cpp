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

#include "support/netsim.hpp"

#include "kgv/expr/typing.hpp"

namespace kgv::testing {
namespace {

class Env : public ValueEnv {
 public:
  Env(const std::map<std::string, std::uint64_t>& a, const std::map<std::string, std::uint64_t>& b)
      : a_(a), b_(b) {}
  std::uint64_t ref(const Expr& e) const override {
    auto it = a_.find(e.name);
    if (it != a_.end()) return it->second;
    return b_.at(e.name);
  }

 private:
  const std::map<std::string, std::uint64_t>& a_;
  const std::map<std::string, std::uint64_t>& b_;
};

std::string check(const Expr& e) {
  for (const auto& a : e.args) {
    std::string r = check(*a);
    if (!r.empty()) return r;
  }
  auto bad = [&](const std::string& why) { return why + " in " + to_verilog(e); };
  if (e.width <= 0) return bad("unsized node");
  switch (e.op) {
    case Op::kConst:
    case Op::kRef:
      return "";
    case Op::kNot:
      return e.width == e.args[0]->width ? "" : bad("~ width");
    case Op::kLogNot:
      return e.width == 1 ? "" : bad("! width");
    case Op::kLogAnd:
    case Op::kLogOr:
      return e.width == 1 ? "" : bad("logical width");
    case Op::kMux:
      return e.args[0]->width == 1 && e.args[1]->width == e.width && e.args[2]->width == e.width
                 ? ""
                 : bad("mux widths");
    case Op::kConcat: {
      int total = 0;
      for (const auto& a : e.args) total += a->width;
      return total == e.width ? "" : bad("concat width");
    }
    case Op::kSlice:
      return e.width == e.hi - e.lo + 1 && e.hi < e.args[0]->width ? "" : bad("slice width");
    default:
      break;
  }
  if (e.args.size() != 2 || e.args[0]->width != e.args[1]->width) return bad("operand widths differ");
  if (is_comparison(e.op)) return e.width == 1 ? "" : bad("comparison width");
  return e.width == e.args[0]->width ? "" : bad("result width");
}

}  // namespace

NetSim::NetSim(const rtl::NetModel& net) : net_(net) {
  for (const auto& [n, v] : net.init) state_[n] = v;
}

std::set<std::string> NetSim::step(const std::map<std::string, std::uint64_t>& inputs) {
  Env env(state_, inputs);
  std::set<std::string> ran;
  for (const auto& [id, g] : net_.statement_guards) {
    if (evaluate(*g, env)) ran.insert(id);
  }
  std::map<std::string, std::uint64_t> next;
  for (const auto& [n, e] : net_.next_state) next[n] = evaluate(*e, env);
  state_ = std::move(next);
  return ran;
}

std::uint64_t NetSim::comb(const std::string& name, const std::map<std::string, std::uint64_t>& inputs) const {
  Env env(state_, inputs);
  return evaluate(*net_.comb.at(name), env);
}

std::string check_widths(const rtl::NetModel& net) {
  for (const auto& [n, e] : net.next_state) {
    std::string r = check(*e);
    if (!r.empty()) return n + ": " + r;
    auto w = net.width_of(n);
    if (!w || *w != e->width) return n + ": next-state width differs from register";
  }
  for (const auto& [n, e] : net.statement_guards) {
    std::string r = check(*e);
    if (!r.empty()) return n + ": " + r;
    if (e->width != 1) return n + ": guard is not 1 bit";
  }
  for (const auto& [n, e] : net.comb) {
    std::string r = check(*e);
    if (!r.empty()) return n + ": " + r;
  }
  return "";
}

}  // namespace kgv::testing
