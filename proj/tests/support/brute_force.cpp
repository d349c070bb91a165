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

#include "support/brute_force.hpp"

#include <functional>

#include "kgv/base/error.hpp"
#include "kgv/expr/typing.hpp"

namespace kgv::testing {
namespace {

class CycleEnv : public ValueEnv {
 public:
  CycleEnv(const TraceEval& ev, const rtl::NetModel& net, const formal::TraceCycle& c, int k)
      : ev_(ev), net_(net), c_(c), k_(k) {}

  std::uint64_t ref(const Expr& e) const override {
    if (auto it = c_.state.find(e.name); it != c_.state.end()) return it->second;
    if (auto it = c_.inputs.find(e.name); it != c_.inputs.end()) return it->second;
    if (auto it = net_.comb.find(e.name); it != net_.comb.end()) return evaluate(*it->second, *this);
    throw Error("oracle: unknown signal " + e.name);
  }

  std::uint64_t temporal(const Expr& e) const override {
    const Expr& a = *e.args[0];
    auto at = [&](int j) -> std::uint64_t { return j < 0 ? 0 : ev_.value(a, j); };
    switch (e.op) {
      case Op::kPast:
        return at(k_ - e.hi);
      case Op::kRose:
        return (at(k_) & 1) && !(at(k_ - 1) & 1);
      case Op::kFell:
        return !(at(k_) & 1) && (at(k_ - 1) & 1);
      default:
        return at(k_) == at(k_ - 1);
    }
  }

 private:
  const TraceEval& ev_;
  const rtl::NetModel& net_;
  const formal::TraceCycle& c_;
  int k_;
};

int span_of(const sva::Sequence& s) {
  int n = 0;
  for (const auto& e : s) n += e.max_delay;
  return n;
}

}  // namespace

std::uint64_t TraceEval::value(const Expr& e, int k) const {
  CycleEnv env(*this, net_, cycles_.at(static_cast<std::size_t>(k)), k);
  return evaluate(e, env);
}

void TraceEval::place(const sva::Sequence& s, std::size_t j, int prev, int limit,
                      std::set<int>& out) const {
  for (int c = prev + s[j].min_delay; c <= prev + s[j].max_delay && c <= limit; ++c) {
    if (!holds(s[j].expr, c)) continue;
    if (j + 1 == s.size()) {
      out.insert(c);
    } else {
      place(s, j + 1, c, limit, out);
    }
  }
}

std::set<int> TraceEval::ends(const sva::Sequence& s, int start, int limit) const {
  std::set<int> out;
  place(s, 0, start, limit, out);
  return out;
}

bool TraceEval::alive_from(const sva::Sequence& s, std::size_t j, int prev, int k) const {
  if (prev + s[j].max_delay > k) return true;
  if (j + 1 == s.size()) return false;
  for (int c = prev + s[j].min_delay; c <= prev + s[j].max_delay && c <= k; ++c) {
    if (holds(s[j].expr, c) && alive_from(s, j + 1, c, k)) return true;
  }
  return false;
}

bool TraceEval::alive(const sva::Sequence& s, int start, int k) const { return alive_from(s, 0, start, k); }

bool TraceEval::disabled_in(const sva::BoundProperty& p, int from, int to) const {
  if (!p.disable) return false;
  for (int c = from; c <= to; ++c) {
    if (holds(p.disable, c)) return true;
  }
  return false;
}

sva::Sequence antecedent_of(const sva::BoundProperty& p) {
  if (p.has_implication) return p.antecedent;
  return {sva::SeqElem{0, 0, make_const(1, 1)}};
}

sva::Sequence consequent_of(const sva::BoundProperty& p) {
  sva::Sequence c = p.consequent;
  if (p.has_implication && !p.overlapped) {
    c[0].min_delay += 1;
    c[0].max_delay += 1;
  }
  return c;
}

bool TraceEval::violated_at(const sva::BoundProperty& p, int k) const {
  sva::Sequence a = antecedent_of(p);
  sva::Sequence c = consequent_of(p);
  int span = span_of(a) + span_of(c);
  for (int t = std::max(0, k - span); t <= k; ++t) {
    if (disabled_in(p, t, k)) continue;
    for (int e : ends(a, t, k)) {
      if (ends(c, e, k).empty() && !alive(c, e, k)) return true;
    }
  }
  return false;
}

bool TraceEval::antecedent_at(const sva::BoundProperty& p, int k) const {
  if (!p.has_implication) return false;
  int span = span_of(p.antecedent);
  for (int t = std::max(0, k - span); t <= k; ++t) {
    if (disabled_in(p, t, k)) continue;
    if (ends(p.antecedent, t, k).count(k)) return true;
  }
  return false;
}

bool TraceEval::covered_at(const sva::BoundProperty& p, int k) const {
  sva::Sequence a = antecedent_of(p);
  sva::Sequence c = consequent_of(p);
  int span = span_of(a) + span_of(c);
  for (int t = std::max(0, k - span); t <= k; ++t) {
    if (disabled_in(p, t, k)) continue;
    for (int e : ends(a, t, k)) {
      if (ends(c, e, k).count(k)) return true;
    }
  }
  return false;
}

BruteForceResult brute_force(const rtl::NetModel& net, const sva::BoundProperty* target,
                             const std::vector<sva::BoundProperty>& assumptions, int depth) {
  BruteForceResult r;
  std::vector<formal::TraceCycle> cycles(static_cast<std::size_t>(depth));
  TraceEval ev(net, cycles);
  int input_bits = 0;
  for (const auto& [n, w] : net.inputs) input_bits += w;
  const std::uint64_t n_inputs = std::uint64_t{1} << input_bits;

  std::function<void(int)> dfs = [&](int k) {
    if (k == depth) {
      ++r.sequences;
      return;
    }
    auto& c = cycles[static_cast<std::size_t>(k)];
    if (k == 0) {
      c.state.clear();
      for (const auto& [name, w] : net.state_bits) {
        auto it = net.init.find(name);
        c.state[name] = it == net.init.end() ? 0 : it->second;
      }
    } else {
      const auto& prev = cycles[static_cast<std::size_t>(k - 1)];
      c.state.clear();
      for (const auto& [name, w] : net.state_bits) {
        c.state[name] = ev.value(*net.next_state.at(name), k - 1) & width_mask(w);
      }
      (void)prev;
    }
    for (std::uint64_t v = 0; v < n_inputs; ++v) {
      int shift = input_bits;
      for (const auto& [name, w] : net.inputs) {
        shift -= w;
        c.inputs[name] = (v >> shift) & width_mask(w);
      }
      bool pruned = false;
      for (const auto& a : assumptions) {
        if (ev.violated_at(a, k)) pruned = true;
      }
      if (pruned) {
        ++r.sequences;
        continue;
      }
      for (const auto& [id, g] : net.statement_guards) {
        if (ev.holds(g, k)) r.covered_statements.insert(id);
      }
      if (target) {
        if (ev.antecedent_at(*target, k)) r.antecedent_seen = true;
        if (target->kind == sva::PropKind::kCover) {
          if (ev.covered_at(*target, k)) {
            if (!r.first_cover || k < *r.first_cover) r.first_cover = k;
            ++r.sequences;
            continue;
          }
        } else if (ev.violated_at(*target, k)) {
          if (!r.first_violation || k < *r.first_violation) r.first_violation = k;
          ++r.sequences;
          continue;
        }
      }
      // The state of cycle k+1 is recomputed from these inputs on entry.
      dfs(k + 1);
    }
  };
  if (depth > 0) dfs(0);
  return r;
}

bool trace_shows(const rtl::NetModel& net, const sva::BoundProperty& p, const formal::CexTrace& t,
                 const std::vector<sva::BoundProperty>& assumptions, std::string* why) {
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  if (!formal::replay_consistent(net, t, why)) return false;
  TraceEval ev(net, t.cycles);
  int last = static_cast<int>(t.cycles.size()) - 1;
  for (int k = 0; k <= last; ++k) {
    for (const auto& a : assumptions) {
      if (ev.violated_at(a, k)) return fail("assumption violated at cycle " + std::to_string(k));
    }
    bool hit = p.kind == sva::PropKind::kCover ? ev.covered_at(p, k) : ev.violated_at(p, k);
    if (hit != (k == last)) {
      return fail(std::string(hit ? "decided early" : "not decided") + " at cycle " + std::to_string(k));
    }
  }
  return true;
}

}  // namespace kgv::testing
