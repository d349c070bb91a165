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

#include "kgv/formal/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <thread>
#include <unordered_map>

#include "kgv/base/error.hpp"
#include "kgv/expr/typing.hpp"
#include "monitor.hpp"
#include "program.hpp"

namespace kgv::formal {

using detail::Bits;
using detail::Monitor;
using detail::Program;

namespace {

constexpr int kMaxInputBits = 24;

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ b.size();
    for (std::uint64_t w : b) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

enum class Mode { kAssert, kCover, kReach };

struct Outcome {
  enum Kind { kComplete, kViolation, kWitness, kDepthBudget, kStateBudget } kind = kComplete;
  int depth = 0;  // completed cycles (or the cycle of the violation/witness)
  std::optional<CexTrace> trace;
  bool antecedent_matched = false;
  std::vector<bool> guard_hit;
  std::size_t states = 0;
};

// Product of the net, the assumption monitors and an optional target
// monitor, explored breadth first with inputs in ascending order.
class Explorer {
 public:
  Explorer(const rtl::NetModel& net, const CheckConfig& cfg, const sva::BoundProperty* target,
           Mode mode)
      : net_(net), cfg_(cfg), prog_(net), mode_(mode) {
    for (const auto& [name, w] : net.state_bits) next_slots_.push_back(prog_.add_root(net.next_state.at(name)));
    for (const auto& a : cfg.input_assumptions) assumptions_.emplace_back(a, prog_);
    if (target) target_ = std::make_unique<Monitor>(*target, prog_);
    if (mode == Mode::kReach) {
      for (const auto& [id, g] : net.statement_guards) {
        guard_ids_.push_back(id);
        guard_slots_.push_back(prog_.add_root(g));
      }
    }
    for (const auto& [name, w] : net.inputs) input_bits_ += w;
    if (input_bits_ > kMaxInputBits) {
      throw Error("design has " + std::to_string(input_bits_) + " input bits; at most " +
                  std::to_string(kMaxInputBits) + " can be enumerated");
    }
  }

  Outcome run() {
    Outcome out;
    out.guard_hit.assign(guard_slots_.size(), false);
    Bits init;
    for (const auto& [name, w] : net_.state_bits) {
      auto it = net_.init.find(name);
      init.push_back(it == net_.init.end() ? 0 : it->second & width_mask(w));
    }
    init.insert(init.end(), static_cast<std::size_t>(prog_.history_size()), 0);
    for (const auto& m : assumptions_) m.initial(init);
    if (target_) target_->initial(init);
    add_state(std::move(init), -1, 0);

    std::vector<std::uint64_t> slots(static_cast<std::size_t>(prog_.num_slots()), 0);
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(prog_.history_size()), 0);
    const std::uint64_t n_inputs = std::uint64_t{1} << input_bits_;
    const std::size_t n_state = net_.state_bits.size();
    const auto hsize = static_cast<std::size_t>(prog_.history_size());

    std::size_t level_begin = 0;
    for (int level = 0;; ++level) {
      std::size_t level_end = keys_.size();
      if (level_begin == level_end) {
        out.kind = Outcome::kComplete;
        out.depth = level;
        break;
      }
      if (level >= cfg_.max_depth) {
        out.kind = Outcome::kDepthBudget;
        out.depth = level;
        break;
      }
      bool state_budget = false;
      for (std::size_t si = level_begin; si < level_end && !state_budget; ++si) {
        for (std::uint64_t v = 0; v < n_inputs; ++v) {
          const Bits& key = keys_[si];
          for (std::size_t i = 0; i < n_state; ++i) slots[i] = key[i];
          set_inputs(v, slots.data() + n_state);
          std::copy(key.begin() + static_cast<std::ptrdiff_t>(n_state),
                    key.begin() + static_cast<std::ptrdiff_t>(n_state + hsize), hist.begin());
          prog_.run(slots.data(), hist.data());

          Bits next;
          next.reserve(key.size() + 8);
          for (std::size_t i = 0; i < n_state; ++i) {
            next.push_back(slots[static_cast<std::size_t>(next_slots_[i])] &
                           width_mask(net_.state_bits[i].second));
          }
          prog_.advance_history(slots.data(), hist.data());
          next.insert(next.end(), hist.begin(), hist.end());
          std::size_t pos = n_state + hsize;
          bool pruned = false;
          for (const auto& m : assumptions_) {
            if (m.step(key.data(), pos, slots.data(), next).failed) pruned = true;
          }
          if (pruned) continue;
          if (mode_ == Mode::kReach) {
            for (std::size_t g = 0; g < guard_slots_.size(); ++g) {
              if (slots[static_cast<std::size_t>(guard_slots_[g])]) out.guard_hit[g] = true;
            }
          }
          if (target_) {
            auto ev = target_->step(key.data(), pos, slots.data(), next);
            if (ev.antecedent_matched) out.antecedent_matched = true;
            if (mode_ == Mode::kAssert && ev.failed) {
              out.kind = Outcome::kViolation;
              out.depth = level;
              out.trace = build_trace(si, v, level);
              out.states = keys_.size();
              return out;
            }
            if (mode_ == Mode::kCover && ev.matched) {
              out.kind = Outcome::kWitness;
              out.depth = level;
              out.trace = build_trace(si, v, level);
              out.states = keys_.size();
              return out;
            }
          }
          if (index_.count(next)) continue;
          if (keys_.size() >= cfg_.max_states) {
            state_budget = true;
            break;
          }
          add_state(std::move(next), static_cast<std::int64_t>(si), v);
        }
      }
      if (state_budget) {
        out.kind = Outcome::kStateBudget;
        out.depth = level;
        break;
      }
      level_begin = level_end;
    }
    out.states = keys_.size();
    return out;
  }

  const std::vector<std::string>& guard_ids() const { return guard_ids_; }

 private:
  void add_state(Bits key, std::int64_t parent, std::uint64_t input) {
    index_.emplace(key, keys_.size());
    keys_.push_back(std::move(key));
    parent_.push_back(parent);
    parent_input_.push_back(input);
  }

  // Input 0 in name order occupies the most significant bits, so ascending
  // v is lexicographic over the sorted inputs.
  void set_inputs(std::uint64_t v, std::uint64_t* out) const {
    int shift = input_bits_;
    for (std::size_t i = 0; i < net_.inputs.size(); ++i) {
      int w = net_.inputs[i].second;
      shift -= w;
      out[i] = (v >> shift) & width_mask(w);
    }
  }

  Valuation input_valuation(std::uint64_t v) const {
    std::vector<std::uint64_t> vals(net_.inputs.size());
    set_inputs(v, vals.data());
    Valuation out;
    for (std::size_t i = 0; i < net_.inputs.size(); ++i) out[net_.inputs[i].first] = vals[i];
    return out;
  }

  CexTrace build_trace(std::size_t si, std::uint64_t v, int level) const {
    std::vector<std::pair<std::size_t, std::uint64_t>> path;
    path.emplace_back(si, v);
    for (std::int64_t p = static_cast<std::int64_t>(si); parent_[static_cast<std::size_t>(p)] >= 0;
         p = parent_[static_cast<std::size_t>(p)]) {
      path.emplace_back(static_cast<std::size_t>(parent_[static_cast<std::size_t>(p)]),
                        parent_input_[static_cast<std::size_t>(p)]);
    }
    std::reverse(path.begin(), path.end());
    CexTrace t;
    for (const auto& [state_index, input] : path) {
      TraceCycle c;
      c.inputs = input_valuation(input);
      const Bits& key = keys_[state_index];
      for (std::size_t i = 0; i < net_.state_bits.size(); ++i) c.state[net_.state_bits[i].first] = key[i];
      t.cycles.push_back(std::move(c));
    }
    t.failure_cycle = level;
    return t;
  }

  const rtl::NetModel& net_;
  const CheckConfig& cfg_;
  Program prog_;
  Mode mode_;
  std::vector<int> next_slots_;
  std::vector<Monitor> assumptions_;
  std::unique_ptr<Monitor> target_;
  std::vector<std::string> guard_ids_;
  std::vector<int> guard_slots_;
  int input_bits_ = 0;

  std::vector<Bits> keys_;
  std::vector<std::int64_t> parent_;
  std::vector<std::uint64_t> parent_input_;
  std::unordered_map<Bits, std::size_t, BitsHash> index_;
};

void validate_config(const CheckConfig& cfg) {
  if (cfg.max_states == 0) throw Error("max_states must be positive");
  if (cfg.max_depth <= 0) throw Error("max_depth must be positive");
}

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
      .count();
}

CheckResult error_result(const sva::BoundProperty& p, std::string message) {
  CheckResult r;
  r.result.prop_id = p.prop_id;
  r.result.status = ir::FormalStatus::kError;
  r.result.message = std::move(message);
  return r;
}

std::optional<std::string> clock_problem(const rtl::NetModel& net, const sva::BoundProperty& p) {
  if (!p.clock.empty() && p.clock != net.clock) {
    return "property clock '" + p.clock + "' is not the design clock '" + net.clock + "'";
  }
  return std::nullopt;
}

}  // namespace

CheckResult check(const rtl::NetModel& net, const sva::BoundProperty& p, const CheckConfig& cfg) {
  validate_config(cfg);
  if (p.kind == sva::PropKind::kCover) throw Error("check: " + p.prop_id + " is a cover");
  if (auto why = clock_problem(net, p)) return error_result(p, *why);
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    Explorer ex(net, cfg, &p, Mode::kAssert);
    o = ex.run();
  } catch (const Error& e) {
    return error_result(p, e.what());
  }
  CheckResult r;
  r.result.prop_id = p.prop_id;
  r.antecedent_matched = o.antecedent_matched;
  r.states_explored = o.states;
  switch (o.kind) {
    case Outcome::kViolation:
      r.result.status = ir::FormalStatus::kCex;
      r.result.proof_depth = o.depth;
      r.trace = std::move(o.trace);
      r.trace->prop_id = p.prop_id;
      r.trace->violated_at_line = p.line;
      r.result.message = "violated at cycle " + std::to_string(o.depth);
      break;
    case Outcome::kComplete:
      r.result.proof_depth = o.depth;
      if (p.has_implication && !o.antecedent_matched) {
        r.result.status = ir::FormalStatus::kVacuous;
        r.result.message = "antecedent never matched on any reachable path";
      } else {
        r.result.status = ir::FormalStatus::kProven;
      }
      break;
    case Outcome::kDepthBudget:
    case Outcome::kStateBudget:
      r.result.status = ir::FormalStatus::kBounded;
      r.result.proof_depth = o.depth;
      r.result.message = o.kind == Outcome::kDepthBudget ? "depth budget exhausted"
                                                         : "state budget exhausted";
      break;
    case Outcome::kWitness:
      break;
  }
  if (cfg.measure_runtime) r.result.runtime_ms = elapsed_ms(t0);
  return r;
}

CheckResult check_cover(const rtl::NetModel& net, const sva::BoundProperty& p,
                        const CheckConfig& cfg) {
  validate_config(cfg);
  if (p.kind != sva::PropKind::kCover) throw Error("check_cover: " + p.prop_id + " is not a cover");
  if (auto why = clock_problem(net, p)) return error_result(p, *why);
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    Explorer ex(net, cfg, &p, Mode::kCover);
    o = ex.run();
  } catch (const Error& e) {
    return error_result(p, e.what());
  }
  CheckResult r;
  r.result.prop_id = p.prop_id;
  r.antecedent_matched = o.antecedent_matched;
  r.states_explored = o.states;
  r.result.proof_depth = o.depth;
  switch (o.kind) {
    case Outcome::kWitness:
      r.result.status = ir::FormalStatus::kProven;
      r.trace = std::move(o.trace);
      r.trace->prop_id = p.prop_id;
      r.trace->violated_at_line = p.line;
      r.result.message = "covered at cycle " + std::to_string(o.depth);
      break;
    case Outcome::kComplete:
      r.result.status = ir::FormalStatus::kVacuous;
      r.result.message = "cover unreachable";
      break;
    default:
      r.result.status = ir::FormalStatus::kBounded;
      r.result.message = o.kind == Outcome::kDepthBudget ? "depth budget exhausted"
                                                         : "state budget exhausted";
      break;
  }
  if (cfg.measure_runtime) r.result.runtime_ms = elapsed_ms(t0);
  return r;
}

std::vector<CheckResult> check_all(const rtl::NetModel& net,
                                   const std::vector<sva::BoundProperty>& props,
                                   const CheckConfig& cfg, unsigned threads) {
  std::vector<const sva::BoundProperty*> order;
  for (const auto& p : props) order.push_back(&p);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return sva::id_less(a->prop_id, b->prop_id);
  });
  std::vector<CheckResult> out(order.size());
  auto run_one = [&](std::size_t i) {
    const auto& p = *order[i];
    out[i] = p.kind == sva::PropKind::kCover ? check_cover(net, p, cfg) : check(net, p, cfg);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(order.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < order.size(); ++i) run_one(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < order.size(); i = next++) run_one(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

Reachability statement_reachability(const rtl::NetModel& net, const CheckConfig& cfg) {
  validate_config(cfg);
  Explorer ex(net, cfg, nullptr, Mode::kReach);
  Outcome o = ex.run();
  Reachability r;
  r.partial = o.kind != Outcome::kComplete;
  r.states_explored = o.states;
  for (std::size_t i = 0; i < ex.guard_ids().size(); ++i) {
    (o.guard_hit[i] ? r.covered : r.unreachable).push_back(ex.guard_ids()[i]);
  }
  auto by_number = [](const std::string& a, const std::string& b) { return sva::id_less(a, b); };
  std::sort(r.covered.begin(), r.covered.end(), by_number);
  std::sort(r.unreachable.begin(), r.unreachable.end(), by_number);
  return r;
}

double reachable_pct(std::size_t covered, std::size_t unreachable) {
  std::size_t total = covered + unreachable;
  if (total == 0) return 100.0;
  return 100.0 * static_cast<double>(covered) / static_cast<double>(total);
}

ir::CoverageMetrics coverage_metrics(const Reachability& r, int vacuity_count) {
  ir::CoverageMetrics m;
  m.covered_statements = r.covered;
  m.unreachable_statements = r.unreachable;
  m.reachable_pct = reachable_pct(r.covered.size(), r.unreachable.size());
  for (const auto& id : r.unreachable) m.dead_code.push_back({id, ir::DeadCodeClass::kGap});
  m.vacuity_count = vacuity_count;
  m.partial = r.partial;
  return m;
}

ir::CoverageMetrics coverage(const rtl::NetModel& net, const std::vector<sva::BoundProperty>& props,
                             const CheckConfig& cfg) {
  Reachability r = statement_reachability(net, cfg);
  int vacuous = 0;
  for (const auto& p : props) {
    if (p.kind != sva::PropKind::kAssertion) continue;
    if (check(net, p, cfg).result.status == ir::FormalStatus::kVacuous) ++vacuous;
  }
  return coverage_metrics(r, vacuous);
}

namespace {

class NetEnv : public ValueEnv {
 public:
  NetEnv(const rtl::NetModel& net, const TraceCycle& c) : net_(net), c_(c) {}
  std::uint64_t ref(const Expr& e) const override {
    if (auto it = c_.state.find(e.name); it != c_.state.end()) return it->second;
    if (auto it = c_.inputs.find(e.name); it != c_.inputs.end()) return it->second;
    if (auto it = net_.comb.find(e.name); it != net_.comb.end()) return evaluate(*it->second, *this);
    throw Error("unknown signal '" + e.name + "' in trace");
  }

 private:
  const rtl::NetModel& net_;
  const TraceCycle& c_;
};

}  // namespace

bool replay_consistent(const rtl::NetModel& net, const CexTrace& trace, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (trace.cycles.empty()) return fail("empty trace");
  if (trace.failure_cycle != static_cast<int>(trace.cycles.size()) - 1) {
    return fail("failure cycle is not the last cycle");
  }
  for (const auto& [name, w] : net.state_bits) {
    auto it = net.init.find(name);
    std::uint64_t init = it == net.init.end() ? 0 : it->second;
    auto got = trace.cycles[0].state.find(name);
    if (got == trace.cycles[0].state.end() || got->second != init) {
      return fail("cycle 0: " + name + " differs from its initial value");
    }
  }
  for (std::size_t k = 0; k < trace.cycles.size(); ++k) {
    const TraceCycle& c = trace.cycles[k];
    for (const auto& [name, w] : net.inputs) {
      auto it = c.inputs.find(name);
      if (it == c.inputs.end()) return fail("cycle " + std::to_string(k) + ": missing input " + name);
      if (it->second > width_mask(w)) return fail("cycle " + std::to_string(k) + ": " + name + " too wide");
    }
    if (k + 1 == trace.cycles.size()) break;
    NetEnv env(net, c);
    for (const auto& [name, w] : net.state_bits) {
      std::uint64_t expect = evaluate(*net.next_state.at(name), env) & width_mask(w);
      auto got = trace.cycles[k + 1].state.find(name);
      if (got == trace.cycles[k + 1].state.end() || got->second != expect) {
        return fail("cycle " + std::to_string(k + 1) + ": " + name + " does not follow the design");
      }
    }
  }
  return true;
}

std::vector<Valuation> expand_trace(const rtl::NetModel& net, const CexTrace& trace) {
  std::vector<Valuation> out;
  for (const auto& c : trace.cycles) {
    Valuation v = c.state;
    for (const auto& [k, x] : c.inputs) v[k] = x;
    NetEnv env(net, c);
    for (const auto& [name, e] : net.comb) v[name] = evaluate(*e, env) & width_mask(e->width);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace kgv::formal
