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

#include "monitor.hpp"

#include <algorithm>

namespace kgv::formal::detail {
namespace {

bool test(const Bits& b, int i) { return (b[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1; }
void set(Bits& b, int i) { b[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64); }
bool empty(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
}

}  // namespace

SeqAutomaton::SeqAutomaton(std::vector<Elem> elems) : elems_(std::move(elems)) {
  for (const Elem& e : elems_) {
    offset_.push_back(npos_);
    npos_ += e.max + 1;
  }
  words_ = (npos_ + 63) / 64;
}

Bits SeqAutomaton::start() const {
  Bits b(static_cast<std::size_t>(words_), 0);
  set(b, 0);
  return b;
}

bool SeqAutomaton::step(const Bits& pos, const std::uint64_t* slots, Bits& next) const {
  next.assign(static_cast<std::size_t>(words_), 0);
  Bits cur = pos;
  bool matched = false;
  const int last = static_cast<int>(elems_.size()) - 1;
  for (int j = 0; j <= last; ++j) {
    const Elem& e = elems_[static_cast<std::size_t>(j)];
    bool holds = slots[e.slot] != 0;
    for (int w = 0; w <= e.max; ++w) {
      int p = offset_[static_cast<std::size_t>(j)] + w;
      if (!test(cur, p)) continue;
      if (w >= e.min && holds) {
        if (j == last) {
          matched = true;
        } else {
          set(cur, offset_[static_cast<std::size_t>(j + 1)]);
        }
      }
      if (w < e.max) set(next, p + 1);
    }
  }
  return matched;
}

namespace {

std::vector<SeqAutomaton::Elem> compile_seq(const sva::Sequence& s, Program& prog, int extra_delay) {
  std::vector<SeqAutomaton::Elem> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    SeqAutomaton::Elem e;
    e.slot = prog.add_root(s[i].expr);
    e.min = s[i].min_delay + (i == 0 ? extra_delay : 0);
    e.max = s[i].max_delay + (i == 0 ? extra_delay : 0);
    out.push_back(e);
  }
  return out;
}

}  // namespace

Monitor::Monitor(const sva::BoundProperty& p, Program& prog) {
  implication_ = p.has_implication;
  if (p.disable) disable_slot_ = prog.add_root(p.disable);
  if (implication_) {
    ante_ = SeqAutomaton(compile_seq(p.antecedent, prog, 0));
    cons_ = SeqAutomaton(compile_seq(p.consequent, prog, p.overlapped ? 0 : 1));
  } else {
    ante_ = SeqAutomaton({SeqAutomaton::Elem{prog.const_slot(1), 0, 0}});
    cons_ = SeqAutomaton(compile_seq(p.consequent, prog, 0));
  }
}

// Layout: antecedent words, obligation count, obligation words (sorted).
void Monitor::initial(Bits& key) const {
  key.insert(key.end(), static_cast<std::size_t>(ante_.words()), 0);
  key.push_back(0);
}

void Monitor::skip(const std::uint64_t* key, std::size_t& pos) const {
  pos += static_cast<std::size_t>(ante_.words());
  std::uint64_t n = key[pos++];
  pos += static_cast<std::size_t>(n) * static_cast<std::size_t>(cons_.words());
}

MonitorEvents Monitor::step(const std::uint64_t* key, std::size_t& pos, const std::uint64_t* slots,
                            Bits& out) const {
  MonitorEvents ev;
  const auto aw = static_cast<std::size_t>(ante_.words());
  const auto cw = static_cast<std::size_t>(cons_.words());
  Bits ante(key + pos, key + pos + aw);
  pos += aw;
  std::size_t n = static_cast<std::size_t>(key[pos++]);
  std::vector<Bits> obligations;
  obligations.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    obligations.emplace_back(key + pos, key + pos + cw);
    pos += cw;
  }

  bool disabled = disable_slot_ >= 0 && slots[disable_slot_] != 0;
  if (disabled) {
    out.insert(out.end(), aw, 0);
    out.push_back(0);
    return ev;
  }

  set(ante, 0);  // a new attempt starts every cycle
  Bits ante_next;
  if (ante_.step(ante, slots, ante_next)) {
    if (implication_) ev.antecedent_matched = true;
    obligations.push_back(cons_.start());
  }

  std::vector<Bits> kept;
  Bits next;
  for (const Bits& o : obligations) {
    if (cons_.step(o, slots, next)) {
      ev.matched = true;
    } else if (empty(next)) {
      ev.failed = true;
    } else {
      kept.push_back(next);
    }
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  out.insert(out.end(), ante_next.begin(), ante_next.end());
  out.push_back(kept.size());
  for (const Bits& o : kept) out.insert(out.end(), o.begin(), o.end());
  return ev;
}

}  // namespace kgv::formal::detail
