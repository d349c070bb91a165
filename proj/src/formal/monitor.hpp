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

#ifndef KGV_FORMAL_MONITOR_HPP_
#define KGV_FORMAL_MONITOR_HPP_

#include <cstdint>
#include <vector>

#include "kgv/sva/bind.hpp"
#include "program.hpp"

namespace kgv::formal::detail {

using Bits = std::vector<std::uint64_t>;

// Nondeterministic automaton for a bounded sequence. A position (j, w) means
// "element j may be placed now, w cycles after element j-1 (or the start)".
class SeqAutomaton {
 public:
  struct Elem {
    int slot = 0;
    int min = 0;
    int max = 0;
  };

  SeqAutomaton() = default;
  SeqAutomaton(std::vector<Elem> elems);

  int words() const { return words_; }
  Bits start() const;
  // Advances `pos` through one cycle. Returns true when the last element is
  // placed; `next` receives positions still waiting after this cycle.
  bool step(const Bits& pos, const std::uint64_t* slots, Bits& next) const;

 private:
  std::vector<Elem> elems_;
  std::vector<int> offset_;
  int npos_ = 0;
  int words_ = 0;
};

struct MonitorEvents {
  bool antecedent_matched = false;
  bool matched = false;  // some obligation completed
  bool failed = false;   // some obligation can no longer complete
};

// Per-property monitor: antecedent threads merged across attempts, one
// position set per pending consequent obligation.
class Monitor {
 public:
  Monitor(const sva::BoundProperty& p, Program& prog);

  // Appends the initial monitor state to `key`.
  void initial(Bits& key) const;
  // Reads the monitor state at key[pos...], writes the successor to `out`.
  MonitorEvents step(const std::uint64_t* key, std::size_t& pos, const std::uint64_t* slots,
                     Bits& out) const;
  // Skips over the monitor state at key[pos...].
  void skip(const std::uint64_t* key, std::size_t& pos) const;

  bool has_implication() const { return implication_; }

 private:
  SeqAutomaton ante_;
  SeqAutomaton cons_;
  int disable_slot_ = -1;
  bool implication_ = false;
};

}  // namespace kgv::formal::detail

#endif  // KGV_FORMAL_MONITOR_HPP_
