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

#ifndef KGV_TESTS_SUPPORT_BRUTE_FORCE_HPP_
#define KGV_TESTS_SUPPORT_BRUTE_FORCE_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgv/formal/engine.hpp"

namespace kgv::testing {

// Definition-level evaluation of properties over explicit traces, and a
// simulator that tries every input sequence up to a depth.
class TraceEval {
 public:
  TraceEval(const rtl::NetModel& net, const std::vector<formal::TraceCycle>& cycles)
      : net_(net), cycles_(cycles) {}

  std::uint64_t value(const Expr& e, int k) const;
  bool holds(const ExprPtr& e, int k) const { return value(*e, k) != 0; }

  // End cycles <= limit of matches of `s` started at `start`.
  std::set<int> ends(const sva::Sequence& s, int start, int limit) const;
  // Some partial match of `s` from `start` can still be extended after k.
  bool alive(const sva::Sequence& s, int start, int k) const;

  // An attempt of `p` becomes unsatisfiable at cycle k.
  bool violated_at(const sva::BoundProperty& p, int k) const;
  // An antecedent match of `p` completes at k (implications only).
  bool antecedent_at(const sva::BoundProperty& p, int k) const;
  // A cover sequence completes at k.
  bool covered_at(const sva::BoundProperty& p, int k) const;

 private:
  void place(const sva::Sequence& s, std::size_t j, int prev, int limit, std::set<int>& out) const;
  bool alive_from(const sva::Sequence& s, std::size_t j, int prev, int k) const;
  bool disabled_in(const sva::BoundProperty& p, int from, int to) const;

  const rtl::NetModel& net_;
  const std::vector<formal::TraceCycle>& cycles_;
};

sva::Sequence consequent_of(const sva::BoundProperty& p);
sva::Sequence antecedent_of(const sva::BoundProperty& p);

struct BruteForceResult {
  std::optional<int> first_violation;  // assertions
  std::optional<int> first_cover;      // covers
  bool antecedent_seen = false;
  std::set<std::string> covered_statements;
  long long sequences = 0;
};

// Explores all input sequences of `depth` cycles (fewer where an assumption
// fails or the target is decided).
BruteForceResult brute_force(const rtl::NetModel& net, const sva::BoundProperty* target,
                             const std::vector<sva::BoundProperty>& assumptions, int depth);

// Checks the recorded trace violates (or, for covers, satisfies) `p` first at
// its final cycle and never earlier.
bool trace_shows(const rtl::NetModel& net, const sva::BoundProperty& p, const formal::CexTrace& t,
                 const std::vector<sva::BoundProperty>& assumptions, std::string* why = nullptr);

}  // namespace kgv::testing

#endif  // KGV_TESTS_SUPPORT_BRUTE_FORCE_HPP_
