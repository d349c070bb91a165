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

#include "support/random_props.hpp"

#include "kgv/base/text.hpp"

namespace kgv::testing {
namespace {

class PropGen {
 public:
  PropGen(std::mt19937_64& rng, const RandomPropOptions& opt, const std::vector<std::string>& macros)
      : rng_(rng), opt_(opt), macros_(macros) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  ExprPtr value(int w, int depth) {
    std::vector<std::pair<std::string, int>> same;
    for (const auto& s : opt_.signals) {
      if (s.second == w) same.push_back(s);
    }
    int k = depth <= 0 ? pick(0, 1) : pick(0, 4);
    if (k == 0 && !same.empty()) return make_ref(same[pick(0, same.size() - 1)].first);
    if (k == 1 || same.empty()) return make_const(static_cast<std::uint64_t>(pick(0, (1 << w) - 1)), w);
    if (k == 2) {
      static const Op ops[] = {Op::kAnd, Op::kOr, Op::kXor, Op::kAdd, Op::kSub};
      return make_binary(ops[pick(0, 4)], value(w, depth - 1), value(w, depth - 1));
    }
    if (k == 3 && opt_.allow_temporal_fns && opt_.max_past > 0) {
      return make_past(value(w, 0), pick(1, opt_.max_past));
    }
    return make_unary(Op::kNot, value(w, depth - 1));
  }

  ExprPtr boolean(int depth) {
    int k = depth <= 0 ? 0 : pick(0, 6);
    switch (k) {
      case 0: {
        if (!macros_.empty() && pick(0, 5) == 0) return make_macro(macros_[pick(0, macros_.size() - 1)]);
        std::vector<std::string> bits;
        for (const auto& s : opt_.signals) {
          if (s.second == 1) bits.push_back(s.first);
        }
        if (bits.empty()) return make_const(1, 1);
        return make_ref(bits[pick(0, bits.size() - 1)]);
      }
      case 1: {
        const auto& s = opt_.signals[pick(0, opt_.signals.size() - 1)];
        static const Op ops[] = {Op::kEq, Op::kNe, Op::kLt, Op::kLe, Op::kGt, Op::kGe};
        ExprPtr rhs = pick(0, 1) ? value(s.second, depth - 1)
                                 : make_const(static_cast<std::uint64_t>(pick(0, (1 << s.second) - 1)), 0);
        return make_binary(ops[pick(0, 5)], value(s.second, depth - 1), rhs);
      }
      case 2:
        return make_binary(pick(0, 1) ? Op::kLogAnd : Op::kLogOr, boolean(depth - 1), boolean(depth - 1));
      case 3:
        return make_unary(Op::kLogNot, boolean(depth - 1));
      case 4:
        if (opt_.allow_temporal_fns) {
          static const Op fns[] = {Op::kRose, Op::kFell, Op::kStable};
          return make_unary(fns[pick(0, 2)], boolean(0));
        }
        return boolean(depth - 1);
      case 5:
        return make_mux(boolean(depth - 1), boolean(depth - 1), boolean(depth - 1));
      default: {
        std::vector<std::pair<std::string, int>> wide;
        for (const auto& s : opt_.signals) {
          if (s.second > 1) wide.push_back(s);
        }
        if (wide.empty()) return boolean(0);
        const auto& [n, w] = wide[pick(0, wide.size() - 1)];
        int b = pick(0, w - 1);
        return make_raw_slice(make_ref(n), make_const(b, 0), make_const(b, 0));
      }
    }
  }

  sva::Sequence sequence(bool lead_allowed) {
    sva::Sequence s;
    int n = pick(1, opt_.max_elems);
    for (int i = 0; i < n; ++i) {
      sva::SeqElem e;
      if (i > 0 || (lead_allowed && pick(0, 3) == 0)) {
        e.min_delay = pick(i == 0 ? 1 : 0, opt_.max_delay);
        e.max_delay = e.min_delay;
        if (opt_.allow_ranges && pick(0, 2) == 0) e.max_delay = e.min_delay + pick(1, 2);
      }
      e.expr = boolean(2);
      s.push_back(std::move(e));
    }
    return s;
  }

  sva::PropAst prop() {
    sva::PropAst a;
    if (opt_.allow_disable && pick(0, 2) == 0) a.disable = boolean(1);
    a.has_implication = pick(0, 2) > 0;
    if (a.has_implication) {
      a.overlapped = pick(0, 1) == 0;
      a.antecedent = sequence(true);
    }
    a.consequent = sequence(true);
    return a;
  }

 private:
  std::mt19937_64& rng_;
  const RandomPropOptions& opt_;
  std::vector<std::string> macros_;
};

}  // namespace

sva::PropAst random_prop_ast(std::mt19937_64& rng, const RandomPropOptions& opt,
                             const std::vector<std::string>& macros) {
  return PropGen(rng, opt, macros).prop();
}

sva::PropertyFile random_property_file(std::mt19937_64& rng, const RandomPropOptions& opt, int n_props) {
  sva::PropertyFile f;
  PropGen plain(rng, opt, {});
  std::vector<std::string> names;
  if (opt.allow_macros) {
    int n = plain.pick(0, 2);
    for (int i = 0; i < n; ++i) {
      std::string name = "M" + std::to_string(i);
      f.macros.push_back({name, to_verilog(*plain.boolean(1)), 0});
      names.push_back(name);
    }
  }
  f.default_clock = "clk";
  PropGen gen(rng, opt, names);
  for (int i = 0; i < n_props; ++i) {
    sva::PropertyDecl p;
    p.prop_id = make_id("PROP", i + 1);
    static const sva::PropKind kinds[] = {sva::PropKind::kAssertion, sva::PropKind::kAssumption,
                                          sva::PropKind::kCover};
    p.kind = kinds[gen.pick(0, 2)];
    p.ast = gen.prop();
    if (gen.pick(0, 4) == 0) p.ast.clock = "clk";
    f.properties.push_back(std::move(p));
  }
  return f;
}

}  // namespace kgv::testing
