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

#include "program.hpp"

#include "kgv/base/error.hpp"
#include "kgv/base/text.hpp"

namespace kgv::formal::detail {

Program::Program(const rtl::NetModel& net) : net_(net) {
  for (const auto& [name, w] : net.state_bits) leaf_[name] = next_slot_++;
  for (const auto& [name, w] : net.inputs) leaf_[name] = next_slot_++;
}

int Program::emit(Instr ins) {
  ins.dst = next_slot_++;
  code_.push_back(ins);
  return ins.dst;
}

int Program::const_slot(std::uint64_t v) {
  auto it = consts_.find(v);
  if (it != consts_.end()) return it->second;
  Instr ins;
  ins.op = Op::kConst;
  ins.width = 64;
  ins.imm = v;
  int s = emit(ins);
  consts_[v] = s;
  return s;
}

int Program::add_root(const ExprPtr& e) { return compile(e); }

int Program::compile(const ExprPtr& e) {
  auto it = memo_.find(e.get());
  if (it != memo_.end()) return it->second;
  int slot = -1;
  switch (e->op) {
    case Op::kConst:
      slot = const_slot(e->value);
      break;
    case Op::kRef: {
      auto leaf = leaf_.find(e->name);
      if (leaf != leaf_.end()) {
        slot = leaf->second;
        break;
      }
      auto cm = comb_memo_.find(e->name);
      if (cm != comb_memo_.end()) {
        slot = cm->second;
        break;
      }
      auto comb = net_.comb.find(e->name);
      if (comb == net_.comb.end()) {
        if (e->name == net_.clock) throw Error("clock '" + e->name + "' used as data");
        throw Error("unbound identifier '" + e->name + "'");
      }
      for (const auto& n : comb_stack_) {
        if (n == e->name) throw Error("combinational cycle through '" + e->name + "'");
      }
      comb_stack_.push_back(e->name);
      slot = compile(comb->second);
      comb_stack_.pop_back();
      comb_memo_[e->name] = slot;
      break;
    }
    case Op::kMacro:
      throw Error("unexpanded macro `" + e->name);
    case Op::kPast:
    case Op::kRose:
    case Op::kFell:
    case Op::kStable: {
      int arg = compile(e->args[0]);
      Sampled s;
      s.arg_slot = arg;
      s.offset = history_size_;
      s.depth = e->op == Op::kPast ? e->hi : 1;
      history_size_ += s.depth;
      sampled_.push_back(s);
      Instr ins;
      ins.op = e->op;
      ins.width = e->width;
      ins.a = arg;
      ins.imm = static_cast<std::uint64_t>(s.offset);  // oldest = n cycles ago
      ins.arg_width = e->args[0]->width;
      slot = emit(ins);
      break;
    }
    default: {
      Instr ins;
      ins.op = e->op;
      ins.width = e->width;
      if (!e->args.empty()) {
        ins.arg_width = e->args[0]->width;
        ins.a = compile(e->args[0]);
      }
      if (e->op == Op::kConcat) {
        // Fold the parts pairwise into a left-leaning chain of 2-part concats.
        int acc = ins.a;
        int acc_w = e->args[0]->width;
        for (std::size_t i = 1; i < e->args.size(); ++i) {
          Instr c;
          c.op = Op::kConcat;
          c.a = acc;
          c.b = compile(e->args[i]);
          c.lo = e->args[i]->width;
          acc_w += e->args[i]->width;
          c.width = acc_w;
          acc = emit(c);
        }
        slot = acc;
        break;
      }
      if (e->args.size() > 1) ins.b = compile(e->args[1]);
      if (e->args.size() > 2) ins.c = compile(e->args[2]);
      ins.lo = e->lo;
      slot = emit(ins);
      break;
    }
  }
  memo_[e.get()] = slot;
  return slot;
}

void Program::run(std::uint64_t* s, const std::uint64_t* h) const {
  for (const Instr& i : code_) {
    std::uint64_t v = 0;
    std::uint64_t m = width_mask(i.width);
    switch (i.op) {
      case Op::kConst:
        v = i.imm;
        break;
      case Op::kNot:
        v = ~s[i.a] & m;
        break;
      case Op::kLogNot:
        v = s[i.a] == 0;
        break;
      case Op::kAnd:
        v = s[i.a] & s[i.b];
        break;
      case Op::kOr:
        v = s[i.a] | s[i.b];
        break;
      case Op::kXor:
        v = s[i.a] ^ s[i.b];
        break;
      case Op::kLogAnd:
        v = s[i.a] != 0 && s[i.b] != 0;
        break;
      case Op::kLogOr:
        v = s[i.a] != 0 || s[i.b] != 0;
        break;
      case Op::kAdd:
        v = (s[i.a] + s[i.b]) & width_mask(i.arg_width);
        break;
      case Op::kSub:
        v = (s[i.a] - s[i.b]) & width_mask(i.arg_width);
        break;
      case Op::kEq:
        v = s[i.a] == s[i.b];
        break;
      case Op::kNe:
        v = s[i.a] != s[i.b];
        break;
      case Op::kLt:
        v = s[i.a] < s[i.b];
        break;
      case Op::kLe:
        v = s[i.a] <= s[i.b];
        break;
      case Op::kGt:
        v = s[i.a] > s[i.b];
        break;
      case Op::kGe:
        v = s[i.a] >= s[i.b];
        break;
      case Op::kMux:
        v = s[i.a] ? s[i.b] : s[i.c];
        break;
      case Op::kConcat:
        v = (i.lo >= 64 ? 0 : s[i.a] << i.lo) | s[i.b];
        break;
      case Op::kSlice:
        v = (s[i.a] >> i.lo) & m;
        break;
      case Op::kPast:
        v = h[i.imm];
        break;
      case Op::kRose:
        v = (s[i.a] & 1) && !(h[i.imm] & 1);
        break;
      case Op::kFell:
        v = !(s[i.a] & 1) && (h[i.imm] & 1);
        break;
      case Op::kStable:
        v = s[i.a] == h[i.imm];
        break;
      default:
        throw Error("program: unexpected operator");
    }
    s[i.dst] = v;
  }
}

void Program::advance_history(const std::uint64_t* s, std::uint64_t* h) const {
  // Index offset+depth-1 is the most recent value, offset the oldest.
  for (const Sampled& x : sampled_) {
    for (int k = 0; k + 1 < x.depth; ++k) h[x.offset + k] = h[x.offset + k + 1];
    h[x.offset + x.depth - 1] = s[x.arg_slot];
  }
}

}  // namespace kgv::formal::detail
