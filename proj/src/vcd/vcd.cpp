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

#include "kgv/vcd/vcd.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "kgv/base/text.hpp"
#include "kgv/expr/expr.hpp"

namespace kgv::vcd {

const VcdSignal* WaveDb::find(std::string_view name) const {
  for (const auto& s : signals) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::optional<std::string> WaveDb::value_at(std::string_view name, std::uint64_t t) const {
  auto it = changes.find(std::string(name));
  if (it == changes.end()) return std::nullopt;
  std::optional<std::string> v;
  for (const auto& c : it->second) {
    if (c.time > t) break;
    v = c.value;
  }
  return v;
}

std::string to_bits(std::uint64_t v, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width && i < 64; ++i) {
    if ((v >> i) & 1) s[static_cast<std::size_t>(width - 1 - i)] = '1';
  }
  return s;
}

std::optional<std::uint64_t> from_bits(std::string_view bits) {
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') return std::nullopt;
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return v;
}

namespace {

std::string make_code(std::size_t n) {
  std::string code;
  do {
    code += static_cast<char>(33 + n % 94);
    n /= 94;
  } while (n > 0);
  return code;
}

struct Scope {
  std::map<std::string, Scope> children;
  std::vector<std::pair<std::string, std::size_t>> vars;  // leaf name, decl index
};

void emit_scope(const std::string& name, const Scope& s, const std::vector<SignalDecl>& decls,
                const std::vector<std::string>& codes, std::string& out) {
  out += "$scope module " + name + " $end\n";
  for (const auto& [leaf, i] : s.vars) {
    int w = decls[i].width;
    out += "$var wire " + std::to_string(w) + " " + codes[i] + " " + leaf;
    if (w > 1) out += " [" + std::to_string(w - 1) + ":0]";
    out += " $end\n";
  }
  for (const auto& [child, sub] : s.children) emit_scope(child, sub, decls, codes, out);
  out += "$upscope $end\n";
}

void emit_value(const SignalDecl& d, const std::string& code, std::uint64_t v, std::string& out) {
  if (d.width == 1) {
    out += (v ? '1' : '0');
    out += code + "\n";
  } else {
    out += "b" + to_bits(v, d.width) + " " + code + "\n";
  }
}

}  // namespace

std::string write_vcd(const std::vector<formal::Valuation>& cycles, const std::vector<SignalDecl>& decls_in,
                      const Timescale& ts) {
  std::vector<SignalDecl> decls = decls_in;
  std::sort(decls.begin(), decls.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  for (std::size_t i = 0; i + 1 < decls.size(); ++i) {
    if (decls[i].name == decls[i + 1].name) throw Error("vcd: duplicate signal " + decls[i].name);
  }
  std::vector<std::string> codes;
  Scope root;
  for (std::size_t i = 0; i < decls.size(); ++i) {
    const auto& d = decls[i];
    if (d.width < 1 || d.width > kMaxWidth) throw Error("vcd: bad width for " + d.name);
    codes.push_back(make_code(i));
    auto parts = split(d.name, '.');
    if (parts.size() < 2) throw Error("vcd: signal names must be hierarchical (top.name): " + d.name);
    Scope* s = &root;
    for (std::size_t p = 0; p + 1 < parts.size(); ++p) s = &s->children[parts[p]];
    s->vars.emplace_back(parts.back(), i);
  }

  std::vector<std::vector<std::uint64_t>> values(cycles.size());
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    for (const auto& d : decls) {
      auto it = cycles[k].find(d.name);
      if (it == cycles[k].end()) throw Error("vcd: cycle " + std::to_string(k) + " has no value for " + d.name);
      if (it->second & ~width_mask(d.width)) {
        throw Error("vcd: value of " + d.name + " at cycle " + std::to_string(k) + " exceeds " +
                    std::to_string(d.width) + " bits");
      }
      values[k].push_back(it->second);
    }
  }

  std::string out;
  out += "$version kgverify $end\n";
  out += "$timescale " + std::to_string(ts.number) + ts.unit + " $end\n";
  for (const auto& [name, sub] : root.children) emit_scope(name, sub, decls, codes, out);
  out += "$enddefinitions $end\n";
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    out += "#" + std::to_string(k) + "\n";
    if (k == 0) {
      out += "$dumpvars\n";
      for (std::size_t i = 0; i < decls.size(); ++i) emit_value(decls[i], codes[i], values[0][i], out);
      out += "$end\n";
      continue;
    }
    for (std::size_t i = 0; i < decls.size(); ++i) {
      if (values[k][i] != values[k - 1][i]) emit_value(decls[i], codes[i], values[k][i], out);
    }
  }
  return out;
}

std::string write_vcd(const formal::CexTrace& trace, const std::vector<SignalDecl>& decls,
                      const Timescale& ts) {
  std::vector<formal::Valuation> cycles;
  for (const auto& c : trace.cycles) {
    formal::Valuation v = c.state;
    for (const auto& [k, x] : c.inputs) v[k] = x;
    cycles.push_back(std::move(v));
  }
  return write_vcd(cycles, decls, ts);
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  WaveDb run() {
    while (next()) {
      if (tok_[0] == '$') {
        directive();
      } else if (!defs_done_) {
        throw VcdError(tok_off_, "unexpected '" + std::string(tok_) + "' in header");
      } else if (tok_[0] == '#') {
        timestamp();
      } else {
        value_change();
      }
    }
    return std::move(db_);
  }

 private:
  bool next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) return false;
    tok_off_ = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_ = text_.substr(tok_off_, pos_ - tok_off_);
    return true;
  }

  std::vector<std::string_view> until_end(std::size_t start) {
    std::vector<std::string_view> body;
    while (true) {
      if (!next()) throw VcdError(start, "directive not terminated by $end");
      if (tok_ == "$end") return body;
      body.push_back(tok_);
    }
  }

  void directive() {
    std::size_t at = tok_off_;
    std::string_view d = tok_;
    if (d == "$end" || d == "$dumpvars" || d == "$dumpall" || d == "$dumpon" || d == "$dumpoff") {
      if (!defs_done_ && d != "$end") throw VcdError(at, std::string(d) + " before $enddefinitions");
      return;  // value changes inside are read as usual
    }
    if (d == "$comment" || d == "$date" || d == "$version") {
      until_end(at);
      return;
    }
    if (d == "$timescale") {
      auto body = until_end(at);
      std::string joined;
      for (auto b : body) joined += b;
      std::size_t i = 0;
      while (i < joined.size() && std::isdigit(static_cast<unsigned char>(joined[i]))) ++i;
      if (i == 0 || i == joined.size()) throw VcdError(at, "malformed $timescale");
      db_.timescale.number = std::stoi(joined.substr(0, i));
      db_.timescale.unit = joined.substr(i);
      return;
    }
    if (d == "$scope") {
      auto body = until_end(at);
      if (body.size() != 2) throw VcdError(at, "malformed $scope");
      scope_.emplace_back(body[1]);
      return;
    }
    if (d == "$upscope") {
      until_end(at);
      if (scope_.empty()) throw VcdError(at, "$upscope without $scope");
      scope_.pop_back();
      return;
    }
    if (d == "$var") {
      var(at);
      return;
    }
    if (d == "$enddefinitions") {
      until_end(at);
      defs_done_ = true;
      return;
    }
    ++db_.warnings;
    until_end(at);
  }

  void var(std::size_t at) {
    auto body = until_end(at);
    // type width code name [range]
    if (body.size() < 4 || body.size() > 5) throw VcdError(at, "malformed $var declaration");
    int width = 0;
    for (char c : body[1]) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw VcdError(at, "malformed $var width");
    }
    if (body[1].size() > 3 || (width = std::stoi(std::string(body[1]))) < 1 || width > kMaxWidth) {
      throw VcdError(at, "unsupported $var width '" + std::string(body[1]) + "'");
    }
    std::string leaf(body[3]);
    auto bracket = leaf.find('[');
    if (bracket != std::string::npos) leaf.resize(bracket);
    std::string name = join(scope_, ".");
    name = name.empty() ? leaf : name + "." + leaf;
    if (db_.find(name)) throw VcdError(at, "duplicate $var " + name);
    VcdSignal s{name, width, std::string(body[2])};
    by_code_[s.code].push_back(db_.signals.size());
    db_.signals.push_back(std::move(s));
  }

  void timestamp() {
    std::string_view digits = tok_.substr(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      throw VcdError(tok_off_, "malformed timestamp '" + std::string(tok_) + "'");
    }
    std::uint64_t t = std::stoull(std::string(digits));
    if (seen_time_ && t <= now_) {
      throw VcdError(tok_off_, "timestamp " + std::to_string(t) + " not after " + std::to_string(now_));
    }
    now_ = t;
    seen_time_ = true;
    db_.end_time = t;
  }

  void value_change() {
    std::size_t at = tok_off_;
    char k = static_cast<char>(std::tolower(static_cast<unsigned char>(tok_[0])));
    std::string bits;
    std::string code;
    if (k == 'b' || k == 'r') {
      std::string raw(tok_.substr(1));
      if (!next()) throw VcdError(at, "vector change without identifier");
      code = std::string(tok_);
      if (k == 'r') {
        ++db_.warnings;  // real values are not represented
        return;
      }
      for (char& c : raw) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (c != '0' && c != '1' && c != 'x' && c != 'z') throw VcdError(at, "bad vector value '" + raw + "'");
      }
      if (raw.empty()) throw VcdError(at, "empty vector value");
      bits = raw;
    } else if (k == '0' || k == '1' || k == 'x' || k == 'z') {
      bits = std::string(1, k);
      code = std::string(tok_.substr(1));
      if (code.empty()) throw VcdError(at, "scalar change without identifier");
    } else {
      throw VcdError(at, "unexpected token '" + std::string(tok_) + "'");
    }
    if (!seen_time_) throw VcdError(at, "value change before first timestamp");
    auto it = by_code_.find(code);
    if (it == by_code_.end()) throw VcdError(at, "unknown identifier code '" + code + "'");
    for (std::size_t idx : it->second) {
      const VcdSignal& s = db_.signals[idx];
      std::string v = bits;
      if (static_cast<int>(v.size()) > s.width) {
        throw VcdError(at, "value '" + bits + "' wider than " + std::to_string(s.width) + "-bit " + s.name);
      }
      char pad = (v[0] == 'x' || v[0] == 'z') ? v[0] : '0';
      v.insert(0, static_cast<std::size_t>(s.width) - v.size(), pad);
      auto& list = db_.changes[s.name];
      if (!list.empty() && list.back().time == now_) {
        list.back().value = v;
        if (list.size() > 1 && list[list.size() - 2].value == v) list.pop_back();
        continue;
      }
      if (!list.empty() && list.back().value == v) continue;
      list.push_back({now_, v});
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::string_view tok_;
  std::size_t tok_off_ = 0;
  bool defs_done_ = false;
  bool seen_time_ = false;
  std::uint64_t now_ = 0;
  std::vector<std::string> scope_;
  std::map<std::string, std::vector<std::size_t>> by_code_;
  WaveDb db_;
};

}  // namespace

WaveDb parse_vcd(std::string_view text) { return Parser(text).run(); }

WindowSummary failure_window(const WaveDb& db, std::uint64_t t, const std::vector<std::string>& signals,
                             int pre_cycles, std::uint64_t ticks_per_cycle) {
  WindowSummary w;
  w.center_time = t;
  std::uint64_t span = static_cast<std::uint64_t>(std::max(0, pre_cycles)) * ticks_per_cycle;
  std::uint64_t lo = t >= span ? t - span : 0;
  std::set<std::string> seen;
  for (const auto& name : signals) {
    if (!seen.insert(name).second) continue;
    if (!db.find(name)) {
      w.missing.push_back(name);
      continue;
    }
    w.signals_of_interest.push_back(name);
    auto it = db.changes.find(name);
    if (it == db.changes.end()) continue;
    std::string prev;
    for (const auto& c : it->second) {
      if (c.time > t) break;
      if (c.time >= lo) w.window.push_back({c.time, name, prev, c.value});
      prev = c.value;
    }
  }
  std::sort(w.window.begin(), w.window.end(), [](const WindowEntry& a, const WindowEntry& b) {
    return a.time != b.time ? a.time < b.time : a.signal < b.signal;
  });
  return w;
}

}  // namespace kgv::vcd
