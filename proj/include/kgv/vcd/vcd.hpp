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

#ifndef KGV_VCD_VCD_HPP_
#define KGV_VCD_VCD_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgv/base/error.hpp"
#include "kgv/formal/engine.hpp"

namespace kgv::vcd {

struct Timescale {
  int number = 1;
  std::string unit = "ns";
  bool operator==(const Timescale&) const = default;
};

struct SignalDecl {
  std::string name;  // hierarchical, dot separated
  int width = 1;
  bool operator==(const SignalDecl&) const = default;
};

struct VcdSignal {
  std::string name;
  int width = 1;
  std::string code;
  bool operator==(const VcdSignal&) const = default;
};

// Values are bit strings, most significant first, exactly `width` long.
// Files written here use 0/1 only; x and z from other tools are kept.
struct Change {
  std::uint64_t time = 0;
  std::string value;
  bool operator==(const Change&) const = default;
};

struct WaveDb {
  Timescale timescale;
  std::vector<VcdSignal> signals;
  std::map<std::string, std::vector<Change>> changes;  // by signal name
  int warnings = 0;
  std::uint64_t end_time = 0;  // last timestamp seen

  const VcdSignal* find(std::string_view name) const;
  // Value in effect at `t`, if the signal has one by then.
  std::optional<std::string> value_at(std::string_view name, std::uint64_t t) const;
};

class VcdError : public Error {
 public:
  VcdError(std::size_t offset, const std::string& message)
      : Error("vcd: byte " + std::to_string(offset) + ": " + message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

std::string to_bits(std::uint64_t v, int width);
// Binary string to integer; nullopt when it holds x or z.
std::optional<std::uint64_t> from_bits(std::string_view bits);

// One timestamp per cycle (#k for cycle k) after the initial dump; a value
// is written only when it differs from the previous cycle. Throws when a
// value does not fit its declared width.
std::string write_vcd(const std::vector<formal::Valuation>& cycles, const std::vector<SignalDecl>& decls,
                      const Timescale& ts = {});
// Dumps the trace's inputs and registers.
std::string write_vcd(const formal::CexTrace& trace, const std::vector<SignalDecl>& decls,
                      const Timescale& ts = {});

WaveDb parse_vcd(std::string_view text);

struct WindowEntry {
  std::uint64_t time = 0;
  std::string signal;
  std::string old_value;  // empty when the signal had no value before
  std::string new_value;
  bool operator==(const WindowEntry&) const = default;
};

struct WindowSummary {
  std::uint64_t center_time = 0;
  std::vector<WindowEntry> window;  // sorted by (time, signal)
  std::vector<std::string> signals_of_interest;
  std::vector<std::string> missing;
};

// Changes of `signals` within [t - pre_cycles * ticks_per_cycle, t].
WindowSummary failure_window(const WaveDb& db, std::uint64_t t, const std::vector<std::string>& signals,
                             int pre_cycles, std::uint64_t ticks_per_cycle = 1);

}  // namespace kgv::vcd

#endif  // KGV_VCD_VCD_HPP_
