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

#ifndef KGV_RTL_DESIGN_HPP_
#define KGV_RTL_DESIGN_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgv/base/diagnostics.hpp"
#include "kgv/rtl/ast.hpp"

namespace kgv::rtl {

enum class StatementKind { kAssign, kBranchArm, kSeqAssign };

std::string_view to_string(StatementKind kind);
std::optional<StatementKind> parse_statement_kind(std::string_view text);
std::string_view to_string(PortDir dir);

struct PortInfo {
  std::string name;
  PortDir dir = PortDir::kInput;
  int width = 1;
  bool operator==(const PortInfo&) const = default;
};

struct SignalInfo {
  std::string name;
  int width = 1;
  bool is_reg = false;
  bool operator==(const SignalInfo&) const = default;
};

struct ParamInfo {
  std::string name;
  std::int64_t value = 0;
  bool local = false;
  bool operator==(const ParamInfo&) const = default;
};

struct InstanceInfo {
  std::string name;
  std::string module;
  // port -> connected expression text
  std::vector<std::pair<std::string, std::string>> connections;
  bool operator==(const InstanceInfo&) const = default;
};

struct ModuleDecl {
  std::string name;
  std::string file;
  int line = 0;
  std::vector<PortInfo> ports;
  std::vector<SignalInfo> signals;
  std::vector<ParamInfo> parameters;
  std::vector<InstanceInfo> instances;
  bool operator==(const ModuleDecl&) const = default;
};

struct FsmDesc {
  std::string module;
  std::string state_register;
  std::vector<std::pair<std::string, std::int64_t>> encoding;
  std::vector<int> transition_lines;
  bool operator==(const FsmDesc&) const = default;
};

struct StatementRef {
  std::string id;  // S<n>
  std::string module;
  int line = 0;
  StatementKind kind = StatementKind::kAssign;
  bool operator==(const StatementRef&) const = default;
};

struct SourceFile {
  std::string path;
  std::string text;
  bool operator==(const SourceFile&) const = default;
};

struct DesignModel {
  std::vector<ModuleDecl> modules;
  std::vector<FsmDesc> fsms;
  std::vector<StatementRef> statements;
  // Filled once the design has been elaborated.
  std::string top;
  std::vector<std::pair<std::string, int>> signal_paths;
  std::vector<SourceFile> sources;
  // Parse tree; not serialized. Restored from `sources` by ensure_ast().
  std::shared_ptr<const DesignAst> ast;

  const ModuleDecl* find_module(std::string_view name) const;
  bool operator==(const DesignModel& o) const;
};

ParseResult<DesignModel> parse_rtl(std::string_view source, const std::string& file = "<input>");
ParseResult<DesignModel> parse_rtl(const std::vector<SourceFile>& files);

// Re-parses `sources` if the parse tree is missing (e.g. after load).
void ensure_ast(DesignModel& m);

std::vector<FsmDesc> detect_fsms(const DesignModel& m);
std::vector<StatementRef> statement_index(const DesignModel& m);

std::string statement_id(int n);

}  // namespace kgv::rtl

#endif  // KGV_RTL_DESIGN_HPP_
