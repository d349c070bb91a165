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

#ifndef KGV_RTL_AST_HPP_
#define KGV_RTL_AST_HPP_

#include <memory>
#include <string>
#include <vector>

#include "kgv/base/diagnostics.hpp"
#include "kgv/expr/expr.hpp"

namespace kgv::rtl {

// Unevaluated `[msb:lsb]`; both null for a scalar.
struct RangeAst {
  ExprPtr msb;
  ExprPtr lsb;
  bool scalar() const { return !msb; }
};

enum class PortDir { kInput, kOutput };

struct PortAst {
  std::string name;
  PortDir dir = PortDir::kInput;
  RangeAst range;
  bool is_reg = false;
  SourceLoc loc;
};

struct NetAst {
  std::string name;
  RangeAst range;
  bool is_reg = false;
  SourceLoc loc;
};

struct ParamAst {
  std::string name;
  ExprPtr value;
  bool local = false;
  SourceLoc loc;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct CaseItemAst {
  std::vector<ExprPtr> labels;  // empty: default
  StmtPtr body;
  int stmt_id = 0;  // branch arm
  SourceLoc loc;
};

struct Stmt {
  enum class Kind { kBlock, kIf, kCase, kAssign };
  Kind kind = Kind::kBlock;
  SourceLoc loc;
  // kBlock
  std::vector<StmtPtr> body;
  // kIf: `cond`, `then_body`, optional `else_body`, arm ids.
  // kCase: `cond` is the subject.
  ExprPtr cond;
  StmtPtr then_body;
  StmtPtr else_body;
  int then_id = 0;
  int else_id = 0;
  SourceLoc else_loc;
  std::vector<CaseItemAst> items;
  // kAssign
  std::string lhs;
  ExprPtr rhs;
  bool nonblocking = false;
  int stmt_id = 0;
};

struct ContAssignAst {
  std::string lhs;
  ExprPtr rhs;
  int stmt_id = 0;
  SourceLoc loc;
};

struct AlwaysAst {
  bool clocked = false;
  std::string clock;  // clocked only
  StmtPtr body;
  SourceLoc loc;
};

struct ConnectionAst {
  std::string port;
  ExprPtr expr;  // null for `.port()`
  SourceLoc loc;
};

struct InstanceAst {
  std::string module;
  std::string name;
  std::vector<std::pair<std::string, ExprPtr>> param_overrides;
  std::vector<ConnectionAst> connections;
  SourceLoc loc;
};

struct ModuleAst {
  std::string name;
  std::string file;
  SourceLoc loc;
  int end_line = 0;
  std::vector<ParamAst> params;
  std::vector<PortAst> ports;
  std::vector<NetAst> nets;
  std::vector<ContAssignAst> assigns;
  std::vector<AlwaysAst> always;
  std::vector<InstanceAst> instances;
};

struct DesignAst {
  std::vector<ModuleAst> modules;
  const ModuleAst* find(const std::string& name) const;
};

}  // namespace kgv::rtl

#endif  // KGV_RTL_AST_HPP_
