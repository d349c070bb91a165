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

#ifndef KGV_AGENTS_SCRIPTS_HPP_
#define KGV_AGENTS_SCRIPTS_HPP_

#include <string>
#include <vector>

#include "kgv/agents/backend.hpp"

namespace kgv::agents {

// Canned responders for the scripted backend.
Responder approve_all();
Responder reject_all(std::string reason);
Responder echo_prior_code();    // property_block: returns the prior code
Responder refuse_patch();       // code_patch with no hunks
Responder fixed_text(std::string text);  // code_patch replacing the prior code
Responder keyword_root_cause();
Responder reset_guard_fixer();

// Lines of the form `REQ: text` or `REQ[category,priority]: text`.
std::vector<std::string> requirement_lines(const std::string& text);
// `SVA:` lines that follow the requirement's `REQ` line in the spec fragment.
std::vector<std::string> sva_lines_for(const std::string& fragment, const std::string& requirement);

// Rules for every pipeline step, driven by `REQ:` / `SVA:` lines in the
// specification and keyword checks over the prompt. Rules added to `b`
// before this call take precedence.
void add_standard_rules(ScriptedBackend& b);

}  // namespace kgv::agents

#endif  // KGV_AGENTS_SCRIPTS_HPP_
