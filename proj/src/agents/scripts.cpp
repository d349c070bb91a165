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

#include "kgv/agents/scripts.hpp"

#include <regex>

#include "kgv/base/text.hpp"

namespace kgv::agents {

namespace {

const std::regex kReqLine(R"(^\s*REQ(\[[^\]]*\])?:\s*(.*\S)\s*$)");
const std::regex kSvaLine(R"(^\s*SVA:\s*(.*\S)\s*$)");
const std::regex kResetLeaf(R"((a?rst|reset|[a-z0-9]*_rst|[a-z0-9]*_reset)(_n|_b)?)");

std::string section(const PromptEnvelope& env, Section s) {
  const std::string* t = env.get(s);
  return t ? *t : std::string();
}

// Requirement text without its `REQ-001: ` prefix.
std::string bare_requirement(const std::string& s) {
  std::string first = trim(split(s, '\n')[0]);
  static const std::regex kPrefix(R"(^REQ-[0-9]+:\s*)");
  return std::regex_replace(first, kPrefix, "");
}

}  // namespace

Responder approve_all() {
  return [](const PromptEnvelope&) { return std::string("APPROVE\n- consistent with the requirement\n"); };
}

Responder reject_all(std::string reason) {
  return [reason](const PromptEnvelope&) { return "REJECT\n- " + reason + "\n"; };
}

Responder echo_prior_code() {
  return [](const PromptEnvelope& env) { return section(env, Section::kPriorCode); };
}

Responder refuse_patch() {
  return [](const PromptEnvelope& env) {
    std::string prior = section(env, Section::kPriorCode);
    return make_patch(prior, prior, "property");
  };
}

Responder fixed_text(std::string text) {
  return [text](const PromptEnvelope& env) { return make_patch(section(env, Section::kPriorCode), text, "property"); };
}

Responder keyword_root_cause() {
  return [](const PromptEnvelope& env) {
    const std::string diag = section(env, Section::kDiagnostics);
    const std::string code = section(env, Section::kPriorCode);
    const std::string req = to_lower(section(env, Section::kRequirement));
    if (diag.find("reset_active: yes") != std::string::npos && code.find("disable iff") == std::string::npos) {
      return std::string("root_cause: over_specification\nreason: reset asserted in the window and the property has no reset guard\n");
    }
    if (req.find("assum") != std::string::npos || req.find("environment") != std::string::npos) {
      return std::string("root_cause: missing_assumption\nreason: the requirement relies on an environment constraint\n");
    }
    return std::string("root_cause: rtl_bug\nreason: the property follows the requirement; the design violates it\n");
  };
}

Responder reset_guard_fixer() {
  return [](const PromptEnvelope& env) {
    const std::string prior = section(env, Section::kPriorCode);
    const std::string diag = section(env, Section::kDiagnostics);
    if (diag.find("root_cause: over_specification") == std::string::npos ||
        prior.find("disable iff") != std::string::npos) {
      return make_patch(prior, prior, "property");
    }
    std::string guard;
    for (const auto& line : split(section(env, Section::kSignalTable), '\n')) {
      auto cols = split(trim(line), ' ');
      if (cols.size() < 3 || cols[1] != "1" || cols[2] != "input") continue;
      auto dot = cols[0].rfind('.');
      std::string leaf = dot == std::string::npos ? cols[0] : cols[0].substr(dot + 1);
      std::smatch m;
      std::string lower = to_lower(leaf);
      if (!std::regex_match(lower, m, kResetLeaf)) continue;
      guard = m[2].matched ? "!" + leaf : leaf;
      break;
    }
    auto at = prior.find("property (");
    if (guard.empty() || at == std::string::npos) return make_patch(prior, prior, "property");
    std::string fixed = prior;
    fixed.insert(at + 10, "disable iff (" + guard + ") ");
    return make_patch(prior, fixed, "property");
  };
}

std::vector<std::string> requirement_lines(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& line : split(text, '\n')) {
    std::smatch m;
    if (std::regex_match(line, m, kReqLine)) out.push_back("REQ" + m[1].str() + ": " + m[2].str());
  }
  return out;
}

std::vector<std::string> sva_lines_for(const std::string& fragment, const std::string& requirement) {
  std::vector<std::string> out;
  bool inside = false;
  const std::string want = trim(requirement);
  for (const auto& line : split(fragment, '\n')) {
    std::smatch m;
    if (std::regex_match(line, m, kReqLine)) {
      if (inside) break;
      inside = trim(m[2].str()) == want;
      continue;
    }
    if (inside && std::regex_match(line, m, kSvaLine)) out.push_back(m[1].str());
  }
  return out;
}

void add_standard_rules(ScriptedBackend& b) {
  b.on(Role::kSpecAnalyst, "extract/.*", [](const PromptEnvelope& env) {
    auto lines = requirement_lines(section(env, Section::kSpecFragment));
    return lines.empty() ? std::string("none\n") : join(lines, "\n") + "\n";
  });
  b.on(Role::kSvaLead, ".*", [](const PromptEnvelope&) {
    return std::string("strategy: one concurrent assertion per testable condition\n");
  });
  b.on(Role::kSpecAnalyst, "decompose/.*", [](const PromptEnvelope& env) {
    std::string req = bare_requirement(section(env, Section::kRequirement));
    std::string lower = to_lower(req);
    std::string trigger = req;
    std::string response = req;
    auto when = lower.find(" when ");
    if (when != std::string::npos) {
      response = trim(req.substr(0, when));
      trigger = trim(req.substr(when + 6));
    }
    std::string timing = lower.find("cycle") != std::string::npos ? "next cycle" : "none";
    std::string exceptions = lower.find("reset") != std::string::npos ? "reset" : "none";
    return "trigger: " + trigger + "\nresponse: " + response + "\ntiming: " + timing + "\nexceptions: " + exceptions +
           "\n";
  });
  b.on(Role::kSvaAuthor, ".*", [](const PromptEnvelope& env) {
    std::string req = bare_requirement(section(env, Section::kRequirement));
    auto lines = sva_lines_for(section(env, Section::kSpecFragment), req);
    if (lines.empty()) throw ProtocolError("no scripted SVA for requirement '" + req + "'");
    return join(lines, "\n") + "\n";
  });
  b.on(Role::kSvaReviewer, ".*", approve_all());
  b.on(Role::kSvaPatcher, ".*", echo_prior_code());
  b.on(Role::kSyntaxFixer, ".*", refuse_patch());
  b.on(Role::kSpecAssertionAnalyzer, ".*", keyword_root_cause());
  b.on(Role::kCexFixer, ".*", reset_guard_fixer());
  b.on(Role::kCovAnalyzer, ".*", [](const PromptEnvelope& env) {
    auto f = analysis_fields(section(env, Section::kDiagnostics));
    static const std::regex kDefault("\\bdefault\\b");
    bool defensive = std::regex_search(f["source"], kDefault);
    return std::string("classification: ") + (defensive ? "defensive" : "gap") + "\nblocking: " +
           (f.count("blocking") ? f["blocking"] : "none") + "\n";
  });
  b.on(Role::kCovImprover, ".*", [](const PromptEnvelope& env) {
    auto f = analysis_fields(section(env, Section::kDiagnostics));
    return "cover property (" + f["guard"] + ");\n";
  });
}

}  // namespace kgv::agents
