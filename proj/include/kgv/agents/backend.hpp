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

#ifndef KGV_AGENTS_BACKEND_HPP_
#define KGV_AGENTS_BACKEND_HPP_

#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "kgv/agents/protocol.hpp"

namespace kgv::agents {

// Returns raw response text for an envelope. Shape checking happens in the
// session so every backend is held to the same contract.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const PromptEnvelope& env) = 0;
};

using Responder = std::function<std::string(const PromptEnvelope&)>;

// First rule whose role matches and whose pattern matches the whole step id
// answers. No match is a protocol error.
class ScriptedBackend : public Backend {
 public:
  ScriptedBackend& on(Role role, const std::string& step_pattern, Responder r);
  ScriptedBackend& on_any(const std::string& step_pattern, Responder r);
  std::string complete(const PromptEnvelope& env) override;

 private:
  struct Rule {
    std::optional<Role> role;
    std::regex step;
    Responder respond;
  };
  std::vector<Rule> rules_;
};

// Answers from a recorded transcript keyed by envelope digest. Repeated
// digests are served in recorded order.
class ReplayBackend : public Backend {
 public:
  explicit ReplayBackend(const Transcript& t);
  std::string complete(const PromptEnvelope& env) override;

 private:
  std::map<std::string, std::deque<std::string>> by_digest_;
};

struct LiveConfig {
  std::string url = "http://127.0.0.1:8080/v1/chat/completions";
  std::string model = "default";
  std::string api_key;  // sent as a bearer token when set
  int tries = 3;
  std::chrono::milliseconds backoff{250};  // doubled after each failure
  std::chrono::seconds timeout{60};
};

// Chat-completion endpoint. Request:
//   {"model": M, "temperature": 0, "messages": [
//     {"role": "system", "content": <role instructions + expected shape>},
//     {"role": "user", "content": <rendered context>}]}
// Response text is choices[0].message.content.
class LiveBackend : public Backend {
 public:
  explicit LiveBackend(LiveConfig cfg);
  std::string complete(const PromptEnvelope& env) override;
  static Json request_body(const LiveConfig& cfg, const PromptEnvelope& env);

 private:
  LiveConfig cfg_;
};

// Sends envelopes, checks shapes and records every exchange.
class Session {
 public:
  explicit Session(Backend& backend, std::size_t budget = kDefaultBudget) : backend_(backend), budget_(budget) {}

  // With `retry`, a protocol error is retried once before it propagates.
  AgentResponse send(PromptEnvelope env, bool retry = true);

  Transcript& transcript() { return transcript_; }
  const Transcript& transcript() const { return transcript_; }
  int calls() const { return calls_; }
  int calls(Role r) const;

 private:
  Backend& backend_;
  std::size_t budget_;
  Transcript transcript_;
  int calls_ = 0;
  std::map<Role, int> by_role_;
};

}  // namespace kgv::agents

#endif  // KGV_AGENTS_BACKEND_HPP_
