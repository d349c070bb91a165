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

#include "kgv/agents/backend.hpp"

#include <httplib.h>

#include <thread>

namespace kgv::agents {

ScriptedBackend& ScriptedBackend::on(Role role, const std::string& step_pattern, Responder r) {
  rules_.push_back({role, std::regex(step_pattern), std::move(r)});
  return *this;
}

ScriptedBackend& ScriptedBackend::on_any(const std::string& step_pattern, Responder r) {
  rules_.push_back({std::nullopt, std::regex(step_pattern), std::move(r)});
  return *this;
}

std::string ScriptedBackend::complete(const PromptEnvelope& env) {
  for (const auto& rule : rules_) {
    if (rule.role && *rule.role != env.role) continue;
    if (!std::regex_match(env.step_id, rule.step)) continue;
    return rule.respond(env);
  }
  throw ProtocolError("no scripted rule for " + std::string(to_string(env.role)) + " step '" + env.step_id + "'");
}

ReplayBackend::ReplayBackend(const Transcript& t) {
  for (const auto& e : t.entries) by_digest_[e.digest].push_back(e.response);
}

std::string ReplayBackend::complete(const PromptEnvelope& env) {
  const std::string d = env.digest();
  auto it = by_digest_.find(d);
  if (it == by_digest_.end() || it->second.empty()) {
    throw ProtocolError("replay miss for digest " + d + " (" + std::string(to_string(env.role)) + " step '" +
                        env.step_id + "')");
  }
  std::string r = std::move(it->second.front());
  it->second.pop_front();
  return r;
}

LiveBackend::LiveBackend(LiveConfig cfg) : cfg_(std::move(cfg)) {}

Json LiveBackend::request_body(const LiveConfig& cfg, const PromptEnvelope& env) {
  std::string system = std::string(system_instructions(env.role)) + "\nRespond with a " +
                       std::string(to_string(env.expected_shape)) + " payload only.";
  return {{"model", cfg.model},
          {"temperature", 0},
          {"messages", Json::array({{{"role", "system"}, {"content", system}},
                                    {{"role", "user"}, {"content", env.context()}}})}};
}

std::string LiveBackend::complete(const PromptEnvelope& env) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(cfg_.url, m, kUrl)) throw ProtocolError("bad endpoint url '" + cfg_.url + "'");
  const std::string base = m[1].str();
  const std::string path = m[2].matched ? m[2].str() : "/";
  const std::string body = request_body(cfg_, env).dump();

  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);
  std::string last_error;
  auto delay = cfg_.backoff;
  for (int attempt = 1; attempt <= cfg_.tries; ++attempt) {
    httplib::Client cli(base);
    cli.set_connection_timeout(cfg_.timeout);
    cli.set_read_timeout(cfg_.timeout);
    auto res = cli.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
    } else if (res->status < 200 || res->status >= 300) {
      last_error = "http status " + std::to_string(res->status);
    } else {
      try {
        Json j = Json::parse(res->body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const Json::exception& e) {
        throw ProtocolError(std::string("malformed endpoint response: ") + e.what(), res->body);
      }
    }
    if (attempt < cfg_.tries) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }
  throw ProtocolError("endpoint failed after " + std::to_string(cfg_.tries) + " tries: " + last_error);
}

AgentResponse Session::send(PromptEnvelope env, bool retry) {
  env.budget = budget_;
  const std::string digest = env.digest();
  for (int round = 0;; ++round) {
    ++calls_;
    ++by_role_[env.role];
    std::string raw;
    try {
      raw = backend_.complete(env);
    } catch (const ProtocolError&) {
      if (retry && round == 0) continue;
      throw;
    }
    transcript_.entries.push_back({digest, env.role, env.step_id, env.expected_shape, raw});
    try {
      return parse_response(env, raw);
    } catch (const ProtocolError&) {
      if (retry && round == 0) continue;
      throw;
    }
  }
}

int Session::calls(Role r) const {
  auto it = by_role_.find(r);
  return it == by_role_.end() ? 0 : it->second;
}

}  // namespace kgv::agents
