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

#include "kgv/formal/external.hpp"

#include <cmath>
#include <map>

#include "kgv/base/text.hpp"
#include "kgv/sva/property.hpp"

namespace kgv::formal {

std::optional<ir::FormalStatus> map_external_status(std::string_view vendor_status) {
  static const std::map<std::string, ir::FormalStatus, std::less<>> kTable = {
      {"proven", ir::FormalStatus::kProven},        {"proved", ir::FormalStatus::kProven},
      {"pass", ir::FormalStatus::kProven},          {"passed", ir::FormalStatus::kProven},
      {"holds", ir::FormalStatus::kProven},         {"covered", ir::FormalStatus::kProven},
      {"cex", ir::FormalStatus::kCex},              {"fail", ir::FormalStatus::kCex},
      {"failed", ir::FormalStatus::kCex},           {"falsified", ir::FormalStatus::kCex},
      {"violated", ir::FormalStatus::kCex},         {"vacuous", ir::FormalStatus::kVacuous},
      {"vacuously_proven", ir::FormalStatus::kVacuous},
      {"unreachable", ir::FormalStatus::kVacuous},  {"undetermined", ir::FormalStatus::kBounded},
      {"inconclusive", ir::FormalStatus::kBounded}, {"bounded", ir::FormalStatus::kBounded},
      {"timeout", ir::FormalStatus::kBounded},      {"bounded_proof", ir::FormalStatus::kBounded},
      {"unknown", ir::FormalStatus::kBounded},      {"error", ir::FormalStatus::kError},
  };
  auto it = kTable.find(to_lower(trim(vendor_status)));
  if (it == kTable.end()) return std::nullopt;
  return it->second;
}

std::vector<ir::FormalResult> import_external_results(const ir::Json& report) {
  ir::ValidationReport v;
  if (!report.is_object()) {
    v.add("", "report must be an object");
    throw ir::ValidationError(v);
  }
  if (!report.contains("tool") || !report["tool"].is_string()) v.add("/tool", "missing string field");
  if (!report.contains("properties") || !report["properties"].is_array()) {
    v.add("/properties", "missing array field");
    throw ir::ValidationError(v);
  }
  std::vector<ir::FormalResult> out;
  const auto& props = report["properties"];
  for (std::size_t i = 0; i < props.size(); ++i) {
    const auto& p = props[i];
    std::string at = "/properties/" + std::to_string(i);
    if (!p.is_object()) {
      v.add(at, "entry must be an object");
      continue;
    }
    ir::FormalResult r;
    r.external = true;
    if (!p.contains("name") || !p["name"].is_string() || p["name"].get<std::string>().empty()) {
      v.add(at + "/name", "missing string field");
    } else {
      r.prop_id = sva::prop_id_for(p["name"].get<std::string>());
    }
    if (!p.contains("status") || !p["status"].is_string()) {
      v.add(at + "/status", "missing string field");
      continue;
    }
    std::string vendor = p["status"].get<std::string>();
    auto mapped = map_external_status(vendor);
    if (mapped) {
      r.status = *mapped;
      if (p.contains("message")) {
        if (p["message"].is_string()) {
          r.message = p["message"].get<std::string>();
        } else {
          v.add(at + "/message", "must be a string");
        }
      }
    } else {
      r.status = ir::FormalStatus::kError;
      r.message = "unknown external status '" + vendor + "'";
      if (p.contains("message") && p["message"].is_string()) {
        r.message += ": " + p["message"].get<std::string>();
      }
    }
    if (p.contains("depth")) {
      if (!p["depth"].is_number_integer() || p["depth"].get<long long>() < 0) {
        v.add(at + "/depth", "must be a nonnegative integer");
      } else {
        r.proof_depth = p["depth"].get<int>();
      }
    }
    if (p.contains("runtime_ms")) {
      if (!p["runtime_ms"].is_number() || p["runtime_ms"].get<double>() < 0) {
        v.add(at + "/runtime_ms", "must be a nonnegative number");
      } else {
        r.runtime_ms = static_cast<std::int64_t>(std::llround(p["runtime_ms"].get<double>()));
      }
    }
    if (p.contains("vcd")) {
      if (!p["vcd"].is_string()) {
        v.add(at + "/vcd", "must be a string");
      } else {
        r.artifact_path = p["vcd"].get<std::string>();
      }
    }
    if (r.status == ir::FormalStatus::kCex && !r.artifact_path) {
      v.add(at + "/vcd", "required for failing properties");
    }
    out.push_back(std::move(r));
  }
  if (!v.ok()) throw ir::ValidationError(v);
  return out;
}

}  // namespace kgv::formal
