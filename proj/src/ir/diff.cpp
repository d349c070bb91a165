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

#include "kgv/ir/diff.hpp"

#include "kgv/ir/json.hpp"

namespace kgv::ir {
namespace {

using Items = std::map<std::string, std::string>;  // id -> serialized record

template <typename T, typename Key>
Items items(const std::optional<std::vector<T>>& xs, Key key) {
  Items out;
  if (!xs) return out;
  std::map<std::string, int> seen;
  for (const auto& x : *xs) {
    std::string id = key(x);
    int n = seen[id]++;
    if (n > 0) id += "#" + std::to_string(n + 1);
    out[id] = to_json(x).dump();
  }
  return out;
}

Items design_items(const std::optional<rtl::DesignModel>& d) {
  Items out;
  if (!d) return out;
  Json doc = to_json(*d);
  for (const auto& m : doc["modules"]) out["module:" + m["name"].get<std::string>()] = m.dump();
  for (const auto& s : doc["statements"]) out["statement:" + s["id"].get<std::string>()] = s.dump();
  for (const auto& f : doc["fsms"]) {
    out["fsm:" + f["module"].get<std::string>() + "." + f["state_register"].get<std::string>()] = f.dump();
  }
  for (const auto& p : doc["signal_paths"]) out["signal:" + p[0].get<std::string>()] = p.dump();
  for (const auto& s : doc["sources"]) out["source:" + s["path"].get<std::string>()] = s.dump();
  out["top"] = doc["top"].dump();
  return out;
}

Items property_items(const std::optional<PropertySet>& s) {
  Items out;
  if (!s) return out;
  for (const auto& p : s->properties) out[p.prop_id] = to_json(p).dump();
  for (const auto& m : s->macros) out["macro:" + m.name] = m.text;
  out["default_clock"] = s->default_clock;
  return out;
}

KindDiff compare(const Items& a, const Items& b) {
  KindDiff d;
  for (const auto& [id, v] : a) {
    auto it = b.find(id);
    if (it == b.end()) {
      d.removed.push_back(id);
    } else if (it->second != v) {
      d.changed.push_back(id);
    }
  }
  for (const auto& [id, _] : b) {
    if (!a.count(id)) d.added.push_back(id);
  }
  return d;
}

}  // namespace

std::map<std::string, FormalStatus> latest_status(const std::vector<FormalResult>& results) {
  std::map<std::string, std::pair<int, FormalStatus>> best;
  for (const auto& r : results) {
    auto it = best.find(r.prop_id);
    if (it == best.end() || r.iteration >= it->second.first) best[r.prop_id] = {r.iteration, r.status};
  }
  std::map<std::string, FormalStatus> out;
  for (const auto& [p, v] : best) out[p] = v.second;
  return out;
}

RunDiff diff_runs(const RunBundle& a, const RunBundle& b) {
  RunDiff d;
  auto add = [&](ArtifactKind k, const Items& x, const Items& y) {
    KindDiff kd = compare(x, y);
    if (!kd.empty()) d.kinds[std::string(artifact_name(k))] = std::move(kd);
  };
  add(ArtifactKind::kSpecChunks, items(a.spec_chunks, [](const auto& x) { return x.chunk_id; }),
      items(b.spec_chunks, [](const auto& x) { return x.chunk_id; }));
  add(ArtifactKind::kRequirements, items(a.requirements, [](const auto& x) { return x.req_id; }),
      items(b.requirements, [](const auto& x) { return x.req_id; }));
  add(ArtifactKind::kTestPlan, items(a.testplan, [](const auto& x) { return x.req_id; }),
      items(b.testplan, [](const auto& x) { return x.req_id; }));
  add(ArtifactKind::kDesignModel, design_items(a.design_model), design_items(b.design_model));
  add(ArtifactKind::kProperties, property_items(a.properties), property_items(b.properties));
  auto link_key = [](const TraceLink& l) {
    return l.src_id + " " + std::string(to_string(l.link_kind)) + " " + l.dst_id;
  };
  add(ArtifactKind::kTraceLinks, items(a.tracelinks, link_key), items(b.tracelinks, link_key));
  add(ArtifactKind::kFormalResults, items(a.formal_results, [](const auto& x) { return x.result_id; }),
      items(b.formal_results, [](const auto& x) { return x.result_id; }));
  add(ArtifactKind::kCexCases, items(a.cex_cases, [](const auto& x) { return x.cex_id; }),
      items(b.cex_cases, [](const auto& x) { return x.cex_id; }));
  add(ArtifactKind::kCoverageMetrics, items(a.coverage_metrics, [](const auto& x) { return x.cov_id; }),
      items(b.coverage_metrics, [](const auto& x) { return x.cov_id; }));

  auto sa = latest_status(a.formal_results.value_or(std::vector<FormalResult>{}));
  auto sb = latest_status(b.formal_results.value_or(std::vector<FormalResult>{}));
  for (const auto& [p, from] : sa) {
    auto it = sb.find(p);
    if (it != sb.end() && it->second != from) d.transitions.push_back({p, from, it->second});
  }
  return d;
}

Json to_json(const RunDiff& d) {
  Json kinds = Json::object();
  for (const auto& [k, kd] : d.kinds) {
    kinds[k] = {{"added", kd.added}, {"removed", kd.removed}, {"changed", kd.changed}};
  }
  Json tr = Json::array();
  for (const auto& t : d.transitions) {
    tr.push_back({{"prop_id", t.prop_id},
                  {"from", std::string(to_string(t.from))},
                  {"to", std::string(to_string(t.to))}});
  }
  return {{"kinds", kinds}, {"transitions", tr}};
}

}  // namespace kgv::ir
