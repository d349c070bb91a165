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

#include "kgv/ir/validate.hpp"

#include <cmath>
#include <map>
#include <regex>
#include <set>

#include "kgv/ir/graph_rows.hpp"
#include "kgv/ir/json.hpp"
#include "reader.hpp"

namespace kgv::ir {

std::string ValidationReport::format() const {
  std::string out;
  for (const auto& v : violations) {
    out += (v.path.empty() ? "/" : v.path) + ": " + v.message + "\n";
  }
  return out;
}

ValidationError::ValidationError(ValidationReport report)
    : Error("validation failed:\n" + report.format()), report_(std::move(report)) {}

std::optional<std::string_view> node_type_from_id(std::string_view id) {
  static const std::regex kStatement("S[0-9]+");
  auto has = [&](std::string_view p) { return id.substr(0, p.size()) == p && id.size() > p.size(); };
  if (has("CHUNK-")) return kNodeSpecChunk;
  if (has("REQ-")) return kNodeRequirement;
  if (has("PROP-") || has("ANON-")) return kNodeProperty;
  if (has("RES-")) return kNodeFormalResult;
  if (has("CEX-")) return kNodeCexCase;
  if (has("COV-")) return kNodeCoverage;
  if (std::regex_match(id.begin(), id.end(), kStatement)) return kNodeStatement;
  return std::nullopt;
}

bool endpoint_kinds_ok(LinkKind kind, std::string_view src_type, std::string_view dst_type) {
  switch (kind) {
    case LinkKind::kDerivesFrom: return src_type == kNodeRequirement && dst_type == kNodeSpecChunk;
    case LinkKind::kValidates: return src_type == kNodeProperty && dst_type == kNodeRequirement;
    case LinkKind::kProves:
    case LinkKind::kFails: return src_type == kNodeFormalResult && dst_type == kNodeProperty;
    case LinkKind::kCovers:
      return src_type == kNodeProperty && (dst_type == kNodeCoverage || dst_type == kNodeStatement);
  }
  return false;
}

namespace {

std::string at(const std::string& base, std::size_t i, const char* field = nullptr) {
  std::string p = base + "/" + std::to_string(i);
  if (field) p += std::string("/") + field;
  return p;
}

template <typename T, typename Key>
void unique_ids(const std::vector<T>& xs, Key key, const char* field, ValidationReport& rep) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::string& id = key(xs[i]);
    if (id.empty()) {
      rep.add(at("", i, field), "empty identifier");
    } else if (!seen.insert(id).second) {
      rep.add(at("", i, field), "duplicate identifier '" + id + "'");
    }
  }
}

// attempt_no 1..3, strictly increasing per loop kind, at most three per kind.
void check_notes(const std::vector<AttemptNote>& notes, const std::string& path, ValidationReport& rep) {
  std::map<LoopKind, std::pair<int, int>> per_kind;  // count, last attempt_no
  for (std::size_t i = 0; i < notes.size(); ++i) {
    auto& [count, last] = per_kind[notes[i].loop_kind];
    ++count;
    if (notes[i].attempt_no <= last) rep.add(at(path, i, "attempt_no"), "attempt_no not strictly increasing");
    last = notes[i].attempt_no;
    if (count == 4) rep.add(at(path, i), "more than 3 attempts for loop kind " + std::string(to_string(notes[i].loop_kind)));
  }
}

void check_chunks(const std::vector<SpecChunk>& xs, ValidationReport& rep) {
  unique_ids(xs, [](const auto& x) { return x.chunk_id; }, "chunk_id", rep);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].heading_path.empty()) rep.add(at("", i, "heading_path"), "heading_path non-empty");
    if (i > 0 && xs[i].order_index <= xs[i - 1].order_index) {
      rep.add(at("", i, "order_index"), "order_index not strictly increasing");
    }
  }
}

void check_requirements(const std::vector<Requirement>& xs, ValidationReport& rep) {
  unique_ids(xs, [](const auto& x) { return x.req_id; }, "req_id", rep);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].source_chunks.empty()) rep.add(at("", i, "source_chunks"), "source_chunks non-empty");
  }
}

void check_testplan(const std::vector<TestPlanEntry>& xs, ValidationReport& rep) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].req_id.empty()) rep.add(at("", i, "req_id"), "empty identifier");
  }
}

void check_properties(const PropertySet& s, ValidationReport& rep) {
  const std::string base = "/properties";
  std::set<std::string> seen;
  std::set<std::string> macro_names;
  for (std::size_t i = 0; i < s.macros.size(); ++i) {
    if (s.macros[i].name.empty() || !macro_names.insert(s.macros[i].name).second) {
      rep.add(at("/macros", i, "name"), "empty or duplicate macro name");
    }
  }
  std::vector<std::pair<std::pair<int, int>, std::size_t>> spans;
  for (std::size_t i = 0; i < s.properties.size(); ++i) {
    const auto& p = s.properties[i];
    if (p.prop_id.empty()) {
      rep.add(at(base, i, "prop_id"), "empty identifier");
    } else if (!seen.insert(p.prop_id).second) {
      rep.add(at(base, i, "prop_id"), "duplicate identifier '" + p.prop_id + "'");
    }
    if (p.sva_text.empty()) rep.add(at(base, i, "sva_text"), "sva_text non-empty");
    auto [a, b] = p.line_span;
    if (a < 1 || b < a) {
      rep.add(at(base, i, "line_span"), "invalid line span");
    } else {
      spans.push_back({p.line_span, i});
    }
    check_notes(p.attempt_history, at(base, i, "attempt_history"), rep);
  }
  std::sort(spans.begin(), spans.end());
  for (std::size_t k = 1; k < spans.size(); ++k) {
    if (spans[k].first.first <= spans[k - 1].first.second) {
      rep.add(at(base, spans[k].second, "line_span"), "line span overlaps another property");
    }
  }
}

void check_links(const std::vector<TraceLink>& xs, ValidationReport& rep) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& l = xs[i];
    if (l.src_id.empty()) rep.add(at("", i, "src_id"), "empty identifier");
    if (l.dst_id.empty()) rep.add(at("", i, "dst_id"), "empty identifier");
    auto st = node_type_from_id(l.src_id);
    auto dt = node_type_from_id(l.dst_id);
    // Identifiers outside the standard scheme are checked by validate_bundle.
    if (!st || !dt) continue;
    if (!endpoint_kinds_ok(l.link_kind, *st, *dt)) {
      rep.add(at("", i), "endpoint kind mismatch: " + std::string(to_string(l.link_kind)) + " from " +
                             std::string(*st) + " to " + std::string(*dt));
    }
  }
}

void check_results(const std::vector<FormalResult>& xs, ValidationReport& rep) {
  unique_ids(xs, [](const auto& x) { return x.result_id; }, "result_id", rep);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].prop_id.empty()) rep.add(at("", i, "prop_id"), "empty identifier");
    if (xs[i].status == FormalStatus::kCex && (!xs[i].artifact_path || xs[i].artifact_path->empty())) {
      rep.add(at("", i, "artifact_path"), "status cex requires artifact_path");
    }
  }
}

void check_cex(const std::vector<CexCase>& xs, ValidationReport& rep) {
  unique_ids(xs, [](const auto& x) { return x.cex_id; }, "cex_id", rep);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& c = xs[i];
    if (c.prop_id.empty()) rep.add(at("", i, "prop_id"), "empty identifier");
    if (c.vcd_path.empty()) rep.add(at("", i, "vcd_path"), "vcd_path non-empty");
    if (c.attempts.size() > 3) rep.add(at("", i, "attempts"), "more than 3 attempts");
    check_notes(c.attempts, at("", i, "attempts"), rep);
    if (c.root_cause && c.diagnosis.empty()) rep.add(at("", i, "root_cause"), "root_cause set without a diagnosis");
  }
}

void check_coverage(const std::vector<CoverageMetrics>& xs, ValidationReport& rep) {
  unique_ids(xs, [](const auto& x) { return x.cov_id; }, "cov_id", rep);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& c = xs[i];
    std::set<std::string> cov(c.covered_statements.begin(), c.covered_statements.end());
    std::set<std::string> unr(c.unreachable_statements.begin(), c.unreachable_statements.end());
    if (cov.size() != c.covered_statements.size()) rep.add(at("", i, "covered_statements"), "duplicate statement");
    if (unr.size() != c.unreachable_statements.size()) {
      rep.add(at("", i, "unreachable_statements"), "duplicate statement");
    }
    for (const auto& s : cov) {
      if (unr.count(s)) rep.add(at("", i, "unreachable_statements"), "statement " + s + " both covered and unreachable");
    }
    double total = static_cast<double>(cov.size() + unr.size());
    double want = total == 0 ? 100.0 : 100.0 * static_cast<double>(cov.size()) / total;
    if (!(c.reachable_pct >= 0.0 && c.reachable_pct <= 100.0)) {
      rep.add(at("", i, "reachable_pct"), "percentage out of range");
    } else if (std::fabs(c.reachable_pct - want) > 0.05) {
      rep.add(at("", i, "reachable_pct"), "reachable_pct inconsistent with statement lists");
    }
    if (c.proof_core_ratio && !(*c.proof_core_ratio >= 0.0 && *c.proof_core_ratio <= 100.0)) {
      rep.add(at("", i, "proof_core_ratio"), "percentage out of range");
    }
    for (std::size_t k = 0; k < c.dead_code.size(); ++k) {
      if (!unr.count(c.dead_code[k].statement_id)) {
        rep.add(at(at("", i, "dead_code"), k, "statement_id"), "dead code entry is not an unreachable statement");
      }
    }
  }
}

void check_context(const RunContext& c, ValidationReport& rep) {
  static const std::regex kRunId("[0-9]{8}T[0-9]{6}Z-[0-9a-f]{8}");
  static const std::regex kTime("[0-9]{4}-[0-9]{2}-[0-9]{2}T[0-9]{2}:[0-9]{2}:[0-9]{2}Z");
  if (!c.run_id.empty() && !std::regex_match(c.run_id, kRunId)) rep.add("/run_id", "malformed run_id");
  if (!c.created_at.empty() && !std::regex_match(c.created_at, kTime)) rep.add("/created_at", "malformed timestamp");
  for (const auto& [k, _] : c.artifact_paths) {
    if (!parse_artifact_kind(k)) rep.add("/artifact_paths/" + k, "unknown artifact kind");
  }
  for (const auto& [k, n] : c.iteration_counts) {
    if (!parse_loop_kind(k)) rep.add("/iteration_counts/" + k, "unknown loop kind");
    if (n < 0) rep.add("/iteration_counts/" + k, "must be nonnegative");
  }
}

void check_design(const rtl::DesignModel& d, ValidationReport& rep) {
  std::set<std::string> mods;
  for (std::size_t i = 0; i < d.modules.size(); ++i) {
    if (!mods.insert(d.modules[i].name).second) rep.add(at("/modules", i, "name"), "duplicate module");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < d.statements.size(); ++i) {
    if (!ids.insert(d.statements[i].id).second) rep.add(at("/statements", i, "id"), "duplicate identifier");
    if (!mods.count(d.statements[i].module)) rep.add(at("/statements", i, "module"), "unknown module");
  }
  if (!d.top.empty() && !mods.count(d.top)) rep.add("/top", "unknown module");
  std::set<std::string> paths;
  for (std::size_t i = 0; i < d.signal_paths.size(); ++i) {
    if (!paths.insert(d.signal_paths[i].first).second) rep.add(at("/signal_paths", i), "duplicate signal path");
  }
}

void check_rows(const Json& doc, ArtifactKind kind, ValidationReport& rep) {
  detail::Reader r(rep);
  bool nodes = kind == ArtifactKind::kNodes;
  std::set<std::string> seen;
  r.each_of(doc, "", [&](const Json& row, const std::string& p) {
    if (nodes) {
      if (!r.object(row, p, {"id", "type", "run_id", "attributes"})) return;
      std::string id = r.str(row, p, "id");
      if (id.empty()) r.fail(p + "/id", "empty identifier");
      if (!seen.insert(id).second) r.fail(p + "/id", "duplicate identifier '" + id + "'");
    } else {
      if (!r.object(row, p, {"src", "dst", "type", "run_id", "attributes"})) return;
      r.str(row, p, "src");
      r.str(row, p, "dst");
    }
    r.str(row, p, "type");
    r.str(row, p, "run_id");
    if (!row.contains("attributes") || !row.at("attributes").is_object()) r.fail(p + "/attributes", "expected object");
  });
}

void prefixed(const ValidationReport& in, const std::string& prefix, ValidationReport& out) {
  for (const auto& v : in.violations) out.add(prefix + v.path, v.message);
}

}  // namespace

ValidationReport validate_artifact(const Json& doc, ArtifactKind kind) {
  ValidationReport rep;
  if (kind == ArtifactKind::kNodes || kind == ArtifactKind::kEdges) {
    check_rows(doc, kind, rep);
    return rep;
  }
  RunBundle b;
  decode_artifact(doc, kind, b, rep);
  switch (kind) {
    case ArtifactKind::kSpecChunks: check_chunks(*b.spec_chunks, rep); break;
    case ArtifactKind::kRequirements: check_requirements(*b.requirements, rep); break;
    case ArtifactKind::kTestPlan: check_testplan(*b.testplan, rep); break;
    case ArtifactKind::kDesignModel: check_design(*b.design_model, rep); break;
    case ArtifactKind::kProperties: check_properties(*b.properties, rep); break;
    case ArtifactKind::kTraceLinks: check_links(*b.tracelinks, rep); break;
    case ArtifactKind::kFormalResults: check_results(*b.formal_results, rep); break;
    case ArtifactKind::kCexCases: check_cex(*b.cex_cases, rep); break;
    case ArtifactKind::kCoverageMetrics: check_coverage(*b.coverage_metrics, rep); break;
    case ArtifactKind::kRunContext: check_context(b.context, rep); break;
    default: break;
  }
  return rep;
}

ValidationReport validate_artifact_text(std::string_view text, ArtifactKind kind) {
  ValidationReport rep;
  if (kind == ArtifactKind::kNodes || kind == ArtifactKind::kEdges) {
    try {
      Json rows = Json::array();
      if (kind == ArtifactKind::kNodes) {
        for (const auto& n : parse_nodes_csv(text)) rows.push_back(to_json(n));
      } else {
        for (const auto& e : parse_edges_csv(text)) rows.push_back(to_json(e));
      }
      return validate_artifact(rows, kind);
    } catch (const CsvError& e) {
      rep.add("", e.what());
    }
    return rep;
  }
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    rep.add("", "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    return rep;
  }
  return validate_artifact(doc, kind);
}

ValidationReport validate_bundle(const RunBundle& b) {
  ValidationReport rep;
  for (ArtifactKind k : all_artifact_kinds()) {
    if (!has_artifact(b, k)) continue;
    prefixed(validate_artifact(artifact_document(b, k), k), "/" + std::string(artifact_name(k)), rep);
  }

  // Identifier -> node type over the whole bundle.
  std::map<std::string, std::string_view> type_of;
  auto reg = [&](const std::string& id, std::string_view t) { type_of.emplace(id, t); };
  if (b.spec_chunks) for (const auto& x : *b.spec_chunks) reg(x.chunk_id, kNodeSpecChunk);
  if (b.requirements) for (const auto& x : *b.requirements) reg(x.req_id, kNodeRequirement);
  if (b.properties) for (const auto& x : b.properties->properties) reg(x.prop_id, kNodeProperty);
  if (b.formal_results) for (const auto& x : *b.formal_results) reg(x.result_id, kNodeFormalResult);
  if (b.cex_cases) for (const auto& x : *b.cex_cases) reg(x.cex_id, kNodeCexCase);
  if (b.coverage_metrics) for (const auto& x : *b.coverage_metrics) reg(x.cov_id, kNodeCoverage);
  if (b.design_model) for (const auto& x : b.design_model->statements) reg(x.id, kNodeStatement);

  auto expect = [&](const std::string& path, const std::string& id, std::string_view type) {
    auto it = type_of.find(id);
    if (it == type_of.end()) {
      rep.add(path, "dangling reference '" + id + "'");
    } else if (it->second != type) {
      rep.add(path, "'" + id + "' is a " + std::string(it->second) + ", expected " + std::string(type));
    }
  };

  if (b.requirements) {
    for (std::size_t i = 0; i < b.requirements->size(); ++i) {
      const auto& sc = (*b.requirements)[i].source_chunks;
      for (std::size_t k = 0; k < sc.size(); ++k) {
        expect(at(at("/requirements", i, "source_chunks"), k), sc[k], kNodeSpecChunk);
      }
    }
  }
  if (b.testplan) {
    for (std::size_t i = 0; i < b.testplan->size(); ++i) {
      expect(at("/testplan", i, "req_id"), (*b.testplan)[i].req_id, kNodeRequirement);
    }
  }
  if (b.properties) {
    const auto& ps = b.properties->properties;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::size_t k = 0; k < ps[i].req_ids.size(); ++k) {
        expect(at(at("/properties/properties", i, "req_ids"), k), ps[i].req_ids[k], kNodeRequirement);
      }
    }
  }
  if (b.tracelinks) {
    for (std::size_t i = 0; i < b.tracelinks->size(); ++i) {
      const auto& l = (*b.tracelinks)[i];
      auto s = type_of.find(l.src_id);
      auto d = type_of.find(l.dst_id);
      std::string path = at("/tracelinks", i);
      if (s == type_of.end()) rep.add(path + "/src_id", "dangling reference '" + l.src_id + "'");
      if (d == type_of.end()) rep.add(path + "/dst_id", "dangling reference '" + l.dst_id + "'");
      if (s != type_of.end() && d != type_of.end() && !endpoint_kinds_ok(l.link_kind, s->second, d->second)) {
        rep.add(path, "endpoint kind mismatch: " + std::string(to_string(l.link_kind)) + " from " +
                          std::string(s->second) + " to " + std::string(d->second));
      }
    }
  }
  std::set<std::string> proven;
  if (b.formal_results) {
    for (std::size_t i = 0; i < b.formal_results->size(); ++i) {
      const auto& r = (*b.formal_results)[i];
      expect(at("/formal_results", i, "prop_id"), r.prop_id, kNodeProperty);
      if (r.status == FormalStatus::kProven) proven.insert(r.result_id);
    }
  }
  if (b.cex_cases) {
    for (std::size_t i = 0; i < b.cex_cases->size(); ++i) {
      const auto& c = (*b.cex_cases)[i];
      expect(at("/cex_cases", i, "prop_id"), c.prop_id, kNodeProperty);
      if (!c.result_id.empty()) {
        expect(at("/cex_cases", i, "result_id"), c.result_id, kNodeFormalResult);
        if (proven.count(c.result_id)) rep.add(at("/cex_cases", i, "result_id"), "references a proven result");
      }
    }
  }
  if (b.coverage_metrics && b.design_model) {
    for (std::size_t i = 0; i < b.coverage_metrics->size(); ++i) {
      const auto& c = (*b.coverage_metrics)[i];
      for (const auto* list : {&c.covered_statements, &c.unreachable_statements}) {
        for (const auto& s : *list) {
          if (!type_of.count(s)) rep.add(at("/coverage_metrics", i), "dangling reference '" + s + "'");
        }
      }
    }
  }
  if (!b.context.artifact_paths.empty()) {
    for (ArtifactKind k : all_artifact_kinds()) {
      if (has_artifact(b, k) && !b.context.artifact_paths.count(std::string(artifact_name(k)))) {
        rep.add("/run_context/artifact_paths", "no path for present artifact " + std::string(artifact_name(k)));
      }
    }
  }
  return rep;
}

}  // namespace kgv::ir
