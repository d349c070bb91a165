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

#include "kgv/ir/json.hpp"

#include "reader.hpp"

namespace kgv::ir {

using detail::Reader;

namespace {

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json str(std::string_view s) { return Json(std::string(s)); }

}  // namespace

Json to_json(const SpecChunk& v) {
  return {{"chunk_id", v.chunk_id},
          {"heading_path", v.heading_path},
          {"text", v.text},
          {"semantic_tags", v.semantic_tags},
          {"order_index", v.order_index}};
}

Json to_json(const Requirement& v) {
  return {{"req_id", v.req_id},
          {"text", v.text},
          {"category", str(to_string(v.category))},
          {"priority", str(to_string(v.priority))},
          {"source_chunks", v.source_chunks}};
}

Json to_json(const TestPlanEntry& v) {
  return {{"req_id", v.req_id},
          {"observable_signals", v.observable_signals},
          {"stimulus", v.stimulus},
          {"expected_response", v.expected_response},
          {"timing_constraint", opt(v.timing_constraint)}};
}

Json to_json(const AttemptNote& v) {
  return {{"loop_kind", str(to_string(v.loop_kind))},
          {"attempt_no", v.attempt_no},
          {"diagnosis", v.diagnosis},
          {"patch_summary", v.patch_summary},
          {"outcome", str(to_string(v.outcome))}};
}

Json to_json(const PropertyRecord& v) {
  return {{"prop_id", v.prop_id},
          {"req_ids", v.req_ids},
          {"kind", str(sva::to_string(v.kind))},
          {"sva_text", v.sva_text},
          {"line_span", Json::array({v.line_span.first, v.line_span.second})},
          {"status", str(to_string(v.status))},
          {"attempt_history", to_json(v.attempt_history)}};
}

Json to_json(const PropertySet& v) {
  Json macros = Json::array();
  for (const auto& m : v.macros) macros.push_back({{"name", m.name}, {"text", m.text}});
  return {{"macros", macros}, {"default_clock", v.default_clock}, {"properties", to_json(v.properties)}};
}

Json to_json(const TraceLink& v) {
  return {{"src_id", v.src_id}, {"dst_id", v.dst_id}, {"link_kind", str(to_string(v.link_kind))}};
}

Json to_json(const FormalResult& v) {
  return {{"result_id", v.result_id},
          {"prop_id", v.prop_id},
          {"status", str(to_string(v.status))},
          {"proof_depth", opt(v.proof_depth)},
          {"runtime_ms", v.runtime_ms},
          {"artifact_path", opt(v.artifact_path)},
          {"message", v.message},
          {"iteration", v.iteration},
          {"external", v.external}};
}

Json to_json(const CexCase& v) {
  Json rc = v.root_cause ? str(to_string(*v.root_cause)) : Json(nullptr);
  return {{"cex_id", v.cex_id},
          {"prop_id", v.prop_id},
          {"result_id", v.result_id},
          {"vcd_path", v.vcd_path},
          {"failure_time", v.failure_time},
          {"failure_line", v.failure_line},
          {"attempts", to_json(v.attempts)},
          {"root_cause", rc},
          {"diagnosis", v.diagnosis}};
}

Json to_json(const CoverageMetrics& v) {
  Json dead = Json::array();
  for (const auto& d : v.dead_code) {
    dead.push_back({{"statement_id", d.statement_id}, {"classification", str(to_string(d.classification))}});
  }
  return {{"cov_id", v.cov_id},
          {"run_ref", v.run_ref},
          {"reachable_pct", v.reachable_pct},
          {"covered_statements", v.covered_statements},
          {"unreachable_statements", v.unreachable_statements},
          {"dead_code", dead},
          {"vacuity_count", v.vacuity_count},
          {"proof_core_ratio", opt(v.proof_core_ratio)},
          {"partial", v.partial}};
}

Json to_json(const RunContext& v) {
  Json paths = Json::object();
  for (const auto& [k, p] : v.artifact_paths) paths[k] = p;
  Json iters = Json::object();
  for (const auto& [k, n] : v.iteration_counts) iters[k] = n;
  return {{"run_id", v.run_id},
          {"artifact_paths", paths},
          {"iteration_counts", iters},
          {"tool_version", v.tool_version},
          {"created_at", v.created_at},
          {"config_snapshot", v.config_snapshot}};
}

Json to_json(const rtl::DesignModel& v) {
  Json modules = Json::array();
  for (const auto& m : v.modules) {
    Json ports = Json::array();
    for (const auto& p : m.ports) {
      ports.push_back({{"name", p.name}, {"dir", str(rtl::to_string(p.dir))}, {"width", p.width}});
    }
    Json signals = Json::array();
    for (const auto& s : m.signals) signals.push_back({{"name", s.name}, {"width", s.width}, {"is_reg", s.is_reg}});
    Json params = Json::array();
    for (const auto& p : m.parameters) params.push_back({{"name", p.name}, {"value", p.value}, {"local", p.local}});
    Json insts = Json::array();
    for (const auto& i : m.instances) {
      Json conns = Json::array();
      for (const auto& [port, e] : i.connections) conns.push_back(Json::array({port, e}));
      insts.push_back({{"name", i.name}, {"module", i.module}, {"connections", conns}});
    }
    modules.push_back({{"name", m.name},
                       {"file", m.file},
                       {"line", m.line},
                       {"ports", ports},
                       {"signals", signals},
                       {"parameters", params},
                       {"instances", insts}});
  }
  Json fsms = Json::array();
  for (const auto& f : v.fsms) {
    Json enc = Json::array();
    for (const auto& [n, x] : f.encoding) enc.push_back(Json::array({n, x}));
    fsms.push_back({{"module", f.module},
                    {"state_register", f.state_register},
                    {"encoding", enc},
                    {"transition_lines", f.transition_lines}});
  }
  Json stmts = Json::array();
  for (const auto& s : v.statements) {
    stmts.push_back({{"id", s.id}, {"module", s.module}, {"line", s.line}, {"kind", str(rtl::to_string(s.kind))}});
  }
  Json paths = Json::array();
  for (const auto& [p, w] : v.signal_paths) paths.push_back(Json::array({p, w}));
  Json sources = Json::array();
  for (const auto& s : v.sources) sources.push_back({{"path", s.path}, {"text", s.text}});
  return {{"modules", modules}, {"fsms", fsms},       {"statements", stmts},
          {"top", v.top},       {"signal_paths", paths}, {"sources", sources}};
}

bool has_artifact(const RunBundle& b, ArtifactKind kind) {
  switch (kind) {
    case ArtifactKind::kSpecChunks: return b.spec_chunks.has_value();
    case ArtifactKind::kRequirements: return b.requirements.has_value();
    case ArtifactKind::kTestPlan: return b.testplan.has_value();
    case ArtifactKind::kDesignModel: return b.design_model.has_value();
    case ArtifactKind::kProperties: return b.properties.has_value();
    case ArtifactKind::kTraceLinks: return b.tracelinks.has_value();
    case ArtifactKind::kFormalResults: return b.formal_results.has_value();
    case ArtifactKind::kCexCases: return b.cex_cases.has_value();
    case ArtifactKind::kCoverageMetrics: return b.coverage_metrics.has_value();
    case ArtifactKind::kRunContext: return true;
    case ArtifactKind::kNodes:
    case ArtifactKind::kEdges: return false;
  }
  return false;
}

Json artifact_document(const RunBundle& b, ArtifactKind kind) {
  if (!has_artifact(b, kind)) {
    throw Error("bundle has no " + std::string(artifact_name(kind)) + " document");
  }
  switch (kind) {
    case ArtifactKind::kSpecChunks: return to_json(*b.spec_chunks);
    case ArtifactKind::kRequirements: return to_json(*b.requirements);
    case ArtifactKind::kTestPlan: return to_json(*b.testplan);
    case ArtifactKind::kDesignModel: return to_json(*b.design_model);
    case ArtifactKind::kProperties: return to_json(*b.properties);
    case ArtifactKind::kTraceLinks: return to_json(*b.tracelinks);
    case ArtifactKind::kFormalResults: return to_json(*b.formal_results);
    case ArtifactKind::kCexCases: return to_json(*b.cex_cases);
    case ArtifactKind::kCoverageMetrics: return to_json(*b.coverage_metrics);
    case ArtifactKind::kRunContext: return to_json(b.context);
    default: break;
  }
  throw Error("unreachable artifact kind");
}

namespace {

SpecChunk read_chunk(Reader& r, const Json& v, const std::string& p) {
  SpecChunk c;
  if (!r.object(v, p, {"chunk_id", "heading_path", "text", "semantic_tags", "order_index"})) return c;
  c.chunk_id = r.str(v, p, "chunk_id");
  c.heading_path = r.strings(v, p, "heading_path");
  c.text = r.str(v, p, "text");
  c.semantic_tags = r.strings(v, p, "semantic_tags");
  c.order_index = static_cast<int>(r.integer(v, p, "order_index", 0));
  return c;
}

Requirement read_requirement(Reader& r, const Json& v, const std::string& p) {
  Requirement q;
  if (!r.object(v, p, {"req_id", "text", "category", "priority", "source_chunks"})) return q;
  q.req_id = r.str(v, p, "req_id");
  q.text = r.str(v, p, "text");
  q.category = r.enumeration(v, p, "category", parse_req_category, ReqCategory::kFunctional);
  q.priority = r.enumeration(v, p, "priority", parse_priority, Priority::kMedium);
  q.source_chunks = r.strings(v, p, "source_chunks");
  return q;
}

TestPlanEntry read_testplan(Reader& r, const Json& v, const std::string& p) {
  TestPlanEntry t;
  if (!r.object(v, p, {"req_id", "observable_signals", "stimulus", "expected_response", "timing_constraint"})) {
    return t;
  }
  t.req_id = r.str(v, p, "req_id");
  t.observable_signals = r.strings(v, p, "observable_signals");
  t.stimulus = r.str(v, p, "stimulus");
  t.expected_response = r.str(v, p, "expected_response");
  t.timing_constraint = r.opt_str(v, p, "timing_constraint");
  return t;
}

AttemptNote read_note(Reader& r, const Json& v, const std::string& p) {
  AttemptNote n;
  if (!r.object(v, p, {"loop_kind", "attempt_no", "diagnosis", "patch_summary", "outcome"})) return n;
  n.loop_kind = r.enumeration(v, p, "loop_kind", parse_loop_kind, LoopKind::kSyntax);
  n.attempt_no = static_cast<int>(r.integer(v, p, "attempt_no", 1, 3));
  n.diagnosis = r.str(v, p, "diagnosis");
  n.patch_summary = r.str(v, p, "patch_summary");
  n.outcome = r.enumeration(v, p, "outcome", parse_attempt_outcome, AttemptOutcome::kRetry);
  return n;
}

std::vector<AttemptNote> read_notes(Reader& r, const Json& v, const std::string& p, const char* key) {
  std::vector<AttemptNote> out;
  r.each(v, p, key, [&](const Json& e, const std::string& ep) { out.push_back(read_note(r, e, ep)); });
  return out;
}

PropertyRecord read_property(Reader& r, const Json& v, const std::string& p) {
  PropertyRecord x;
  if (!r.object(v, p, {"prop_id", "req_ids", "kind", "sva_text", "line_span", "status", "attempt_history"})) {
    return x;
  }
  x.prop_id = r.str(v, p, "prop_id");
  x.req_ids = r.strings(v, p, "req_ids");
  x.kind = r.enumeration(v, p, "kind", sva::parse_prop_kind, sva::PropKind::kAssertion);
  x.sva_text = r.str(v, p, "sva_text");
  if (!Reader::present(v, "line_span")) {
    r.fail(p + "/line_span", "missing field");
  } else {
    const Json& s = v.at("line_span");
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer()) {
      r.fail(p + "/line_span", "expected [start, end]");
    } else {
      x.line_span = {s[0].get<int>(), s[1].get<int>()};
    }
  }
  x.status = r.enumeration(v, p, "status", parse_prop_status, PropStatus::kActive);
  x.attempt_history = read_notes(r, v, p, "attempt_history");
  return x;
}

PropertySet read_property_set(Reader& r, const Json& v, const std::string& p) {
  PropertySet s;
  if (!r.object(v, p, {"macros", "default_clock", "properties"})) return s;
  r.each(v, p, "macros", [&](const Json& m, const std::string& mp) {
    if (!r.object(m, mp, {"name", "text"})) return;
    s.macros.push_back({r.str(m, mp, "name"), r.str(m, mp, "text")});
  });
  s.default_clock = r.str(v, p, "default_clock");
  r.each(v, p, "properties",
         [&](const Json& e, const std::string& ep) { s.properties.push_back(read_property(r, e, ep)); });
  return s;
}

TraceLink read_link(Reader& r, const Json& v, const std::string& p) {
  TraceLink l;
  if (!r.object(v, p, {"src_id", "dst_id", "link_kind"})) return l;
  l.src_id = r.str(v, p, "src_id");
  l.dst_id = r.str(v, p, "dst_id");
  l.link_kind = r.enumeration(v, p, "link_kind", parse_link_kind, LinkKind::kDerivesFrom);
  return l;
}

FormalResult read_result(Reader& r, const Json& v, const std::string& p) {
  FormalResult f;
  if (!r.object(v, p,
                {"result_id", "prop_id", "status", "proof_depth", "runtime_ms", "artifact_path", "message",
                 "iteration", "external"})) {
    return f;
  }
  f.result_id = r.str(v, p, "result_id");
  f.prop_id = r.str(v, p, "prop_id");
  f.status = r.enumeration(v, p, "status", parse_formal_status, FormalStatus::kError);
  if (auto d = r.opt_integer(v, p, "proof_depth", 0)) f.proof_depth = static_cast<int>(*d);
  f.runtime_ms = r.integer(v, p, "runtime_ms", 0, INT64_MAX);
  f.artifact_path = r.opt_str(v, p, "artifact_path");
  if (Reader::present(v, "message")) f.message = r.str(v, p, "message");
  if (Reader::present(v, "iteration")) f.iteration = static_cast<int>(r.integer(v, p, "iteration", 0));
  f.external = r.boolean(v, p, "external");
  return f;
}

CexCase read_cex(Reader& r, const Json& v, const std::string& p) {
  CexCase c;
  if (!r.object(v, p,
                {"cex_id", "prop_id", "result_id", "vcd_path", "failure_time", "failure_line", "attempts",
                 "root_cause", "diagnosis"})) {
    return c;
  }
  c.cex_id = r.str(v, p, "cex_id");
  c.prop_id = r.str(v, p, "prop_id");
  c.result_id = r.str(v, p, "result_id");
  c.vcd_path = r.str(v, p, "vcd_path");
  c.failure_time = r.integer(v, p, "failure_time", 0, INT64_MAX);
  c.failure_line = static_cast<int>(r.integer(v, p, "failure_line", 0));
  c.attempts = read_notes(r, v, p, "attempts");
  c.root_cause = r.opt_enumeration<RootCause>(v, p, "root_cause", parse_root_cause);
  if (Reader::present(v, "diagnosis")) c.diagnosis = r.str(v, p, "diagnosis");
  return c;
}

CoverageMetrics read_coverage(Reader& r, const Json& v, const std::string& p) {
  CoverageMetrics c;
  if (!r.object(v, p,
                {"cov_id", "run_ref", "reachable_pct", "covered_statements", "unreachable_statements",
                 "dead_code", "vacuity_count", "proof_core_ratio", "partial"})) {
    return c;
  }
  c.cov_id = r.str(v, p, "cov_id");
  c.run_ref = r.str(v, p, "run_ref");
  c.reachable_pct = r.number(v, p, "reachable_pct");
  c.covered_statements = r.strings(v, p, "covered_statements");
  c.unreachable_statements = r.strings(v, p, "unreachable_statements");
  r.each(v, p, "dead_code", [&](const Json& d, const std::string& dp) {
    if (!r.object(d, dp, {"statement_id", "classification"})) return;
    c.dead_code.push_back({r.str(d, dp, "statement_id"),
                           r.enumeration(d, dp, "classification", parse_dead_code_class, DeadCodeClass::kGap)});
  });
  c.vacuity_count = static_cast<int>(r.integer(v, p, "vacuity_count", 0));
  c.proof_core_ratio = r.opt_number(v, p, "proof_core_ratio");
  c.partial = r.boolean(v, p, "partial");
  return c;
}

RunContext read_context(Reader& r, const Json& v, const std::string& p) {
  RunContext c;
  if (!r.object(v, p, {"run_id", "artifact_paths", "iteration_counts", "tool_version", "created_at",
                       "config_snapshot"})) {
    return c;
  }
  c.run_id = r.str(v, p, "run_id");
  if (!Reader::present(v, "artifact_paths") || !v.at("artifact_paths").is_object()) {
    r.fail(p + "/artifact_paths", "expected object");
  } else {
    for (const auto& [k, x] : v.at("artifact_paths").items()) {
      if (!x.is_string()) {
        r.fail(p + "/artifact_paths/" + k, "expected string");
        continue;
      }
      c.artifact_paths[k] = x.get<std::string>();
    }
  }
  if (!Reader::present(v, "iteration_counts") || !v.at("iteration_counts").is_object()) {
    r.fail(p + "/iteration_counts", "expected object");
  } else {
    for (const auto& [k, x] : v.at("iteration_counts").items()) {
      if (!x.is_number_integer()) {
        r.fail(p + "/iteration_counts/" + k, "expected integer");
        continue;
      }
      c.iteration_counts[k] = x.get<int>();
    }
  }
  c.tool_version = r.str(v, p, "tool_version");
  c.created_at = r.str(v, p, "created_at");
  if (!Reader::present(v, "config_snapshot") || !v.at("config_snapshot").is_object()) {
    r.fail(p + "/config_snapshot", "expected object");
  } else {
    c.config_snapshot = v.at("config_snapshot");
  }
  return c;
}

std::optional<rtl::PortDir> parse_port_dir(std::string_view s) {
  if (s == rtl::to_string(rtl::PortDir::kInput)) return rtl::PortDir::kInput;
  if (s == rtl::to_string(rtl::PortDir::kOutput)) return rtl::PortDir::kOutput;
  return std::nullopt;
}

// [string, integer] pairs.
template <typename N>
std::vector<std::pair<std::string, N>> read_pairs(Reader& r, const Json& v, const std::string& p, const char* key) {
  std::vector<std::pair<std::string, N>> out;
  r.each(v, p, key, [&](const Json& e, const std::string& ep) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer()) {
      r.fail(ep, "expected [name, integer]");
      return;
    }
    out.emplace_back(e[0].get<std::string>(), e[1].get<N>());
  });
  return out;
}

rtl::DesignModel read_design(Reader& r, const Json& v, const std::string& p) {
  rtl::DesignModel d;
  if (!r.object(v, p, {"modules", "fsms", "statements", "top", "signal_paths", "sources"})) return d;
  r.each(v, p, "modules", [&](const Json& m, const std::string& mp) {
    rtl::ModuleDecl md;
    if (!r.object(m, mp, {"name", "file", "line", "ports", "signals", "parameters", "instances"})) return;
    md.name = r.str(m, mp, "name");
    md.file = r.str(m, mp, "file");
    md.line = static_cast<int>(r.integer(m, mp, "line", 0));
    r.each(m, mp, "ports", [&](const Json& e, const std::string& ep) {
      if (!r.object(e, ep, {"name", "dir", "width"})) return;
      md.ports.push_back({r.str(e, ep, "name"), r.enumeration(e, ep, "dir", parse_port_dir, rtl::PortDir::kInput),
                          static_cast<int>(r.integer(e, ep, "width", 1, 64))});
    });
    r.each(m, mp, "signals", [&](const Json& e, const std::string& ep) {
      if (!r.object(e, ep, {"name", "width", "is_reg"})) return;
      md.signals.push_back(
          {r.str(e, ep, "name"), static_cast<int>(r.integer(e, ep, "width", 1, 64)), r.boolean(e, ep, "is_reg")});
    });
    r.each(m, mp, "parameters", [&](const Json& e, const std::string& ep) {
      if (!r.object(e, ep, {"name", "value", "local"})) return;
      md.parameters.push_back(
          {r.str(e, ep, "name"), r.integer(e, ep, "value", INT64_MIN, INT64_MAX), r.boolean(e, ep, "local")});
    });
    r.each(m, mp, "instances", [&](const Json& e, const std::string& ep) {
      if (!r.object(e, ep, {"name", "module", "connections"})) return;
      rtl::InstanceInfo inst{r.str(e, ep, "name"), r.str(e, ep, "module"), {}};
      r.each(e, ep, "connections", [&](const Json& c, const std::string& cp) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string()) {
          r.fail(cp, "expected [port, expression]");
          return;
        }
        inst.connections.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
      });
      md.instances.push_back(std::move(inst));
    });
    d.modules.push_back(std::move(md));
  });
  r.each(v, p, "fsms", [&](const Json& f, const std::string& fp) {
    if (!r.object(f, fp, {"module", "state_register", "encoding", "transition_lines"})) return;
    rtl::FsmDesc fd;
    fd.module = r.str(f, fp, "module");
    fd.state_register = r.str(f, fp, "state_register");
    fd.encoding = read_pairs<std::int64_t>(r, f, fp, "encoding");
    r.each(f, fp, "transition_lines", [&](const Json& e, const std::string& ep) {
      if (!e.is_number_integer()) {
        r.fail(ep, "expected integer");
        return;
      }
      fd.transition_lines.push_back(e.get<int>());
    });
    d.fsms.push_back(std::move(fd));
  });
  r.each(v, p, "statements", [&](const Json& s, const std::string& sp) {
    if (!r.object(s, sp, {"id", "module", "line", "kind"})) return;
    d.statements.push_back({r.str(s, sp, "id"), r.str(s, sp, "module"), static_cast<int>(r.integer(s, sp, "line", 0)),
                            r.enumeration(s, sp, "kind", rtl::parse_statement_kind, rtl::StatementKind::kAssign)});
  });
  d.top = r.str(v, p, "top");
  d.signal_paths = read_pairs<int>(r, v, p, "signal_paths");
  r.each(v, p, "sources", [&](const Json& s, const std::string& sp) {
    if (!r.object(s, sp, {"path", "text"})) return;
    d.sources.push_back({r.str(s, sp, "path"), r.str(s, sp, "text")});
  });
  return d;
}

template <typename T, typename F>
std::vector<T> read_list(Reader& r, const Json& doc, F read_one) {
  std::vector<T> out;
  r.each_of(doc, "", [&](const Json& e, const std::string& p) { out.push_back(read_one(r, e, p)); });
  return out;
}

template <typename T, typename F>
T decode_or_throw(const Json& doc, F read_one) {
  ValidationReport rep;
  Reader r(rep);
  T v = read_one(r, doc, "");
  if (!rep.ok()) throw ValidationError(rep);
  return v;
}

}  // namespace

void decode_artifact(const Json& doc, ArtifactKind kind, RunBundle& into, ValidationReport& report) {
  Reader r(report);
  switch (kind) {
    case ArtifactKind::kSpecChunks: into.spec_chunks = read_list<SpecChunk>(r, doc, read_chunk); return;
    case ArtifactKind::kRequirements:
      into.requirements = read_list<Requirement>(r, doc, read_requirement);
      return;
    case ArtifactKind::kTestPlan: into.testplan = read_list<TestPlanEntry>(r, doc, read_testplan); return;
    case ArtifactKind::kDesignModel: into.design_model = read_design(r, doc, ""); return;
    case ArtifactKind::kProperties: into.properties = read_property_set(r, doc, ""); return;
    case ArtifactKind::kTraceLinks: into.tracelinks = read_list<TraceLink>(r, doc, read_link); return;
    case ArtifactKind::kFormalResults:
      into.formal_results = read_list<FormalResult>(r, doc, read_result);
      return;
    case ArtifactKind::kCexCases: into.cex_cases = read_list<CexCase>(r, doc, read_cex); return;
    case ArtifactKind::kCoverageMetrics:
      into.coverage_metrics = read_list<CoverageMetrics>(r, doc, read_coverage);
      return;
    case ArtifactKind::kRunContext: into.context = read_context(r, doc, ""); return;
    case ArtifactKind::kNodes:
    case ArtifactKind::kEdges: break;
  }
  throw Error("decode_artifact: " + std::string(artifact_name(kind)) + " is a graph table");
}

template <>
SpecChunk from_json<SpecChunk>(const Json& doc) {
  return decode_or_throw<SpecChunk>(doc, read_chunk);
}
template <>
Requirement from_json<Requirement>(const Json& doc) {
  return decode_or_throw<Requirement>(doc, read_requirement);
}
template <>
PropertyRecord from_json<PropertyRecord>(const Json& doc) {
  return decode_or_throw<PropertyRecord>(doc, read_property);
}
template <>
FormalResult from_json<FormalResult>(const Json& doc) {
  return decode_or_throw<FormalResult>(doc, read_result);
}
template <>
CexCase from_json<CexCase>(const Json& doc) {
  return decode_or_throw<CexCase>(doc, read_cex);
}
template <>
CoverageMetrics from_json<CoverageMetrics>(const Json& doc) {
  return decode_or_throw<CoverageMetrics>(doc, read_coverage);
}

}  // namespace kgv::ir
