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

#include "kgv/orch/run.hpp"

#include <algorithm>
#include <iomanip>
#include <regex>
#include <sstream>

#include "kgv/agents/propfile.hpp"
#include "kgv/agents/scripts.hpp"
#include "kgv/base/text.hpp"
#include "kgv/ir/graph_rows.hpp"
#include "kgv/ir/store.hpp"
#include "kgv/ir/validate.hpp"
#include "kgv/rtl/netmodel.hpp"
#include "kgv/vcd/vcd.hpp"

namespace kgv::orch {

namespace fs = std::filesystem;
using agents::Role;
using agents::Section;

// ---- config ----

std::vector<std::string> RunConfig::problems() const {
  std::vector<std::string> out;
  auto need = [&](const std::string& p, const char* what) {
    if (p.empty()) {
      out.push_back(std::string(what) + " is required");
    } else if (!fs::exists(p)) {
      out.push_back(std::string(what) + " '" + p + "' does not exist");
    }
  };
  need(spec_path, "spec");
  if (rtl_paths.empty()) out.push_back("at least one rtl file is required");
  for (const auto& r : rtl_paths) need(r, "rtl");
  if (!rulebook_path.empty() && !fs::exists(rulebook_path)) out.push_back("rulebook '" + rulebook_path + "' does not exist");
  if (top.empty()) out.push_back("top is required");
  if (backend != "live" && backend != "scripted" && backend != "replay") out.push_back("unknown backend '" + backend + "'");
  if (backend == "replay") need(transcript_path, "transcript");
  if (bounds.radius < 0) out.push_back("radius must be non-negative");
  if (max_states == 0) out.push_back("max-states must be positive");
  if (max_depth <= 0) out.push_back("max-depth must be positive");
  if (cex_iters <= 0) out.push_back("cex-iters must be positive");
  if (cov_iters <= 0) out.push_back("cov-iters must be positive");
  return out;
}

Json RunConfig::snapshot() const {
  return {{"spec", spec_path},
          {"rtl", rtl_paths},
          {"top", top},
          {"rulebook", rulebook_path},
          {"backend", backend},
          {"radius", bounds.radius},
          {"type_cap", bounds.type_cap},
          {"max_states", max_states},
          {"max_depth", max_depth},
          {"cex_iters", cex_iters},
          {"cov_iters", cov_iters},
          {"prompt_budget", prompt_budget}};
}

// ---- ingest ----

std::vector<ir::SpecChunk> chunk_spec(const std::string& text) {
  if (trim(text).empty()) throw Error("spec: empty document");
  static const std::regex kHeading(R"(^(#{1,6})\s+(.*\S)\s*$)");
  std::vector<ir::SpecChunk> out;
  std::vector<std::pair<int, std::string>> stack;
  std::vector<std::string> body;
  bool open = false;
  std::vector<std::string> path;

  auto flush = [&]() {
    std::string t = trim(join(body, "\n"));
    body.clear();
    if (!open) {
      if (t.empty()) return;
      path = {"(root)"};
    }
    ir::SpecChunk c;
    c.chunk_id = make_id("CHUNK", static_cast<int>(out.size()) + 1);
    c.heading_path = path;
    c.text = t;
    c.order_index = static_cast<int>(out.size());
    std::string tag = to_lower(path.back());
    for (char& ch : tag) {
      if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
    }
    c.semantic_tags = {tag};
    out.push_back(std::move(c));
  };

  for (const auto& line : split(text, '\n')) {
    std::smatch m;
    std::string l = line;
    if (!l.empty() && l.back() == '\r') l.pop_back();
    if (std::regex_match(l, m, kHeading)) {
      flush();
      int level = static_cast<int>(m[1].length());
      while (!stack.empty() && stack.back().first >= level) stack.pop_back();
      stack.emplace_back(level, m[2].str());
      path.clear();
      for (const auto& [lv, h] : stack) path.push_back(h);
      open = true;
      continue;
    }
    body.push_back(l);
  }
  flush();
  return out;
}

Ingested ingest_spec(const std::string& text, agents::Session& session) {
  Ingested in;
  in.chunks = chunk_spec(text);
  static const std::regex kReq(R"(^REQ(?:\[\s*([a-z_]+)\s*(?:,\s*([a-z_]+)\s*)?\])?:\s*(.*\S)\s*$)");
  for (const auto& c : in.chunks) {
    agents::PromptEnvelope env;
    env.role = Role::kSpecAnalyst;
    env.step_id = "extract/" + c.chunk_id;
    env.expected_shape = agents::Shape::kAnalysis;
    env.set(Section::kSpecFragment, join(c.heading_path, " / ") + "\n" + c.text);
    auto resp = session.send(env);
    for (const auto& line : split(resp.analysis, '\n')) {
      std::smatch m;
      std::string l = trim(line);
      if (!std::regex_match(l, m, kReq)) continue;
      ir::Requirement r;
      r.req_id = make_id("REQ", static_cast<int>(in.requirements.size()) + 1);
      r.text = m[3].str();
      if (m[1].matched) {
        if (auto cat = ir::parse_req_category(m[1].str())) r.category = *cat;
      }
      if (m[2].matched) {
        if (auto pr = ir::parse_priority(m[2].str())) r.priority = *pr;
      }
      r.source_chunks = {c.chunk_id};
      in.links.push_back({r.req_id, c.chunk_id, ir::LinkKind::kDerivesFrom});
      in.requirements.push_back(std::move(r));
    }
  }
  return in;
}

// ---- formal stage ----

std::map<std::string, ir::FormalResult> latest_results(const ir::RunBundle& b) {
  std::map<std::string, ir::FormalResult> out;
  if (!b.formal_results) return out;
  for (const auto& r : *b.formal_results) {
    auto it = out.find(r.prop_id);
    if (it == out.end() || r.iteration >= it->second.iteration) out[r.prop_id] = r;
  }
  return out;
}

namespace {

int max_suffix(const std::vector<std::string>& ids, const std::string& prefix) {
  int n = 0;
  for (const auto& id : ids) {
    if (!starts_with(id, prefix + "-")) continue;
    try {
      n = std::max(n, std::stoi(id.substr(prefix.size() + 1)));
    } catch (const std::exception&) {
    }
  }
  return n;
}

std::vector<sva::BoundProperty> bound_assumptions(agents::Workspace& ws) {
  std::vector<sva::BoundProperty> out;
  for (const auto& p : ws.properties().properties) {
    if (p.status != ir::PropStatus::kActive || p.kind != sva::PropKind::kAssumption) continue;
    auto c = agents::compile_text(ws.properties(), p.sva_text, ws.view());
    if (c.ok()) {
      for (auto& bp : c.bound) {
        bp.prop_id = p.prop_id;
        out.push_back(std::move(bp));
      }
    }
  }
  return out;
}

void add_link(ir::RunBundle& b, ir::TraceLink l) {
  if (!b.tracelinks) b.tracelinks = std::vector<ir::TraceLink>{};
  if (std::find(b.tracelinks->begin(), b.tracelinks->end(), l) == b.tracelinks->end()) b.tracelinks->push_back(l);
}

}  // namespace

std::vector<std::string> check_properties(agents::Workspace& ws, std::map<std::string, std::string>& artifacts,
                                          int iteration, const std::optional<std::set<std::string>>& only,
                                          unsigned threads) {
  auto& b = ws.bundle();
  if (!b.formal_results) b.formal_results = std::vector<ir::FormalResult>{};
  formal::CheckConfig cfg = ws.config().check;
  cfg.input_assumptions = bound_assumptions(ws);

  std::vector<sva::BoundProperty> targets;
  std::vector<ir::FormalResult> errors;
  std::vector<std::string> ids;
  for (const auto& p : ws.properties().properties) {
    if (p.status != ir::PropStatus::kActive || p.kind == sva::PropKind::kAssumption) continue;
    if (only && !only->count(p.prop_id)) continue;
    ids.push_back(p.prop_id);
  }
  std::sort(ids.begin(), ids.end(), [](const auto& x, const auto& y) { return sva::id_less(x, y); });
  for (const auto& id : ids) {
    auto c = agents::compile_text(ws.properties(), ws.properties().find(id)->sva_text, ws.view());
    if (c.ok() && c.bound.size() == 1) {
      c.bound[0].prop_id = id;
      targets.push_back(std::move(c.bound[0]));
    } else {
      ir::FormalResult r;
      r.prop_id = id;
      r.status = ir::FormalStatus::kError;
      r.message = c.ok() ? "property text holds more than one statement" : c.describe();
      errors.push_back(r);
    }
  }

  std::vector<ir::FormalResult> results;
  std::vector<vcd::SignalDecl> decls;
  for (const auto& [path, width] : ws.net().signal_paths()) {
    if (path != ws.net().clock) decls.push_back({path, width});
  }
  auto checked = formal::check_all(ws.net(), targets, cfg, threads);
  for (auto& c : checked) {
    ir::FormalResult r = c.result;
    if (r.status == ir::FormalStatus::kCex && c.trace) {
      std::string path = "cex/" + r.prop_id + "-" + std::to_string(iteration) + ".vcd";
      artifacts[path] = vcd::write_vcd(formal::expand_trace(ws.net(), *c.trace), decls);
      r.artifact_path = path;
    } else {
      r.artifact_path.reset();
    }
    results.push_back(r);
  }
  for (auto& e : errors) results.push_back(e);
  std::sort(results.begin(), results.end(), [](const auto& x, const auto& y) { return sva::id_less(x.prop_id, y.prop_id); });

  std::vector<std::string> used;
  for (const auto& r : *b.formal_results) used.push_back(r.result_id);
  int n = max_suffix(used, "RES");
  std::vector<std::string> out;
  for (auto& r : results) {
    r.result_id = make_id("RES", ++n);
    r.iteration = iteration;
    r.external = false;
    add_link(b, {r.result_id, r.prop_id,
                 r.status == ir::FormalStatus::kProven ? ir::LinkKind::kProves : ir::LinkKind::kFails});
    out.push_back(r.result_id);
    b.formal_results->push_back(std::move(r));
  }
  ws.refresh();
  return out;
}

ir::CoverageMetrics& compute_coverage(agents::Workspace& ws, int iteration) {
  auto& b = ws.bundle();
  if (!b.coverage_metrics) b.coverage_metrics = std::vector<ir::CoverageMetrics>{};
  formal::CheckConfig cfg = ws.config().check;
  cfg.input_assumptions = bound_assumptions(ws);
  auto reach = formal::statement_reachability(ws.net(), cfg);
  int vacuous = 0;
  std::vector<std::string> contributors;
  for (const auto& [prop, r] : latest_results(b)) {
    const auto* p = ws.properties().find(prop);
    if (!p || p->status != ir::PropStatus::kActive || p->kind != sva::PropKind::kAssertion) continue;
    if (r.status == ir::FormalStatus::kVacuous) ++vacuous;
    contributors.push_back(prop);
  }
  ir::CoverageMetrics m = formal::coverage_metrics(reach, vacuous);
  std::vector<std::string> used;
  for (const auto& c : *b.coverage_metrics) used.push_back(c.cov_id);
  m.cov_id = make_id("COV", max_suffix(used, "COV") + 1);
  m.run_ref = "iteration-" + std::to_string(iteration);
  // Only analysed statements are classified; those classifications carry
  // over while the statement stays unreachable.
  m.dead_code.clear();
  if (!b.coverage_metrics->empty()) {
    for (const auto& d : b.coverage_metrics->back().dead_code) {
      if (std::find(m.unreachable_statements.begin(), m.unreachable_statements.end(), d.statement_id) !=
          m.unreachable_statements.end()) {
        m.dead_code.push_back(d);
      }
    }
  }
  for (const auto& p : contributors) add_link(b, {p, m.cov_id, ir::LinkKind::kCovers});
  b.coverage_metrics->push_back(std::move(m));
  ws.refresh();
  return b.coverage_metrics->back();
}

std::set<std::string> recheck_targets(const ir::RunBundle& b, const std::set<std::string>& invalidated) {
  std::set<std::string> out;
  for (const auto& [prop, r] : latest_results(b)) {
    if (invalidated.count(r.result_id)) out.insert(prop);
  }
  return out;
}

// ---- report ----

RunReport make_report(const ir::RunBundle& b) {
  RunReport r;
  auto counted = [](const ir::PropertyRecord& p) { return p.kind != sva::PropKind::kAssumption; };
  if (b.formal_results) {
    std::map<std::string, ir::FormalResult> first;
    for (const auto& x : *b.formal_results) {
      if (x.iteration == 0) first[x.prop_id] = x;
    }
    for (const auto& [prop, x] : first) {
      const auto* p = b.properties ? b.properties->find(prop) : nullptr;
      if (p && !counted(*p)) continue;
      ++r.gen_total;
      if (x.status == ir::FormalStatus::kProven) ++r.gen_passed;
    }
    r.gen_failed = r.gen_total - r.gen_passed;
  }
  auto latest = latest_results(b);
  if (b.properties) {
    for (const auto& p : b.properties->properties) {
      int syntax = 0;
      const ir::AttemptNote* last = nullptr;
      bool disabled = false;
      for (const auto& n : p.attempt_history) {
        if (n.loop_kind != ir::LoopKind::kSyntax) continue;
        ++syntax;
        last = &n;
        disabled = disabled || n.outcome == ir::AttemptOutcome::kDisabled;
      }
      if (syntax > 0) ++r.syntax_failing;
      r.syntax_attempts += syntax;
      if (last && last->outcome == ir::AttemptOutcome::kFixed) ++r.syntax_fixed;
      if (disabled) ++r.syntax_disabled;
      if (!counted(p)) continue;
      ++r.final_total;
      auto it = latest.find(p.prop_id);
      if (p.status == ir::PropStatus::kActive && it != latest.end() && it->second.status == ir::FormalStatus::kProven) {
        ++r.final_passed;
      }
    }
    r.final_failed = r.final_total - r.final_passed;
  }
  if (b.cex_cases) {
    for (const auto& c : *b.cex_cases) {
      ++r.cex_total;
      r.cex_attempts += static_cast<int>(c.attempts.size());
      bool fixed = std::any_of(c.attempts.begin(), c.attempts.end(),
                               [](const auto& n) { return n.outcome == ir::AttemptOutcome::kFixed; });
      if (fixed) ++r.cex_corrected;
      if (c.root_cause == ir::RootCause::kRtlBug) ++r.cex_rtl_bugs;
    }
    r.cex_not_corrected = r.cex_total - r.cex_corrected;
  }
  if (b.coverage_metrics && !b.coverage_metrics->empty()) {
    std::vector<const ir::CoverageMetrics*> cov;
    for (const auto& c : *b.coverage_metrics) cov.push_back(&c);
    std::sort(cov.begin(), cov.end(), [](const auto* x, const auto* y) { return sva::id_less(x->cov_id, y->cov_id); });
    r.cov_initial_pct = cov.front()->reachable_pct;
    r.cov_final_pct = cov.back()->reachable_pct;
    r.vacuous = cov.back()->vacuity_count;
    for (const auto& d : cov.back()->dead_code) {
      if (d.classification == ir::DeadCodeClass::kDefensive) ++r.defensive;
    }
  }
  if (b.tracelinks) {
    std::set<std::string> gen;
    for (const auto& l : *b.tracelinks) {
      if (l.link_kind == ir::LinkKind::kCovers && ir::node_type_from_id(l.dst_id) == ir::kNodeStatement) gen.insert(l.src_id);
    }
    r.cov_new_props = static_cast<int>(gen.size());
  }
  auto g = kg::Graph::build(ir::export_graph(b));
  r.kg_nodes = static_cast<int>(g.nodes().size());
  r.kg_edges = static_cast<int>(g.edges().size());
  return r;
}

std::string render_report(const RunReport& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  auto tpf = [](int t, int p, int f) {
    return std::to_string(t) + " | " + std::to_string(p) + " | " + std::to_string(f);
  };
  auto pct = [](double v) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(1) << v;
    return o.str();
  };
  rows.push_back({"Property generation: #Properties (T | P | F)", tpf(r.gen_total, r.gen_passed, r.gen_failed)});
  rows.push_back({"Syntax correction: #Failing properties", std::to_string(r.syntax_failing)});
  rows.push_back({"Syntax correction: #Fix attempts", std::to_string(r.syntax_attempts)});
  rows.push_back({"Syntax correction: #Fixed | #Disabled",
                  std::to_string(r.syntax_fixed) + " | " + std::to_string(r.syntax_disabled)});
  rows.push_back({"CEX correction: #CEX", std::to_string(r.cex_total)});
  rows.push_back({"CEX correction: #Corrected | #Not corrected",
                  std::to_string(r.cex_corrected) + " | " + std::to_string(r.cex_not_corrected)});
  rows.push_back({"CEX correction: #Fix attempts", std::to_string(r.cex_attempts)});
  rows.push_back({"CEX correction: #RTL bugs", std::to_string(r.cex_rtl_bugs)});
  rows.push_back({"Coverage improvement: reachable statements % (initial -> final)",
                  pct(r.cov_initial_pct) + " -> " + pct(r.cov_final_pct)});
  rows.push_back({"Coverage improvement: #Vacuous", std::to_string(r.vacuous)});
  rows.push_back({"Coverage improvement: #New properties", std::to_string(r.cov_new_props)});
  rows.push_back({"Coverage improvement: #Defensive dead code", std::to_string(r.defensive)});
  rows.push_back({"End-to-end: #Properties (T | P | F)", tpf(r.final_total, r.final_passed, r.final_failed)});
  rows.push_back({"KG size: #Nodes | #Edges", std::to_string(r.kg_nodes) + " | " + std::to_string(r.kg_edges)});
  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  std::ostringstream o;
  for (const auto& [k, v] : rows) o << k << std::string(w - k.size(), ' ') << "  " << v << "\n";
  return o.str();
}

Json to_json(const RunReport& r) {
  return {{"generation", {{"total", r.gen_total}, {"passed", r.gen_passed}, {"failed", r.gen_failed}}},
          {"syntax",
           {{"failing", r.syntax_failing}, {"attempts", r.syntax_attempts}, {"fixed", r.syntax_fixed},
            {"disabled", r.syntax_disabled}}},
          {"cex",
           {{"total", r.cex_total}, {"corrected", r.cex_corrected}, {"not_corrected", r.cex_not_corrected},
            {"attempts", r.cex_attempts}, {"rtl_bugs", r.cex_rtl_bugs}}},
          {"coverage",
           {{"initial_pct", r.cov_initial_pct}, {"final_pct", r.cov_final_pct}, {"vacuous", r.vacuous},
            {"new_properties", r.cov_new_props}, {"defensive", r.defensive}}},
          {"end_to_end", {{"total", r.final_total}, {"passed", r.final_passed}, {"failed", r.final_failed}}},
          {"kg", {{"nodes", r.kg_nodes}, {"edges", r.kg_edges}}}};
}

// ---- driver ----

namespace {

class Stager {
 public:
  Stager(const RunConfig& cfg, agents::Session& session) : cfg_(cfg), session_(session) {}

  std::string save(const ir::RunBundle& b, const std::map<std::string, std::string>& artifacts, bool final) {
    ir::SaveOptions opts;
    opts.write_graph = true;
    opts.extra_files = [&](const ir::RunContext& ctx) {
      std::map<std::string, std::string> files = artifacts;
      agents::Transcript t = session_.transcript();
      t.run_id = ctx.run_id;
      t.created_at = ctx.created_at;
      files["transcript.json"] = agents::serialize(t);
      if (b.properties) {
        ir::PropertySet ps = *b.properties;
        files["properties.sva"] = agents::assemble(ps);
      }
      if (final) {
        ir::RunBundle withctx = b;
        withctx.context = ctx;
        files["report.txt"] = render_report(make_report(withctx));
        auto g = kg::Graph::build(ir::export_graph(withctx));
        files["graph.html"] = kg::render_html(g, "kgverify run " + ctx.run_id);
      }
      return files;
    };
    ir::RunContext ctx = ir::save_run(b, cfg_.out_root, opts);
    if (!previous_.empty() && previous_ != ctx.run_id) {
      std::error_code ec;
      fs::remove_all(fs::path(cfg_.out_root) / previous_, ec);
    }
    previous_ = ctx.run_id;
    return ctx.run_id;
  }

 private:
  const RunConfig& cfg_;
  agents::Session& session_;
  std::string previous_;
};

}  // namespace

RunOutcome run_all(const RunConfig& cfg, agents::Backend& backend) {
  RunOutcome out;
  auto problems = cfg.problems();
  if (!problems.empty()) {
    out.error = join(problems, "; ");
    return out;
  }
  agents::Session session(backend, cfg.prompt_budget);
  Stager stager(cfg, session);
  ir::RunBundle b;
  b.context.tool_version = kToolVersion;
  b.context.created_at = cfg.created_at.empty() ? ir::utc_now() : cfg.created_at;
  b.context.config_snapshot = cfg.snapshot();
  std::map<std::string, std::string> artifacts;
  std::string stage = "ingest";
  rtl::NetModel net;
  try {
    Ingested in = ingest_spec(read_file(cfg.spec_path), session);
    b.spec_chunks = in.chunks;
    b.requirements = in.requirements;
    b.tracelinks = in.links;

    stage = "rtl";
    std::vector<rtl::SourceFile> files;
    for (const auto& p : cfg.rtl_paths) files.push_back({fs::path(p).filename().string(), read_file(p)});
    auto design = rtl::parse_rtl(files);
    if (!design.ok()) throw Error("rtl: " + design.diags.format("rtl"));
    auto elab = rtl::elaborate(*design, cfg.top);
    if (!elab.ok()) throw Error("elaborate: " + elab.diags.format("rtl"));
    net = std::move(*elab.value);
    rtl::attach_elaboration(*design, net);
    b.design_model = std::move(*design.value);
    stager.save(b, artifacts, false);

    agents::AgentConfig acfg;
    acfg.bounds = cfg.bounds;
    acfg.check.max_states = cfg.max_states;
    acfg.check.max_depth = cfg.max_depth;
    acfg.check.measure_runtime = cfg.measure_runtime;
    if (!cfg.rulebook_path.empty()) acfg.rulebook = read_file(cfg.rulebook_path);
    acfg.read_artifact = [&artifacts](const std::string& p) -> std::optional<std::string> {
      auto it = artifacts.find(p);
      if (it == artifacts.end()) return std::nullopt;
      return it->second;
    };
    agents::Workspace ws(b, net, session, acfg);

    stage = "generation";
    agents::run_generation(ws);
    stager.save(b, artifacts, false);

    stage = "syntax";
    int syntax_passes = 0;
    for (;;) {
      ++syntax_passes;
      auto rep = agents::run_syntax_loop(ws);
      if (rep.touched.empty()) break;
    }
    b.context.iteration_counts["syntax"] = syntax_passes;
    stager.save(b, artifacts, false);

    stage = "formal";
    int iteration = 0;
    check_properties(ws, artifacts, iteration, std::nullopt, cfg.threads);
    stager.save(b, artifacts, false);

    stage = "cex";
    int cex_rounds = 0;
    for (int i = 0; i < cfg.cex_iters; ++i) {
      auto rep = agents::run_cex_loop(ws);
      if (rep.cases == 0) break;
      ++cex_rounds;
      if (!rep.patched.empty()) {
        check_properties(ws, artifacts, ++iteration, recheck_targets(b, rep.invalidated), cfg.threads);
      }
      stager.save(b, artifacts, false);
      if (rep.patched.empty()) break;
    }
    b.context.iteration_counts["cex"] = cex_rounds;

    stage = "coverage";
    ir::CoverageMetrics* cov = &compute_coverage(ws, iteration);
    int cov_rounds = 0;
    for (int i = 0; i < cfg.cov_iters; ++i) {
      auto rep = agents::run_coverage_loop(ws, *cov);
      if (rep.gaps == 0) break;
      ++cov_rounds;
      if (!rep.new_props.empty()) {
        std::set<std::string> fresh(rep.new_props.begin(), rep.new_props.end());
        agents::run_syntax_loop(ws, fresh);
        check_properties(ws, artifacts, ++iteration, fresh, cfg.threads);
      }
      cov = &compute_coverage(ws, iteration);
      stager.save(b, artifacts, false);
      if (rep.new_props.empty()) break;
    }
    b.context.iteration_counts["coverage"] = cov_rounds;

    stage = "final";
    out.run_id = stager.save(b, artifacts, true);
    ir::RunBundle saved = b;
    out.report = make_report(saved);
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = stage + ": " + e.what();
    try {
      out.run_id = stager.save(b, artifacts, false);
    } catch (const std::exception& e2) {
      out.error += std::string(" (partial save failed: ") + e2.what() + ")";
    }
  }
  return out;
}

}  // namespace kgv::orch
