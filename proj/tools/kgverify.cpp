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

// kgverify command line: run, report, graph, diff.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>

#include "kgv/agents/backend.hpp"
#include "kgv/agents/scripts.hpp"
#include "kgv/base/error.hpp"
#include "kgv/base/text.hpp"
#include "kgv/ir/diff.hpp"
#include "kgv/ir/store.hpp"
#include "kgv/kg/graph.hpp"
#include "kgv/orch/run.hpp"

namespace {

namespace fs = std::filesystem;
using namespace kgv;

struct LiveFlags {
  std::string endpoint = agents::LiveConfig{}.url;
  std::string model = agents::LiveConfig{}.model;
};

std::unique_ptr<agents::Backend> make_backend(orch::RunConfig& cfg, const LiveFlags& live) {
  if (cfg.backend == "scripted") {
    auto b = std::make_unique<agents::ScriptedBackend>();
    agents::add_standard_rules(*b);
    return b;
  }
  if (cfg.backend == "replay") {
    auto t = agents::load_transcript(cfg.transcript_path);
    if (cfg.created_at.empty()) cfg.created_at = t.created_at;
    return std::make_unique<agents::ReplayBackend>(std::move(t));
  }
  agents::LiveConfig lc;
  lc.url = live.endpoint;
  lc.model = live.model;
  if (const char* key = std::getenv("KGV_API_KEY")) lc.api_key = key;
  return std::make_unique<agents::LiveBackend>(lc);
}

int cmd_run(orch::RunConfig cfg, const LiveFlags& live) {
  if (cfg.backend == "live") cfg.measure_runtime = true;
  auto problems = cfg.problems();
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << "kgverify: " << p << "\n";
    return 2;
  }
  auto backend = make_backend(cfg, live);
  auto out = orch::run_all(cfg, *backend);
  if (!out.run_id.empty()) std::cout << "run " << out.run_id << "\n";
  if (!out.ok) {
    std::cerr << "kgverify: " << out.error << "\n";
    return 1;
  }
  std::cout << orch::render_report(out.report);
  return 0;
}

int cmd_report(const std::string& root, const std::string& id, bool json) {
  auto b = ir::load_run(root, id);
  auto r = orch::make_report(b);
  if (json) {
    std::cout << orch::to_json(r).dump(2) << "\n";
  } else {
    std::cout << orch::render_report(r);
  }
  return 0;
}

int cmd_graph(const std::string& root, const std::string& id, const std::string& html) {
  auto g = kg::Graph::build(ir::load_graph_rows(root, id));
  write_file(html, kg::render_html(g, "kgverify run " + id));
  std::cout << g.nodes().size() << " nodes, " << g.edges().size() << " edges -> " << html << "\n";
  return 0;
}

int cmd_diff(const std::string& root, const std::string& a, const std::string& b) {
  auto d = ir::diff_runs(ir::load_run(root, a), ir::load_run(root, b));
  std::cout << ir::to_json(d).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-graph driven property generation and repair", "kgverify"};
  app.set_version_flag("--version", std::string(orch::kToolVersion));
  app.require_subcommand(1);
  // Keys go under the subcommand's section ([run], [report], ...).
  app.set_config("--config", "", "TOML/INI file supplying any flag");
  app.fallthrough();

  orch::RunConfig cfg;
  LiveFlags live;
  auto* run = app.add_subcommand("run", "Run the full flow on a design");
  run->add_option("--spec", cfg.spec_path, "Specification (markdown or text)")->required();
  run->add_option("--rtl", cfg.rtl_paths, "Verilog source (repeatable)")->required();
  run->add_option("--top", cfg.top, "Top module")->required();
  run->add_option("--rulebook", cfg.rulebook_path, "Review rulebook");
  run->add_option("--out", cfg.out_root, "Run store root")->capture_default_str();
  run->add_option("--backend", cfg.backend, "Agent backend")
      ->check(CLI::IsMember({"live", "scripted", "replay"}))
      ->capture_default_str();
  run->add_option("--transcript", cfg.transcript_path, "Transcript to replay");
  run->add_option("--radius", cfg.bounds.radius, "Retrieval radius")->capture_default_str();
  run->add_option("--max-states", cfg.max_states, "State cap per check")->capture_default_str();
  run->add_option("--max-depth", cfg.max_depth, "Depth cap per check")->capture_default_str();
  run->add_option("--cex-iters", cfg.cex_iters, "Counterexample loop iterations")->capture_default_str();
  run->add_option("--cov-iters", cfg.cov_iters, "Coverage loop iterations")->capture_default_str();
  run->add_option("--type-cap", cfg.bounds.type_cap, "Retrieved nodes per type")->capture_default_str();
  run->add_option("--budget", cfg.prompt_budget, "Prompt context budget in bytes")->capture_default_str();
  run->add_option("--threads", cfg.threads, "Parallel property checks")->capture_default_str();
  run->add_option("--timestamp", cfg.created_at, "Creation time (YYYY-MM-DDTHH:MM:SSZ)");
  run->add_option("--endpoint", live.endpoint, "Chat completion URL (live)")->capture_default_str();
  run->add_option("--model", live.model, "Model name (live)")->capture_default_str();

  std::string root = "runs";
  std::string id, a, b, html;
  bool json = false;
  auto* report = app.add_subcommand("report", "Print the report of a stored run");
  report->add_option("--run", id, "Run id")->required();
  report->add_option("--out", root, "Run store root")->capture_default_str();
  report->add_flag("--json", json, "Print JSON");

  auto* graph = app.add_subcommand("graph", "Write the HTML graph view of a stored run");
  graph->add_option("--run", id, "Run id")->required();
  graph->add_option("--html", html, "Output path")->required();
  graph->add_option("--out", root, "Run store root")->capture_default_str();

  auto* diff = app.add_subcommand("diff", "Compare two stored runs");
  diff->add_option("--a", a, "First run id")->required();
  diff->add_option("--b", b, "Second run id")->required();
  diff->add_option("--out", root, "Run store root")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(cfg, live);
    if (*report) return cmd_report(root, id, json);
    if (*graph) return cmd_graph(root, id, html);
    if (*diff) return cmd_diff(root, a, b);
  } catch (const std::exception& e) {
    std::cerr << "kgverify: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
