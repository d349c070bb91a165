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

#include "support/rig.hpp"

#include "kgv/base/error.hpp"
#include "kgv/orch/run.hpp"
#include "support/fixtures.hpp"

namespace kgv::testing {

std::unique_ptr<Rig> make_rig_from_source(const std::string& rtl_source, const std::string& top, const RigOptions& opt) {
  auto rig = std::make_unique<Rig>();
  if (opt.custom) opt.custom(rig->backend);
  agents::add_standard_rules(rig->backend);
  rig->session = std::make_unique<agents::Session>(rig->backend);
  rig->bundle.context.tool_version = "test";
  rig->bundle.context.created_at = "2025-01-02T03:04:05Z";
  auto design = rtl::parse_rtl(rtl_source, top + ".v");
  if (!design.ok()) throw Error("rig: " + design.diags.format(top + ".v"));
  auto net = rtl::elaborate(*design, top);
  if (!net.ok()) throw Error("rig: " + net.diags.format(top + ".v"));
  rig->net = std::move(*net.value);
  rtl::attach_elaboration(*design, rig->net);
  rig->bundle.design_model = std::move(*design.value);
  if (!opt.spec.empty()) {
    auto in = orch::ingest_spec(opt.spec, *rig->session);
    rig->bundle.spec_chunks = in.chunks;
    rig->bundle.requirements = in.requirements;
    rig->bundle.tracelinks = in.links;
  }
  agents::AgentConfig cfg;
  cfg.check.measure_runtime = false;
  Rig* raw = rig.get();
  cfg.read_artifact = [raw](const std::string& p) -> std::optional<std::string> {
    auto it = raw->artifacts.find(p);
    if (it == raw->artifacts.end()) return std::nullopt;
    return it->second;
  };
  if (opt.tune) opt.tune(cfg);
  rig->ws = std::make_unique<agents::Workspace>(rig->bundle, rig->net, *rig->session, cfg);
  return rig;
}

std::unique_ptr<Rig> make_rig(const RigOptions& opt) {
  std::string top = opt.rtl.substr(0, opt.rtl.find('.'));
  if (top == "fifo_buggy") top = "fifo";
  return make_rig_from_source(read_fixture(opt.rtl), top, opt);
}

void add_property(Rig& rig, const std::string& id, const std::string& sva, const std::string& req, sva::PropKind kind) {
  ir::PropertyRecord p;
  p.prop_id = id;
  p.kind = kind;
  p.sva_text = sva;
  if (!req.empty()) {
    p.req_ids = {req};
    rig.bundle.tracelinks->push_back({id, req, ir::LinkKind::kValidates});
  }
  rig.bundle.properties->properties.push_back(p);
  agents::assemble(*rig.bundle.properties);
  rig.ws->refresh();
}

}  // namespace kgv::testing
