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

#include "kgv/agents/pipelines.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "kgv/base/text.hpp"
#include "kgv/ir/graph_rows.hpp"
#include "kgv/vcd/vcd.hpp"

namespace kgv::agents {

using ir::AttemptNote;
using ir::AttemptOutcome;
using ir::LoopKind;
using ir::PropertyRecord;

namespace {

constexpr int kGapScopeRadius = 3;

bool by_id(const std::string& a, const std::string& b) { return sva::id_less(a, b); }

PromptEnvelope envelope(Role role, std::string step, Shape shape) {
  PromptEnvelope e;
  e.role = role;
  e.step_id = std::move(step);
  e.expected_shape = shape;
  return e;
}

int notes_of(const PropertyRecord& p, LoopKind k) {
  return static_cast<int>(
      std::count_if(p.attempt_history.begin(), p.attempt_history.end(), [k](const AttemptNote& n) { return n.loop_kind == k; }));
}

AttemptNote* last_note(PropertyRecord& p, LoopKind k) {
  for (auto it = p.attempt_history.rbegin(); it != p.attempt_history.rend(); ++it) {
    if (it->loop_kind == k) return &*it;
  }
  return nullptr;
}

const ir::Requirement* find_req(const ir::RunBundle& b, const std::string& id) {
  if (!b.requirements) return nullptr;
  for (const auto& r : *b.requirements) {
    if (r.req_id == id) return &r;
  }
  return nullptr;
}

std::string requirement_text(const ir::RunBundle& b, const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (const auto* r = find_req(b, id)) out += id + ": " + r->text + "\n";
  }
  return out.empty() ? "none\n" : out;
}

// Spec chunks in the anchor's neighbourhood, nearest first.
std::string spec_fragment(Workspace& ws, const std::string& anchor, kg::TaskKind task) {
  if (!ws.graph().contains(anchor)) return "";
  std::string out;
  for (const auto& m : kg::neighborhood(ws.graph(), anchor, task, ws.config().bounds).members) {
    const kg::Node* n = ws.graph().find(m.id);
    if (!n || n->type != ir::kNodeSpecChunk) continue;
    out += "[" + m.id + "]\n" + n->attributes.value("text", std::string()) + "\n";
  }
  return out;
}

// Parses a block already accepted as property_block.
sva::PropertyFile parse_block(const std::string& block) {
  sva::ParseOptions opt;
  opt.require_clock = false;
  auto r = sva::parse_properties(block, opt);
  if (!r.ok()) throw ProtocolError("property_block: " + r.diags.format("block"), block);
  return std::move(*r.value);
}

bool same_label(const std::string& parsed, const std::string& prop_id) {
  return parsed == prop_id || sva::prop_id_for(parsed) == prop_id || parsed == sva::label_for(prop_id);
}

void add_link(Workspace& ws, const std::string& src, const std::string& dst, ir::LinkKind k) {
  auto& links = ws.links();
  ir::TraceLink l{src, dst, k};
  if (std::find(links.begin(), links.end(), l) == links.end()) links.push_back(l);
}

std::vector<std::string> mentioned_signals(const Workspace& ws, const std::string& text) {
  static const std::regex kIdent("[A-Za-z_][A-Za-z0-9_]*(\\.[A-Za-z_][A-Za-z0-9_]*)*");
  std::vector<std::string> out;
  for (std::sregex_iterator it(text.begin(), text.end(), kIdent), end; it != end; ++it) {
    std::vector<std::string> hits;
    for (const auto& h : kg::resolve_signal(ws.index(), it->str())) {
      if (ws.net().width_of(h)) hits.push_back(h);
    }
    if (hits.size() == 1 && std::find(out.begin(), out.end(), hits[0]) == out.end()) out.push_back(hits[0]);
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, bool>> reset_inputs(const rtl::NetModel& net) {
  static const std::regex kReset("(a?rst|reset|[a-z0-9]*_rst|[a-z0-9]*_reset)(_n|_b)?");
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& [path, width] : net.inputs) {
    if (width != 1) continue;
    auto dot = path.rfind('.');
    std::string leaf = to_lower(dot == std::string::npos ? path : path.substr(dot + 1));
    std::smatch m;
    if (!std::regex_match(leaf, m, kReset)) continue;
    out.emplace_back(path, !m[2].matched);
  }
  return out;
}

Workspace::Workspace(ir::RunBundle& bundle, const rtl::NetModel& net, Session& session, AgentConfig cfg)
    : bundle_(bundle), net_(net), session_(session), cfg_(std::move(cfg)) {
  if (!bundle_.design_model) throw Error("workspace: bundle has no design model");
  for (const auto& [path, width] : net_.signal_paths()) index_.add(path);
  if (!bundle_.properties) {
    bundle_.properties = ir::PropertySet{};
    bundle_.properties->default_clock = net_.clock.empty() ? "" : net_.clock.substr(net_.clock.rfind('.') + 1);
  }
  if (!bundle_.tracelinks) bundle_.tracelinks = std::vector<ir::TraceLink>{};
  if (!cfg_.read_artifact) {
    cfg_.read_artifact = [](const std::string&) -> std::optional<std::string> { return std::nullopt; };
  }
  refresh();
}

ir::PropertySet& Workspace::properties() { return *bundle_.properties; }
std::vector<ir::TraceLink>& Workspace::links() { return *bundle_.tracelinks; }

void Workspace::refresh() { graph_ = kg::Graph::build(ir::export_graph(bundle_)); }

// ---- generation ----

GenerationReport run_generation(Workspace& ws) {
  GenerationReport rep;
  auto& b = ws.bundle();
  if (!b.requirements || b.requirements->empty()) return rep;
  std::vector<ir::Requirement> reqs = *b.requirements;
  std::sort(reqs.begin(), reqs.end(), [](const auto& x, const auto& y) { return by_id(x.req_id, y.req_id); });
  if (!b.testplan) b.testplan = std::vector<ir::TestPlanEntry>{};
  const std::string signals = signal_table(ws.net());

  for (const auto& req : reqs) {
    ++rep.requirements;
    const std::string& id = req.req_id;
    PromptEnvelope base;
    base.set(Section::kRequirement, id + ": " + req.text)
        .set(Section::kSpecFragment, spec_fragment(ws, id, kg::TaskKind::kGeneration))
        .set(Section::kSignalTable, signals);

    PromptEnvelope lead = base;
    lead.role = Role::kSvaLead;
    lead.step_id = "lead/" + id;
    lead.expected_shape = Shape::kAnalysis;
    auto strategy = ws.session().send(lead);

    PromptEnvelope analyst = base;
    analyst.role = Role::kSpecAnalyst;
    analyst.step_id = "decompose/" + id;
    analyst.expected_shape = Shape::kAnalysis;
    analyst.set(Section::kDiagnostics, "strategy:\n" + strategy.analysis);
    auto decomposition = ws.session().send(analyst);
    auto fields = analysis_fields(decomposition.analysis);

    bool planned = std::any_of(b.testplan->begin(), b.testplan->end(), [&](const auto& t) { return t.req_id == id; });
    if (!planned) {
      ir::TestPlanEntry t;
      t.req_id = id;
      t.observable_signals = mentioned_signals(ws, req.text + "\n" + decomposition.analysis);
      t.stimulus = fields.count("trigger") ? fields["trigger"] : "";
      t.expected_response = fields.count("response") ? fields["response"] : "";
      if (fields.count("timing") && !fields["timing"].empty() && to_lower(fields["timing"]) != "none") {
        t.timing_constraint = fields["timing"];
      }
      b.testplan->push_back(std::move(t));
    }

    PromptEnvelope author = base;
    author.role = Role::kSvaAuthor;
    author.step_id = "author/" + id;
    author.expected_shape = Shape::kPropertyBlock;
    author.set(Section::kDiagnostics, "decomposition:\n" + decomposition.analysis);
    std::string block = ws.session().send(author).block;

    std::vector<AttemptNote> notes;
    bool disabled = false;
    for (int round = 1; round <= ws.config().review_rounds; ++round) {
      ++rep.review_rounds;
      PromptEnvelope review = base;
      review.role = Role::kSvaReviewer;
      review.step_id = "review/" + id + "/" + std::to_string(round);
      review.expected_shape = Shape::kVerdict;
      if (!ws.config().rulebook.empty()) review.set(Section::kRulebook, ws.config().rulebook);
      review.set(Section::kPriorCode, block);
      auto verdict = ws.session().send(review).verdict;
      if (verdict.approve) {
        if (!notes.empty()) notes.back().outcome = AttemptOutcome::kFixed;
        break;
      }
      std::string reasons = verdict.reasons.empty() ? "rejected" : join(verdict.reasons, "; ");
      if (round == ws.config().review_rounds) {
        notes.push_back({LoopKind::kReview, round, reasons, "no further revision", AttemptOutcome::kDisabled});
        disabled = true;
        break;
      }
      PromptEnvelope patch = base;
      patch.role = Role::kSvaPatcher;
      patch.step_id = "revise/" + id + "/" + std::to_string(round);
      patch.expected_shape = Shape::kPropertyBlock;
      if (!ws.config().rulebook.empty()) patch.set(Section::kRulebook, ws.config().rulebook);
      patch.set(Section::kPriorCode, block).set(Section::kDiagnostics, reasons);
      std::string revised = ws.session().send(patch).block;
      notes.push_back({LoopKind::kReview, round, reasons, "revised block", AttemptOutcome::kRetry});
      block = revised;
    }

    // code_extractor
    sva::PropertyFile parsed = parse_block(block);
    for (auto& decl : parsed.properties) {
      PropertyRecord rec;
      rec.prop_id = next_prop_id(ws.properties());
      decl.prop_id = rec.prop_id;
      rec.req_ids = {id};
      rec.kind = decl.kind;
      rec.sva_text = sva::format_property(decl);
      rec.status = disabled ? ir::PropStatus::kDisabled : ir::PropStatus::kActive;
      rec.attempt_history = notes;
      ws.properties().properties.push_back(rec);
      add_link(ws, rec.prop_id, id, ir::LinkKind::kValidates);
      rep.new_props.push_back(rec.prop_id);
      ++rep.properties;
      if (disabled) ++rep.disabled;
    }
    for (const auto& m : parsed.macros) {
      auto& macros = ws.properties().macros;
      bool known = std::any_of(macros.begin(), macros.end(), [&](const auto& x) { return x.name == m.name; });
      if (!known) macros.push_back({m.name, m.text});
    }
  }
  assemble(ws.properties());
  ws.refresh();
  return rep;
}

// ---- syntax ----

namespace {

struct RuleFix {
  std::string rule;
  std::string text;
  std::optional<ir::MacroDef> macro;
  std::string summary;
};

bool macro_style(const std::string& s) {
  if (s.size() < 2) return false;
  bool letter = false;
  for (char c : s) {
    if (c >= 'A' && c <= 'Z') {
      letter = true;
    } else if (!(c == '_' || (c >= '0' && c <= '9'))) {
      return false;
    }
  }
  return letter;
}

std::optional<RuleFix> try_rules(Workspace& ws, const PropertyRecord& rec, const Compiled& c) {
  const auto& set = ws.properties();
  auto defined = [&](const std::string& name) {
    return std::any_of(set.macros.begin(), set.macros.end(), [&](const auto& m) { return m.name == name; });
  };
  auto define_macro = [&](std::string name) -> std::optional<RuleFix> {
    if (!name.empty() && name[0] == '`') name = name.substr(1);
    if (name.empty() || defined(name)) return std::nullopt;
    auto cand = unique_candidate(ws.index(), ws.net(), to_lower(name));
    if (!cand) cand = unique_candidate(ws.index(), ws.net(), name);
    if (!cand) return std::nullopt;
    return RuleFix{"R3", rec.sva_text, ir::MacroDef{name, *cand}, "R3: `define " + name + " " + *cand};
  };
  if (!c.file) {
    static const std::regex kMacroName("`([A-Za-z_][A-Za-z0-9_]*)");
    for (const auto& d : c.parse.items()) {
      std::smatch m;
      if (d.code != DiagCode::kUndefinedMacro || !std::regex_search(d.message, m, kMacroName)) continue;
      if (auto fix = define_macro(m[1].str())) return fix;
    }
    return std::nullopt;
  }
  if (c.file->properties.size() != 1) return std::nullopt;
  for (const auto& err : c.bind) {
    sva::PropertyDecl decl = c.file->properties[0];
    if (err.kind == sva::BindErrorKind::kUndeclaredIdentifier) {
      const std::string& ident = err.identifier;
      if (macro_style(ident)) {
        auto cand = unique_candidate(ws.index(), ws.net(), to_lower(ident));
        if (cand) {
          decl.ast = replace_ref(decl.ast, ident, make_macro(ident));
          std::string text = sva::format_property(decl);
          if (text == rec.sva_text) continue;
          if (defined(ident)) return RuleFix{"R2", text, std::nullopt, "R2: " + ident + " -> `" + ident};
          return RuleFix{"R2", text, ir::MacroDef{ident, *cand}, "R2: `define " + ident + " " + *cand};
        }
        continue;
      }
      auto cand = unique_candidate(ws.index(), ws.net(), ident);
      if (!cand) continue;
      decl.ast = replace_ref(decl.ast, ident, make_ref(*cand));
      std::string text = sva::format_property(decl);
      if (text == rec.sva_text) continue;
      return RuleFix{"R1", text, std::nullopt, "R1: " + ident + " -> " + *cand};
    }
    if (err.kind == sva::BindErrorKind::kUndefinedMacro) {
      if (auto fix = define_macro(err.identifier)) return fix;
    }
  }
  return std::nullopt;
}

}  // namespace

SyntaxReport run_syntax_loop(Workspace& ws, const std::optional<std::set<std::string>>& only) {
  SyntaxReport rep;
  auto& set = ws.properties();
  std::vector<std::string> ids;
  for (const auto& p : set.properties) {
    if (p.status != ir::PropStatus::kActive) continue;
    if (only && !only->count(p.prop_id)) continue;
    ids.push_back(p.prop_id);
  }
  std::sort(ids.begin(), ids.end(), by_id);
  const std::string signals = signal_table(ws.net());

  for (const auto& id : ids) {
    int used = notes_of(*set.find(id), LoopKind::kSyntax);
    bool touched = false;
    bool counted = false;
    for (;;) {
      PropertyRecord& rec = *set.find(id);
      Compiled c = compile_text(set, rec.sva_text, ws.view());
      if (c.ok()) {
        if (touched) last_note(rec, LoopKind::kSyntax)->outcome = AttemptOutcome::kFixed;
        break;
      }
      if (!counted) {
        ++rep.failing;
        counted = true;
      }
      const std::string diag = c.describe();
      if (used >= ws.config().max_attempts) {
        rec.status = ir::PropStatus::kDisabled;
        if (AttemptNote* n = last_note(rec, LoopKind::kSyntax)) {
          n->outcome = AttemptOutcome::kDisabled;
        } else {
          rec.attempt_history.push_back({LoopKind::kSyntax, 1, diag, "attempt budget exhausted", AttemptOutcome::kDisabled});
        }
        ++rep.disabled;
        break;
      }
      ++used;
      ++rep.attempts;
      if (!touched) rep.touched.push_back(id);
      touched = true;

      if (auto fix = try_rules(ws, rec, c)) {
        if (fix->macro) set.macros.push_back(*fix->macro);
        PropertyRecord& r = *set.find(id);
        r.sva_text = fix->text;
        r.attempt_history.push_back({LoopKind::kSyntax, used, diag, fix->summary, AttemptOutcome::kRetry});
        ++rep.rule_fixes;
        ++rep.rule_uses[fix->rule];
        continue;
      }

      PromptEnvelope env = envelope(Role::kSyntaxFixer, "syntax/" + id + "/" + std::to_string(used), Shape::kCodePatch);
      env.set(Section::kRequirement, requirement_text(ws.bundle(), rec.req_ids))
          .set(Section::kSignalTable, signals)
          .set(Section::kPriorCode, rec.sva_text)
          .set(Section::kDiagnostics, diag);
      std::string outcome;
      std::string candidate;
      try {
        auto resp = ws.session().send(env, false);
        candidate = apply_patch(rec.sva_text, resp.patch);
      } catch (const ProtocolError& e) {
        outcome = std::string("patch rejected: ") + e.what();
      } catch (const PatchError& e) {
        outcome = std::string("patch does not apply: ") + e.what();
      }
      if (outcome.empty()) {
        // syntax_validator: isolated single-property wrapper
        Compiled v = compile_text(set, candidate, ws.view());
        if (!v.ok()) {
          outcome = "isolated validation failed: " + v.describe();
        } else if (v.file->properties.size() != 1 || !same_label(v.file->properties[0].prop_id, id)) {
          outcome = "isolated validation failed: patch must keep exactly one property labelled " + sva::label_for(id);
        }
      }
      PropertyRecord& r = *set.find(id);
      if (outcome.empty()) {
        r.sva_text = trim(candidate);
        r.attempt_history.push_back({LoopKind::kSyntax, used, diag, "fixer patch applied", AttemptOutcome::kFixed});
        ++rep.backend_fixes;
      } else {
        r.attempt_history.push_back({LoopKind::kSyntax, used, diag, outcome, AttemptOutcome::kRetry});
      }
    }
  }
  assemble(set);
  ws.refresh();
  return rep;
}

// ---- counterexamples ----

namespace {

std::map<std::string, const ir::FormalResult*> latest_results(const ir::RunBundle& b) {
  std::map<std::string, const ir::FormalResult*> out;
  if (!b.formal_results) return out;
  for (const auto& r : *b.formal_results) {
    auto& slot = out[r.prop_id];
    if (!slot || r.iteration >= slot->iteration) slot = &r;
  }
  return out;
}

std::string next_id(const std::string& prefix, const std::vector<std::string>& used) {
  int n = 0;
  for (const auto& u : used) {
    if (!starts_with(u, prefix + "-")) continue;
    try {
      n = std::max(n, std::stoi(u.substr(prefix.size() + 1)));
    } catch (const std::exception&) {
    }
  }
  return make_id(prefix, n + 1);
}

std::vector<sva::BoundProperty> active_assumptions(Workspace& ws, const std::set<std::string>& skip = {}) {
  Compiled c = compile_set(ws.properties(), ws.view(), [&](const PropertyRecord& p) {
    return p.kind == sva::PropKind::kAssumption && !skip.count(p.prop_id);
  });
  return c.ok() ? c.bound : std::vector<sva::BoundProperty>{};
}

void collect_names(const ExprPtr& e, std::vector<std::string>& out) {
  if (!e) return;
  for (const auto& n : referenced_names(*e)) {
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
}

std::vector<std::string> property_signals(const sva::BoundProperty& p) {
  std::vector<std::string> out;
  collect_names(p.disable, out);
  for (const auto& s : p.antecedent) collect_names(s.expr, out);
  for (const auto& s : p.consequent) collect_names(s.expr, out);
  return out;
}

}  // namespace

CexReport run_cex_loop(Workspace& ws) {
  CexReport rep;
  auto& b = ws.bundle();
  if (!b.formal_results) return rep;
  if (!b.cex_cases) b.cex_cases = std::vector<ir::CexCase>{};
  std::set<std::string> handled;
  for (const auto& c : *b.cex_cases) handled.insert(c.result_id);

  std::vector<std::pair<std::string, ir::FormalResult>> failing;
  for (const auto& [prop, res] : latest_results(b)) {
    const PropertyRecord* rec = ws.properties().find(prop);
    if (!rec || rec->status != ir::PropStatus::kActive || rec->kind != sva::PropKind::kAssertion) continue;
    if (res->status != ir::FormalStatus::kCex || handled.count(res->result_id)) continue;
    failing.emplace_back(prop, *res);
  }
  std::sort(failing.begin(), failing.end(), [](const auto& x, const auto& y) { return by_id(x.first, y.first); });
  const std::string signals = signal_table(ws.net());
  const auto resets = reset_inputs(ws.net());

  for (const auto& [prop, res] : failing) {
    ++rep.cases;
    std::vector<std::string> used_ids;
    for (const auto& c : *b.cex_cases) used_ids.push_back(c.cex_id);
    ir::CexCase cc;
    cc.cex_id = next_id("CEX", used_ids);
    cc.prop_id = prop;
    cc.result_id = res.result_id;
    cc.vcd_path = res.artifact_path.value_or("");
    cc.failure_line = ws.properties().find(prop)->line_span.first;

    std::optional<std::string> text;
    if (res.artifact_path) text = ws.config().read_artifact(*res.artifact_path);
    vcd::WaveDb db;
    if (text) {
      try {
        db = vcd::parse_vcd(*text);
      } catch (const vcd::VcdError& e) {
        text.reset();
      }
    }
    if (!text) {
      cc.diagnosis = "missing_artifact";
      ++rep.missing;
      b.cex_cases->push_back(cc);
      continue;
    }
    cc.failure_time = static_cast<std::int64_t>(db.end_time);

    // vcd_parser
    std::vector<std::string> names;
    Compiled own = compile_text(ws.properties(), ws.properties().find(prop)->sva_text, ws.view());
    if (own.ok() && !own.bound.empty()) names = property_signals(own.bound[0]);
    for (const auto& [r, high] : resets) {
      if (std::find(names.begin(), names.end(), r) == names.end()) names.push_back(r);
    }
    const int pre = ws.config().window_cycles;
    auto win = vcd::failure_window(db, db.end_time, names, pre);
    bool reset_active = false;
    const std::uint64_t lo = db.end_time > static_cast<std::uint64_t>(pre) ? db.end_time - pre : 0;
    for (const auto& [r, high] : resets) {
      for (std::uint64_t t = lo; t <= db.end_time; ++t) {
        auto v = db.value_at(r, t);
        if (v && *v == (high ? "1" : "0")) reset_active = true;
      }
    }
    std::ostringstream wtext;
    wtext << "failure_time: " << db.end_time << "\nreset_active: " << (reset_active ? "yes" : "no") << "\nwindow:\n";
    for (const auto& e : win.window) {
      wtext << "  #" << e.time << " " << e.signal << " " << (e.old_value.empty() ? "-" : e.old_value) << " -> "
            << e.new_value << "\n";
    }
    const std::string window = wtext.str();

    // spec_assertion_analyzer
    PromptEnvelope an = envelope(Role::kSpecAssertionAnalyzer, "cex/" + prop + "/analyze", Shape::kAnalysis);
    an.set(Section::kRequirement, requirement_text(b, ws.properties().find(prop)->req_ids))
        .set(Section::kSpecFragment, spec_fragment(ws, prop, kg::TaskKind::kCexRepair))
        .set(Section::kSignalTable, signals)
        .set(Section::kPriorCode, ws.properties().find(prop)->sva_text)
        .set(Section::kDiagnostics, window);
    std::optional<ir::RootCause> cause;
    std::string analysis;
    try {
      analysis = ws.session().send(an).analysis;
      auto f = analysis_fields(analysis);
      if (f.count("root_cause")) cause = ir::parse_root_cause(f["root_cause"]);
    } catch (const ProtocolError& e) {
      analysis = e.what();
    }
    if (!cause) {
      cc.diagnosis = "analysis failed: " + analysis;
      ++rep.uncorrected;
      b.cex_cases->push_back(cc);
      continue;
    }
    cc.root_cause = cause;
    cc.diagnosis = analysis;
    if (*cause == ir::RootCause::kRtlBug) {
      ++rep.rtl_bugs;
      ++rep.uncorrected;
      b.cex_cases->push_back(cc);
      continue;
    }

    // cex_fixer with isolated re-check
    bool fixed = false;
    std::string last = "";
    int used = notes_of(*ws.properties().find(prop), LoopKind::kCex);
    while (used < ws.config().max_attempts) {
      ++used;
      ++rep.attempts;
      PropertyRecord& rec = *ws.properties().find(prop);
      PromptEnvelope fx = envelope(Role::kCexFixer, "cex/" + prop + "/fix/" + std::to_string(used), Shape::kCodePatch);
      fx.set(Section::kRequirement, requirement_text(b, rec.req_ids))
          .set(Section::kSignalTable, signals)
          .set(Section::kPriorCode, rec.sva_text)
          .set(Section::kDiagnostics, "root_cause: " + std::string(ir::to_string(*cause)) + "\n" + window + last);
      std::string outcome;
      std::string candidate;
      try {
        candidate = apply_patch(rec.sva_text, ws.session().send(fx, false).patch);
      } catch (const ProtocolError& e) {
        outcome = std::string("patch rejected: ") + e.what();
      } catch (const PatchError& e) {
        outcome = std::string("patch does not apply: ") + e.what();
      }
      const sva::PropertyDecl* target = nullptr;
      std::vector<const sva::PropertyDecl*> extra;
      Compiled v;
      if (outcome.empty()) {
        v = compile_text(ws.properties(), candidate, ws.view());
        if (!v.ok()) {
          outcome = "isolated validation failed: " + v.describe();
        } else {
          for (const auto& d : v.file->properties) {
            if (same_label(d.prop_id, prop) && d.kind == sva::PropKind::kAssertion) {
              target = &d;
            } else if (d.kind == sva::PropKind::kAssumption) {
              extra.push_back(&d);
            } else {
              outcome = "isolated validation failed: unexpected statement " + d.prop_id;
            }
          }
          if (!target && outcome.empty()) outcome = "isolated validation failed: patched text lost " + sva::label_for(prop);
        }
      }
      if (outcome.empty()) {
        formal::CheckConfig cfg = ws.config().check;
        cfg.input_assumptions = active_assumptions(ws);
        const sva::BoundProperty* bp = nullptr;
        for (const auto& x : v.bound) {
          if (x.kind == sva::PropKind::kAssumption) cfg.input_assumptions.push_back(x);
          if (same_label(x.prop_id, prop) && x.kind == sva::PropKind::kAssertion) bp = &x;
        }
        auto r = formal::check(ws.net(), *bp, cfg);
        if (r.result.status != ir::FormalStatus::kProven) {
          outcome = "re-check: " + std::string(ir::to_string(r.result.status));
        }
      }
      AttemptNote note{LoopKind::kCex, used, std::string(ir::to_string(*cause)), "", AttemptOutcome::kRetry};
      if (!outcome.empty()) {
        note.patch_summary = outcome;
        rec.attempt_history.push_back(note);
        cc.attempts.push_back(note);
        last = "\nprevious attempt: " + outcome;
        continue;
      }
      sva::PropertyDecl decl = *target;
      decl.prop_id = prop;
      rec.sva_text = sva::format_property(decl);
      note.patch_summary = "fixer patch applied; re-check proven";
      note.outcome = AttemptOutcome::kFixed;
      rec.attempt_history.push_back(note);
      cc.attempts.push_back(note);
      const std::vector<std::string> req_ids = rec.req_ids;
      for (const auto* d : extra) {
        PropertyRecord a;
        a.prop_id = next_prop_id(ws.properties());
        sva::PropertyDecl ad = *d;
        ad.prop_id = a.prop_id;
        a.kind = sva::PropKind::kAssumption;
        a.req_ids = req_ids;
        a.sva_text = sva::format_property(ad);
        ws.properties().properties.push_back(a);
        for (const auto& r : req_ids) add_link(ws, a.prop_id, r, ir::LinkKind::kValidates);
      }
      for (const auto& id : kg::invalidate_downstream(ws.graph(), prop)) rep.invalidated.insert(id);
      rep.patched.push_back(prop);
      fixed = true;
      break;
    }
    if (fixed) {
      ++rep.corrected;
    } else {
      ++rep.uncorrected;
      cc.diagnosis += "\nflagged for manual analysis";
    }
    b.cex_cases->push_back(cc);
  }
  assemble(ws.properties());
  ws.refresh();
  return rep;
}

// ---- coverage ----

namespace {

std::string source_line(const rtl::DesignModel& d, const rtl::StatementRef& s) {
  const rtl::ModuleDecl* m = d.find_module(s.module);
  for (const auto& f : d.sources) {
    if (m && f.path != m->file) continue;
    auto lines = split(f.text, '\n');
    if (s.line >= 1 && s.line <= static_cast<int>(lines.size())) return trim(lines[s.line - 1]);
  }
  return "";
}

bool fallback_arm(const std::string& line) {
  static const std::regex kFallback("\\b(default|else)\\b");
  return std::regex_search(line, kFallback);
}

}  // namespace

CoverageReport run_coverage_loop(Workspace& ws, ir::CoverageMetrics& cov) {
  CoverageReport rep;
  const auto& d = *ws.bundle().design_model;
  std::set<std::string> classified;
  for (const auto& dc : cov.dead_code) classified.insert(dc.statement_id);
  std::map<std::string, const rtl::StatementRef*> stmts;
  for (const auto& s : d.statements) stmts[s.id] = &s;

  // cov_lead_agent: functional paths first, fallback arms last.
  struct Gap {
    std::string id;
    std::string line;
    bool fallback = false;
  };
  std::vector<Gap> gaps;
  for (const auto& id : cov.unreachable_statements) {
    if (classified.count(id)) continue;
    Gap g{id, "", false};
    if (auto it = stmts.find(id); it != stmts.end()) g.line = source_line(d, *it->second);
    g.fallback = fallback_arm(g.line);
    gaps.push_back(g);
  }
  std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) {
    if (a.fallback != b.fallback) return !a.fallback;
    return by_id(a.id, b.id);
  });
  if (gaps.empty()) return rep;

  const std::string signals = signal_table(ws.net());
  std::vector<std::string> req_ids;
  if (ws.bundle().requirements) {
    for (const auto& r : *ws.bundle().requirements) req_ids.push_back(r.req_id);
  }
  std::sort(req_ids.begin(), req_ids.end(), by_id);

  for (const auto& gap : gaps) {
    ++rep.gaps;
    rep.order.push_back(gap.id);
    std::string guard = "1'b1";
    if (auto it = ws.net().statement_guards.find(gap.id); it != ws.net().statement_guards.end() && it->second) {
      guard = to_verilog(*it->second);
    }

    // cov_analyzer: assumptions in the gap's module scope that keep it unreachable
    std::vector<std::string> candidates;
    if (ws.graph().contains(gap.id)) {
      kg::RetrievalBounds bounds{kGapScopeRadius, 1 << 20};
      for (const auto& m : kg::neighborhood(ws.graph(), gap.id, kg::TaskKind::kCoverage, bounds).members) {
        const kg::Node* n = ws.graph().find(m.id);
        if (!n || n->type != ir::kNodeProperty) continue;
        if (n->attributes.value("kind", std::string()) != "assumption") continue;
        if (n->attributes.value("status", std::string()) != "active") continue;
        candidates.push_back(m.id);
      }
    }
    std::sort(candidates.begin(), candidates.end(), by_id);
    std::vector<std::string> blocking;
    std::string prior;
    for (const auto& c : candidates) {
      prior += ws.properties().find(c)->sva_text + "\n";
      formal::CheckConfig cfg = ws.config().check;
      cfg.input_assumptions = active_assumptions(ws, {c});
      auto r = formal::statement_reachability(ws.net(), cfg);
      if (std::find(r.covered.begin(), r.covered.end(), gap.id) != r.covered.end()) {
        blocking.push_back(c);
      }
    }
    PromptEnvelope an = envelope(Role::kCovAnalyzer, "cov/" + gap.id + "/analyze", Shape::kAnalysis);
    an.set(Section::kSignalTable, signals)
        .set(Section::kPriorCode, prior.empty() ? "none\n" : prior)
        .set(Section::kDiagnostics, "statement: " + gap.id + "\nsource: " + gap.line + "\nguard: " + guard +
                                        "\nblocking: " + (blocking.empty() ? "none" : join(blocking, ", ")) + "\n");
    auto fields = analysis_fields(ws.session().send(an).analysis);
    std::vector<std::string> named;
    if (fields.count("blocking")) {
      for (auto& x : split(fields["blocking"], ',')) {
        x = trim(x);
        if (!x.empty() && x != "none") named.push_back(x);
      }
    }
    if (!named.empty()) rep.blocking[gap.id] = named;
    const bool defensive = fields.count("classification") && to_lower(fields["classification"]) == "defensive";
    cov.dead_code.push_back({gap.id, defensive ? ir::DeadCodeClass::kDefensive : ir::DeadCodeClass::kGap});
    if (defensive) {
      ++rep.defensive;
      continue;
    }

    // cov_processor
    std::optional<std::string> linked;
    std::size_t best = 0;
    for (const auto& r : req_ids) {
      auto path = kg::trace_path(ws.graph(), gap.id, r);
      if (!path) continue;
      if (!linked || path->size() < best) {
        linked = r;
        best = path->size();
      }
    }
    if (linked) {
      rep.linked[gap.id] = *linked;
    } else {
      ++rep.unlinked;
    }

    // cov_improver
    PromptEnvelope im = envelope(Role::kCovImprover, "cov/" + gap.id + "/improve", Shape::kPropertyBlock);
    im.set(Section::kRequirement, linked ? requirement_text(ws.bundle(), {*linked}) : "none\n")
        .set(Section::kSignalTable, signals)
        .set(Section::kDiagnostics, "statement: " + gap.id + "\nsource: " + gap.line + "\nguard: " + guard + "\n");
    sva::PropertyFile parsed = parse_block(ws.session().send(im).block);
    for (auto& decl : parsed.properties) {
      PropertyRecord rec;
      rec.prop_id = next_prop_id(ws.properties());
      decl.prop_id = rec.prop_id;
      rec.kind = decl.kind;
      if (linked) rec.req_ids = {*linked};
      rec.sva_text = sva::format_property(decl);
      // Gaps sharing a guard share the property.
      auto body = [](const std::string& t) { return t.substr(t.find(": ") + 2); };
      auto same = std::find_if(ws.properties().properties.begin(), ws.properties().properties.end(),
                               [&](const PropertyRecord& p) {
                                 return p.status == ir::PropStatus::kActive && body(p.sva_text) == body(rec.sva_text);
                               });
      if (same != ws.properties().properties.end()) {
        add_link(ws, same->prop_id, gap.id, ir::LinkKind::kCovers);
        continue;
      }
      ws.properties().properties.push_back(rec);
      if (linked) add_link(ws, rec.prop_id, *linked, ir::LinkKind::kValidates);
      add_link(ws, rec.prop_id, gap.id, ir::LinkKind::kCovers);
      rep.new_props.push_back(rec.prop_id);
    }
  }
  assemble(ws.properties());
  ws.refresh();
  return rep;
}

}  // namespace kgv::agents
