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

#include "kgv/agents/protocol.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "kgv/base/hash.hpp"
#include "kgv/base/text.hpp"
#include "kgv/sva/property.hpp"

namespace kgv::agents {

namespace {

struct RoleInfo {
  Role role;
  std::string_view name;
  std::string_view instructions;
};

constexpr std::array<RoleInfo, 17> kRoles = {{
    {Role::kSvaLead, "sva_lead", "Choose a verification strategy for the requirement in the context."},
    {Role::kSpecAnalyst, "spec_analyst",
     "Decompose the requirement into trigger, response, timing and exceptions, one `key: value` line each."},
    {Role::kSvaAuthor, "sva_author",
     "Write SystemVerilog assertions for the requirement using only signals from the signal table."},
    {Role::kSvaReviewer, "sva_reviewer",
     "Review the prior code against the requirement and the rulebook. Answer APPROVE or REJECT, then reasons."},
    {Role::kSvaPatcher, "sva_patcher", "Revise the prior code so that it addresses the review diagnostics."},
    {Role::kCodeExtractor, "code_extractor", "Assemble accepted property blocks into one property file."},
    {Role::kSyntaxAnalyzer, "syntax_analyzer", "Attribute each compiler diagnostic to a property."},
    {Role::kSyntaxFixer, "syntax_fixer", "Return a unified diff over the prior code that removes the diagnostic."},
    {Role::kSyntaxValidator, "syntax_validator", "Recompile a patched property on its own."},
    {Role::kVcdParser, "vcd_parser", "Summarize the waveform around the failure time."},
    {Role::kSpecAssertionAnalyzer, "spec_assertion_analyzer",
     "Classify the counterexample. Answer with a `root_cause:` line: rtl_bug, over_specification, "
     "missing_assumption or under_specification."},
    {Role::kRtlAnalyzer, "rtl_analyzer", "Relate the failing signals to RTL statements."},
    {Role::kCexFixer, "cex_fixer", "Return a unified diff over the prior code that resolves the counterexample."},
    {Role::kCovLeadAgent, "cov_lead_agent", "Order coverage gaps for analysis."},
    {Role::kCovAnalyzer, "cov_analyzer",
     "Decide whether the gap is defensive code or a real gap. Answer with `classification:` and `blocking:` lines."},
    {Role::kCovProcessor, "cov_processor", "Link the gap to requirements."},
    {Role::kCovImprover, "cov_improver", "Write cover directives and assertions that exercise the gap."},
}};

constexpr std::array<std::string_view, 4> kShapes = {"analysis", "code_patch", "verdict", "property_block"};

const std::string kTruncated = "\n[truncated]";

}  // namespace

const std::vector<Role>& all_roles() {
  static const std::vector<Role> roles = [] {
    std::vector<Role> out;
    for (const auto& r : kRoles) out.push_back(r.role);
    return out;
  }();
  return roles;
}

std::string_view to_string(Role r) { return kRoles[static_cast<std::size_t>(r)].name; }

std::optional<Role> parse_role(std::string_view s) {
  for (const auto& r : kRoles) {
    if (r.name == s) return r.role;
  }
  return std::nullopt;
}

std::string_view system_instructions(Role r) { return kRoles[static_cast<std::size_t>(r)].instructions; }

std::string_view to_string(Shape s) { return kShapes[static_cast<std::size_t>(s)]; }

std::optional<Shape> parse_shape(std::string_view s) {
  for (std::size_t i = 0; i < kShapes.size(); ++i) {
    if (kShapes[i] == s) return static_cast<Shape>(i);
  }
  return std::nullopt;
}

std::string_view heading(Section s) {
  switch (s) {
    case Section::kRequirement: return "Requirement";
    case Section::kSpecFragment: return "Spec fragment";
    case Section::kSignalTable: return "Signal table";
    case Section::kRulebook: return "Rulebook excerpt";
    case Section::kPriorCode: return "Prior code";
    case Section::kDiagnostics: return "Diagnostics";
  }
  return "";
}

PromptEnvelope& PromptEnvelope::set(Section s, std::string text) {
  sections[s] = std::move(text);
  return *this;
}

const std::string* PromptEnvelope::get(Section s) const {
  auto it = sections.find(s);
  return it == sections.end() ? nullptr : &it->second;
}

std::string PromptEnvelope::context() const {
  std::string out;
  for (const auto& [s, body] : sections) {
    std::string head = "### " + std::string(heading(s)) + "\n";
    const std::size_t fixed = out.size() + head.size() + 2;
    if (fixed + kTruncated.size() > budget) break;
    const std::size_t room = budget - fixed;
    out += head;
    if (body.size() <= room) {
      out += body;
    } else {
      out += body.substr(0, room - kTruncated.size());
      out += kTruncated;
    }
    out += "\n\n";
  }
  return out;
}

std::string PromptEnvelope::digest() const {
  std::string key = std::string(to_string(role)) + "\n" + step_id + "\n" + std::string(to_string(expected_shape)) +
                    "\n" + context();
  return sha256_hex(key);
}

// ---- unified patches ----

namespace {

std::vector<std::string> lines_of(std::string_view s) {
  std::vector<std::string> out = split(s, '\n');
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

std::string range(int start, int count) { return std::to_string(start) + "," + std::to_string(count); }

int parse_int(const std::string& s, std::string_view what) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw PatchError("bad " + std::string(what) + " '" + s + "' in hunk header");
  }
  return std::stoi(s);
}

std::pair<int, int> parse_range(const std::string& s, char sign) {
  if (s.empty() || s[0] != sign) throw PatchError("bad hunk range '" + s + "'");
  auto parts = split(s.substr(1), ',');
  if (parts.size() > 2) throw PatchError("bad hunk range '" + s + "'");
  int start = parse_int(parts[0], "start");
  int count = parts.size() == 2 ? parse_int(parts[1], "count") : 1;
  return {start, count};
}

}  // namespace

std::string make_patch(std::string_view before, std::string_view after, std::string_view name) {
  auto a = lines_of(before);
  auto b = lines_of(after);
  std::ostringstream o;
  o << "--- a/" << name << "\n+++ b/" << name << "\n";
  if (a == b) return o.str();
  std::size_t pre = 0;
  while (pre < a.size() && pre < b.size() && a[pre] == b[pre]) ++pre;
  std::size_t post = 0;
  while (post < a.size() - pre && post < b.size() - pre && a[a.size() - 1 - post] == b[b.size() - 1 - post]) ++post;
  const int old_count = static_cast<int>(a.size());
  const int new_count = static_cast<int>(b.size());
  o << "@@ -" << range(old_count == 0 ? 0 : 1, old_count) << " +" << range(new_count == 0 ? 0 : 1, new_count)
    << " @@\n";
  for (std::size_t i = 0; i < pre; ++i) o << ' ' << a[i] << '\n';
  for (std::size_t i = pre; i < a.size() - post; ++i) o << '-' << a[i] << '\n';
  for (std::size_t i = pre; i < b.size() - post; ++i) o << '+' << b[i] << '\n';
  for (std::size_t i = a.size() - post; i < a.size(); ++i) o << ' ' << a[i] << '\n';
  return o.str();
}

UnifiedPatch parse_patch(std::string_view text) {
  auto lines = lines_of(text);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i + 1 >= lines.size() || !starts_with(lines[i], "--- ") || !starts_with(lines[i + 1], "+++ ")) {
    throw PatchError("missing ---/+++ header");
  }
  i += 2;
  UnifiedPatch p;
  while (i < lines.size()) {
    const std::string& h = lines[i];
    if (trim(h).empty()) {
      ++i;
      continue;
    }
    if (!starts_with(h, "@@ ")) throw PatchError("expected hunk header, got '" + h + "'");
    auto parts = split(h, ' ');
    if (parts.size() < 4 || parts[3] != "@@") throw PatchError("bad hunk header '" + h + "'");
    auto [old_start, old_count] = parse_range(parts[1], '-');
    auto [new_start, new_count] = parse_range(parts[2], '+');
    (void)new_start;
    Hunk hunk;
    hunk.old_start = old_start;
    ++i;
    int seen_old = 0;
    int seen_new = 0;
    while (i < lines.size() && (seen_old < old_count || seen_new < new_count)) {
      const std::string& l = lines[i];
      char c = l.empty() ? ' ' : l[0];
      if (c == ' ') {
        ++seen_old;
        ++seen_new;
      } else if (c == '-') {
        ++seen_old;
      } else if (c == '+') {
        ++seen_new;
      } else if (c == '\\') {
        ++i;
        continue;
      } else {
        throw PatchError("bad hunk line '" + l + "'");
      }
      hunk.lines.push_back(l.empty() ? " " : l);
      ++i;
    }
    if (seen_old != old_count || seen_new != new_count) throw PatchError("hunk line counts do not match header");
    p.hunks.push_back(std::move(hunk));
  }
  return p;
}

std::string apply_patch(std::string_view before, const UnifiedPatch& p) {
  auto a = lines_of(before);
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (const auto& h : p.hunks) {
    std::size_t start = h.old_start == 0 ? 0 : static_cast<std::size_t>(h.old_start - 1);
    if (start < pos || start > a.size()) throw PatchError("hunk out of order or out of range");
    while (pos < start) out.push_back(a[pos++]);
    for (const auto& l : h.lines) {
      std::string body = l.substr(1);
      if (l[0] == '+') {
        out.push_back(body);
        continue;
      }
      if (pos >= a.size() || a[pos] != body) {
        throw PatchError("hunk does not apply at line " + std::to_string(pos + 1));
      }
      if (l[0] == ' ') out.push_back(body);
      ++pos;
    }
  }
  while (pos < a.size()) out.push_back(a[pos++]);
  std::string r = join(out, "\n");
  if (!before.empty() && before.back() == '\n' && !r.empty()) r += '\n';
  return r;
}

// ---- responses ----

std::map<std::string, std::string> analysis_fields(std::string_view text) {
  std::map<std::string, std::string> out;
  for (const auto& line : split(text, '\n')) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = to_lower(trim(line.substr(0, colon)));
    if (key.empty() || key.find(' ') != std::string::npos) continue;
    if (!out.count(key)) out[key] = trim(line.substr(colon + 1));
  }
  return out;
}

AgentResponse parse_response(const PromptEnvelope& env, const std::string& raw) {
  AgentResponse r;
  r.role = env.role;
  r.step_id = env.step_id;
  r.shape = env.expected_shape;
  r.raw = raw;
  const std::string body = trim(raw);
  switch (env.expected_shape) {
    case Shape::kAnalysis:
      if (body.empty()) throw ProtocolError("empty analysis", raw);
      r.analysis = body;
      break;
    case Shape::kCodePatch:
      try {
        r.patch = parse_patch(raw);
      } catch (const PatchError& e) {
        throw ProtocolError(std::string("code_patch: ") + e.what(), raw);
      }
      break;
    case Shape::kVerdict: {
      auto lines = split(body, '\n');
      if (lines.empty()) throw ProtocolError("empty verdict", raw);
      std::string first = to_lower(trim(lines[0]));
      if (starts_with(first, "approve")) {
        r.verdict.approve = true;
      } else if (starts_with(first, "reject")) {
        r.verdict.approve = false;
      } else {
        throw ProtocolError("verdict must start with APPROVE or REJECT", raw);
      }
      for (std::size_t i = 1; i < lines.size(); ++i) {
        std::string l = trim(lines[i]);
        if (starts_with(l, "- ")) l = trim(l.substr(2));
        if (!l.empty()) r.verdict.reasons.push_back(l);
      }
      break;
    }
    case Shape::kPropertyBlock: {
      sva::ParseOptions opt;
      opt.require_clock = false;
      auto parsed = sva::parse_properties(body, opt);
      if (!parsed.ok()) throw ProtocolError("property_block: " + parsed.diags.format("block"), raw);
      if (parsed->properties.empty()) throw ProtocolError("property_block holds no property", raw);
      r.block = body;
      break;
    }
  }
  return r;
}

// ---- transcripts ----

Json to_json(const Transcript& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) {
    entries.push_back({{"digest", e.digest},
                       {"role", std::string(to_string(e.role))},
                       {"step_id", e.step_id},
                       {"shape", std::string(to_string(e.shape))},
                       {"response", e.response}});
  }
  return {{"run_id", t.run_id}, {"created_at", t.created_at}, {"entries", entries}};
}

Transcript transcript_from_json(const Json& j) {
  try {
    Transcript t;
    t.run_id = j.at("run_id").get<std::string>();
    t.created_at = j.at("created_at").get<std::string>();
    for (const auto& e : j.at("entries")) {
      TranscriptEntry x;
      x.digest = e.at("digest").get<std::string>();
      auto role = parse_role(e.at("role").get<std::string>());
      auto shape = parse_shape(e.at("shape").get<std::string>());
      if (!role || !shape) throw Error("transcript: unknown role or shape");
      x.role = *role;
      x.shape = *shape;
      x.step_id = e.at("step_id").get<std::string>();
      x.response = e.at("response").get<std::string>();
      t.entries.push_back(std::move(x));
    }
    return t;
  } catch (const Json::exception& e) {
    throw Error(std::string("transcript: ") + e.what());
  }
}

std::string serialize(const Transcript& t) { return to_json(t).dump(2) + "\n"; }

Transcript load_transcript(const std::string& path) {
  std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error("transcript " + path + ": byte " + std::to_string(e.byte) + ": not valid JSON");
  }
  return transcript_from_json(j);
}

}  // namespace kgv::agents
