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

#include "kgv/ir/graph_rows.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <tuple>

#include "kgv/base/text.hpp"
#include "kgv/ir/json.hpp"
#include "kgv/ir/validate.hpp"
#include "kgv/kg/signal_index.hpp"

namespace kgv::ir {

Json to_json(const NodeRow& r) {
  return {{"id", r.id}, {"type", r.type}, {"run_id", r.run_id}, {"attributes", r.attributes}};
}

Json to_json(const EdgeRow& r) {
  return {{"src", r.src}, {"dst", r.dst}, {"type", r.type}, {"run_id", r.run_id}, {"attributes", r.attributes}};
}

std::string module_node_id(std::string_view module) { return "MOD-" + std::string(module); }

namespace {

class Builder {
 public:
  explicit Builder(const RunBundle& b) : b_(b), run_(b.context.run_id) {}

  GraphRows run() {
    chunks();
    requirements();
    properties();
    results();
    coverage();
    design();
    links();
    std::sort(rows_.nodes.begin(), rows_.nodes.end(),
              [](const auto& a, const auto& b) { return std::tie(a.type, a.id) < std::tie(b.type, b.id); });
    for (const auto& [key, attrs] : edges_) {
      const auto& [type, src, dst] = key;
      rows_.edges.push_back({src, dst, type, run_, attrs});
    }
    return std::move(rows_);
  }

 private:
  void node(const std::string& id, std::string_view type, Json attrs) {
    if (!ids_.emplace(id, std::string(type)).second) {
      throw Error("export_graph: duplicate node id '" + id + "'");
    }
    rows_.nodes.push_back({id, std::string(type), run_, std::move(attrs)});
  }

  void edge(const std::string& src, const std::string& dst, std::string_view type) {
    edges_.emplace(std::make_tuple(std::string(type), src, dst), Json::object());
  }

  bool has(const std::string& id) const { return ids_.count(id) > 0; }

  void chunks() {
    if (!b_.spec_chunks) return;
    std::vector<const SpecChunk*> order;
    for (const auto& c : *b_.spec_chunks) {
      node(c.chunk_id, kNodeSpecChunk,
           {{"heading_path", c.heading_path},
            {"text", c.text},
            {"semantic_tags", c.semantic_tags},
            {"order_index", c.order_index}});
      order.push_back(&c);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto* a, const auto* b) { return a->order_index < b->order_index; });
    for (std::size_t i = 1; i < order.size(); ++i) edge(order[i - 1]->chunk_id, order[i]->chunk_id, kEdgePrecedes);
  }

  void requirements() {
    if (!b_.requirements) return;
    for (const auto& r : *b_.requirements) {
      node(r.req_id, kNodeRequirement,
           {{"text", r.text},
            {"category", std::string(to_string(r.category))},
            {"priority", std::string(to_string(r.priority))}});
    }
  }

  void properties() {
    if (!b_.properties) return;
    for (const auto& p : b_.properties->properties) {
      node(p.prop_id, kNodeProperty,
           {{"kind", std::string(sva::to_string(p.kind))},
            {"status", std::string(to_string(p.status))},
            {"sva_text", p.sva_text},
            {"line_span", Json::array({p.line_span.first, p.line_span.second})},
            {"attempts", p.attempt_history.size()}});
    }
  }

  void results() {
    if (b_.formal_results) {
      for (const auto& r : *b_.formal_results) {
        Json a = to_json(r);
        a.erase("result_id");
        node(r.result_id, kNodeFormalResult, std::move(a));
      }
    }
    if (b_.cex_cases) {
      for (const auto& c : *b_.cex_cases) {
        node(c.cex_id, kNodeCexCase,
             {{"prop_id", c.prop_id},
              {"vcd_path", c.vcd_path},
              {"failure_time", c.failure_time},
              {"failure_line", c.failure_line},
              {"root_cause", c.root_cause ? Json(std::string(to_string(*c.root_cause))) : Json(nullptr)},
              {"diagnosis", c.diagnosis},
              {"attempts", c.attempts.size()}});
      }
    }
  }

  void coverage() {
    if (!b_.coverage_metrics) return;
    for (const auto& c : *b_.coverage_metrics) {
      Json a = to_json(c);
      a.erase("cov_id");
      node(c.cov_id, kNodeCoverage, std::move(a));
    }
  }

  // Module of each instance scope, walked from the elaborated top.
  void scopes(const rtl::DesignModel& d, const std::string& scope, const std::string& module, int depth,
              std::map<std::string, std::string>& out) {
    if (depth > 64) throw Error("export_graph: instance hierarchy too deep");
    out[scope] = module;
    const rtl::ModuleDecl* m = d.find_module(module);
    if (!m) return;
    for (const auto& i : m->instances) scopes(d, scope + "." + i.name, i.module, depth + 1, out);
  }

  void design() {
    if (!b_.design_model) return;
    const auto& d = *b_.design_model;
    for (const auto& m : d.modules) {
      node(module_node_id(m.name), kNodeModule, {{"name", m.name}, {"file", m.file}, {"line", m.line}});
    }
    for (const auto& m : d.modules) {
      for (const auto& i : m.instances) {
        if (d.find_module(i.module)) edge(module_node_id(m.name), module_node_id(i.module), kEdgeContains);
      }
    }
    for (const auto& s : d.statements) {
      node(s.id, kNodeStatement,
           {{"module", s.module}, {"line", s.line}, {"kind", std::string(rtl::to_string(s.kind))}});
      edge(module_node_id(s.module), s.id, kEdgeContains);
    }
    std::map<std::string, std::string> scope_module;
    if (!d.top.empty()) scopes(d, d.top, d.top, 0, scope_module);
    std::vector<std::string> paths;
    for (const auto& [path, width] : d.signal_paths) {
      node(path, kNodeSignal, {{"width", width}});
      paths.push_back(path);
      auto dot = path.rfind('.');
      if (dot == std::string::npos) continue;
      auto it = scope_module.find(path.substr(0, dot));
      if (it != scope_module.end()) edge(module_node_id(it->second), path, kEdgeContains);
    }
    kg::SignalIndex index(paths);
    if (b_.testplan) {
      for (const auto& t : *b_.testplan) {
        if (!has(t.req_id)) continue;
        for (const auto& m : t.observable_signals) {
          for (const auto& p : kg::resolve_signal(index, m)) edge(t.req_id, p, kEdgeMentions);
        }
      }
    }
    if (b_.properties && !d.top.empty()) {
      static const std::regex kIdent("[A-Za-z_][A-Za-z0-9_]*(\\.[A-Za-z_][A-Za-z0-9_]*)*");
      for (const auto& p : b_.properties->properties) {
        for (std::sregex_iterator it(p.sva_text.begin(), p.sva_text.end(), kIdent), end; it != end; ++it) {
          std::string path = d.top + "." + it->str();
          if (index.contains(path)) edge(p.prop_id, path, kEdgeReferences);
          if (index.contains(it->str())) edge(p.prop_id, it->str(), kEdgeReferences);
        }
      }
    }
  }

  void links() {
    if (b_.cex_cases) {
      for (const auto& c : *b_.cex_cases) {
        if (c.result_id.empty()) continue;
        if (!has(c.result_id)) {
          throw Error("export_graph: dangling reference: " + c.cex_id + " names result '" + c.result_id + "'");
        }
        edge(c.result_id, c.cex_id, kEdgeContains);
      }
    }
    if (!b_.tracelinks) return;
    for (const auto& l : *b_.tracelinks) {
      std::string name = l.src_id + " -" + std::string(to_string(l.link_kind)) + "-> " + l.dst_id;
      for (const auto* id : {&l.src_id, &l.dst_id}) {
        if (!has(*id)) throw Error("export_graph: dangling reference in link " + name + ": no node '" + *id + "'");
      }
      if (!endpoint_kinds_ok(l.link_kind, ids_.at(l.src_id), ids_.at(l.dst_id))) {
        throw Error("export_graph: endpoint kind mismatch in link " + name);
      }
      edge(l.src_id, l.dst_id, to_string(l.link_kind));
    }
  }

  const RunBundle& b_;
  std::string run_;
  GraphRows rows_;
  std::map<std::string, std::string> ids_;
  std::map<std::tuple<std::string, std::string, std::string>, Json> edges_;
};

}  // namespace

GraphRows export_graph(const RunBundle& b) { return Builder(b).run(); }

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool row_open = false;
  while (i < n) {
    char c = text[i];
    if (c == '"') {
      if (!field.empty()) throw CsvError(i, "quote inside unquoted field");
      std::size_t open = i++;
      while (true) {
        if (i >= n) throw CsvError(open, "unterminated quoted field");
        if (text[i] == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field += text[i++];
      }
      if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        throw CsvError(i, "text after closing quote");
      }
      row_open = true;
      continue;
    }
    if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      row_open = true;
      ++i;
      continue;
    }
    if (c == '\r' || c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_open = false;
      i += (c == '\r' && i + 1 < n && text[i + 1] == '\n') ? 2 : 1;
      continue;
    }
    field += c;
    row_open = true;
    ++i;
  }
  if (row_open) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string nodes_csv(const std::vector<NodeRow>& rows) {
  std::string out = "id,type,run_id,attributes\n";
  for (const auto& r : rows) {
    out += csv_field(r.id) + "," + csv_field(r.type) + "," + csv_field(r.run_id) + "," +
           csv_field(r.attributes.dump()) + "\n";
  }
  return out;
}

std::string edges_csv(const std::vector<EdgeRow>& rows) {
  std::string out = "src,dst,type,run_id,attributes\n";
  for (const auto& r : rows) {
    out += csv_field(r.src) + "," + csv_field(r.dst) + "," + csv_field(r.type) + "," + csv_field(r.run_id) + "," +
           csv_field(r.attributes.dump()) + "\n";
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> table(std::string_view text, const std::vector<std::string>& header) {
  auto rows = parse_csv(text);
  if (rows.empty() || rows[0] != header) throw CsvError(0, "expected header " + join(header, ","));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) {
      throw CsvError(0, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) + " fields, expected " +
                            std::to_string(header.size()));
    }
  }
  rows.erase(rows.begin());
  return rows;
}

Json attributes(const std::string& s, std::size_t row) {
  try {
    Json j = Json::parse(s);
    if (j.is_object()) return j;
  } catch (const Json::parse_error&) {
  }
  throw CsvError(0, "row " + std::to_string(row) + ": attributes is not a JSON object");
}

}  // namespace

std::vector<NodeRow> parse_nodes_csv(std::string_view text) {
  std::vector<NodeRow> out;
  auto rows = table(text, {"id", "type", "run_id", "attributes"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    out.push_back({std::move(r[0]), std::move(r[1]), std::move(r[2]), attributes(r[3], i + 1)});
  }
  return out;
}

std::vector<EdgeRow> parse_edges_csv(std::string_view text) {
  std::vector<EdgeRow> out;
  auto rows = table(text, {"src", "dst", "type", "run_id", "attributes"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    out.push_back({std::move(r[0]), std::move(r[1]), std::move(r[2]), std::move(r[3]), attributes(r[4], i + 1)});
  }
  return out;
}

}  // namespace kgv::ir
