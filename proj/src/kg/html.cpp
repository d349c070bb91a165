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

#include <map>

#include "kgv/kg/graph.hpp"

namespace kgv::kg {
namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

// Column order and colour per node type.
const std::vector<std::pair<std::string, std::string>>& palette() {
  static const std::vector<std::pair<std::string, std::string>> p = {
      {"spec_chunk", "#4e79a7"},    {"requirement", "#f28e2b"}, {"property", "#59a14f"},
      {"formal_result", "#e15759"}, {"cex_case", "#b07aa1"},    {"coverage_metrics", "#76b7b2"},
      {"rtl_module", "#9c755f"},    {"rtl_signal", "#edc948"},  {"rtl_statement", "#bab0ac"},
  };
  return p;
}

}  // namespace

std::string render_html(const Graph& g, const std::string& title) {
  std::map<std::string, int> column;
  std::map<std::string, std::string> color;
  for (const auto& [t, c] : palette()) {
    column[t] = static_cast<int>(column.size());
    color[t] = c;
  }
  std::map<std::string, std::pair<int, int>> pos;
  std::map<int, int> rows;
  for (const auto& [id, n] : g.nodes()) {  // id order
    auto it = column.find(n.type);
    int col = it == column.end() ? static_cast<int>(palette().size()) : it->second;
    int row = rows[col]++;
    pos[id] = {60 + col * 170, 50 + row * 34};
  }
  int width = 60 + (static_cast<int>(palette().size()) + 1) * 170;
  int height = 80;
  for (const auto& [c, n] : rows) height = std::max(height, 60 + n * 34);

  Json data = Json::object();
  for (const auto& [id, n] : g.nodes()) data[id] = {{"type", n.type}, {"stale", n.stale}, {"attributes", n.attributes}};

  std::string out;
  out += "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" + escape(title) + "</title>\n<style>\n";
  out += "body{font-family:sans-serif;margin:0;display:flex}svg{flex:1}#info{width:340px;padding:8px;"
         "border-left:1px solid #ccc;font-size:12px;white-space:pre-wrap;overflow:auto;height:100vh}\n";
  out += "line{stroke:#999;stroke-width:1}line.hl{stroke:#d00;stroke-width:2}text{font-size:10px}"
         "circle.stale{stroke:#000;stroke-dasharray:2}\n";
  for (const auto& [t, c] : palette()) out += ".t-" + t + "{fill:" + c + "}\n";
  out += "</style></head><body>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\">\n";
  for (const auto& [t, col] : column) {
    out += "<text x=\"" + std::to_string(40 + col * 170) + "\" y=\"20\" font-weight=\"bold\">" + escape(t) +
           "</text>\n";
  }
  for (const auto& e : g.edges()) {
    auto [x1, y1] = pos[e.src];
    auto [x2, y2] = pos[e.dst];
    out += "<line data-src=\"" + escape(e.src) + "\" data-dst=\"" + escape(e.dst) + "\" x1=\"" +
           std::to_string(x1) + "\" y1=\"" + std::to_string(y1) + "\" x2=\"" + std::to_string(x2) + "\" y2=\"" +
           std::to_string(y2) + "\"><title>" + escape(e.type) + "</title></line>\n";
  }
  for (const auto& [id, n] : g.nodes()) {
    auto [x, y] = pos[id];
    out += "<g class=\"node\" data-id=\"" + escape(id) + "\"><circle class=\"t-" + escape(n.type) +
           (n.stale ? " stale" : "") + "\" cx=\"" + std::to_string(x) + "\" cy=\"" + std::to_string(y) +
           "\" r=\"7\"/><text x=\"" + std::to_string(x + 10) + "\" y=\"" + std::to_string(y + 4) + "\">" +
           escape(id) + "</text></g>\n";
  }
  out += "</svg>\n<div id=\"info\">Click a node.</div>\n";
  // Inline data; "</" is broken up so attribute text cannot close the script.
  std::string json = data.dump();
  std::string safe;
  for (std::size_t i = 0; i < json.size(); ++i) {
    if (json[i] == '<') {
      safe += "\\u003c";
    } else {
      safe += json[i];
    }
  }
  out += "<script>\nconst NODES = " + safe + ";\n";
  out += "document.querySelectorAll('g.node').forEach(g => g.addEventListener('click', () => {\n"
         "  const id = g.dataset.id;\n"
         "  document.querySelectorAll('line').forEach(l => l.classList.toggle('hl',"
         " l.dataset.src === id || l.dataset.dst === id));\n"
         "  document.getElementById('info').textContent = id + '\\n' + JSON.stringify(NODES[id], null, 2);\n"
         "}));\n</script>\n</body></html>\n";
  return out;
}

}  // namespace kgv::kg
