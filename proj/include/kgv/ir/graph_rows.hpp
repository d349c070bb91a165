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

#ifndef KGV_IR_GRAPH_ROWS_HPP_
#define KGV_IR_GRAPH_ROWS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "kgv/base/error.hpp"
#include "kgv/ir/types.hpp"

namespace kgv::ir {

struct NodeRow {
  std::string id;
  std::string type;
  std::string run_id;
  Json attributes = Json::object();
  bool operator==(const NodeRow&) const = default;
};

struct EdgeRow {
  std::string src;
  std::string dst;
  std::string type;
  std::string run_id;
  Json attributes = Json::object();
  bool operator==(const EdgeRow&) const = default;
};

struct GraphRows {
  std::vector<NodeRow> nodes;  // sorted by (type, id)
  std::vector<EdgeRow> edges;  // sorted by (type, src, dst)
};

Json to_json(const NodeRow& r);
Json to_json(const EdgeRow& r);

// Node id of an RTL module.
std::string module_node_id(std::string_view module);

// Rows for every record in the bundle plus structural edges. Throws when a
// trace link or counterexample names a node that does not exist.
GraphRows export_graph(const RunBundle& b);

class CsvError : public Error {
 public:
  CsvError(std::size_t offset, const std::string& message)
      : Error("csv: byte " + std::to_string(offset) + ": " + message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// RFC 4180 records; quoted fields may hold commas, quotes ("") and newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_field(std::string_view s);

std::string nodes_csv(const std::vector<NodeRow>& rows);
std::string edges_csv(const std::vector<EdgeRow>& rows);
// Parse the tables written above; the header row is required.
std::vector<NodeRow> parse_nodes_csv(std::string_view text);
std::vector<EdgeRow> parse_edges_csv(std::string_view text);

}  // namespace kgv::ir

#endif  // KGV_IR_GRAPH_ROWS_HPP_
