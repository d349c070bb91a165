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

#ifndef KGV_IR_STORE_HPP_
#define KGV_IR_STORE_HPP_

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "kgv/base/error.hpp"
#include "kgv/ir/graph_rows.hpp"
#include "kgv/ir/types.hpp"

namespace kgv::ir {

class StoreError : public Error {
 public:
  StoreError(std::string file, std::optional<std::size_t> offset, const std::string& message)
      : Error(file + (offset ? ": byte " + std::to_string(*offset) : std::string()) + ": " + message),
        file_(std::move(file)),
        offset_(offset) {}
  const std::string& file() const { return file_; }
  std::optional<std::size_t> offset() const { return offset_; }

 private:
  std::string file_;
  std::optional<std::size_t> offset_;
};

struct SaveOptions {
  bool write_graph = false;  // also write nodes.csv / edges.csv
  // Extra files (relative path -> content) written next to the artifacts,
  // computed once the run context is final.
  std::function<std::map<std::string, std::string>(const RunContext&)> extra_files;
};

// SHA-256 over the artifact documents (run context excluded), keys sorted.
std::string content_hash(const RunBundle& b);
std::string utc_now();  // YYYY-MM-DDTHH:MM:SSZ
// YYYYMMDDTHHMMSSZ-<first 8 hex digits of content_hash>.
std::string make_run_id(std::string_view created_at, const RunBundle& b);

// Validates the bundle, writes every present artifact to a staging directory
// under `root` and renames it to root/<run_id>. Fills run_id (and created_at
// when empty) and artifact_paths in the returned context.
RunContext save_run(const RunBundle& b, const std::filesystem::path& root, const SaveOptions& opts = {});
RunBundle load_run(const std::filesystem::path& root, const std::string& run_id);

// nodes.csv / edges.csv of a saved run, or a fresh export when absent.
GraphRows load_graph_rows(const std::filesystem::path& root, const std::string& run_id);

}  // namespace kgv::ir

#endif  // KGV_IR_STORE_HPP_
