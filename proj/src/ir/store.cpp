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

#include "kgv/ir/store.hpp"

#include <unistd.h>

#include <chrono>
#include <ctime>
#include <system_error>

#include "kgv/base/hash.hpp"
#include "kgv/base/text.hpp"
#include "kgv/ir/json.hpp"
#include "kgv/ir/validate.hpp"

namespace fs = std::filesystem;

namespace kgv::ir {

std::string content_hash(const RunBundle& b) {
  std::string data;
  for (ArtifactKind k : all_artifact_kinds()) {
    if (k == ArtifactKind::kRunContext) continue;
    data += artifact_name(k);
    data += '\n';
    if (has_artifact(b, k)) {
      data += nlohmann::json::parse(artifact_document(b, k).dump()).dump();
    } else {
      data += "absent";
    }
    data += '\n';
  }
  return sha256_hex(data);
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string make_run_id(std::string_view created_at, const RunBundle& b) {
  std::string compact;
  for (char c : created_at) {
    if (c != '-' && c != ':') compact += c;
  }
  return compact + "-" + content_hash(b).substr(0, 8);
}

namespace {

std::string pretty(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

RunContext save_run(const RunBundle& in, const fs::path& root, const SaveOptions& opts) {
  RunBundle b = in;
  b.context.artifact_paths.clear();
  if (b.context.created_at.empty()) b.context.created_at = utc_now();
  b.context.run_id = make_run_id(b.context.created_at, b);
  for (ArtifactKind k : all_artifact_kinds()) {
    if (has_artifact(b, k)) b.context.artifact_paths[std::string(artifact_name(k))] = std::string(artifact_file(k));
  }
  if (opts.write_graph) {
    for (ArtifactKind k : {ArtifactKind::kNodes, ArtifactKind::kEdges}) {
      b.context.artifact_paths[std::string(artifact_name(k))] = std::string(artifact_file(k));
    }
  }
  ValidationReport rep = validate_bundle(b);
  if (!rep.ok()) throw ValidationError(rep);
  GraphRows rows;
  if (opts.write_graph) rows = export_graph(b);

  const fs::path final_dir = root / b.context.run_id;
  const fs::path staging = root / (".staging-" + b.context.run_id + "-" + std::to_string(::getpid()));
  try {
    fs::create_directories(root);
    fs::remove_all(staging);
    fs::create_directory(staging);
    for (ArtifactKind k : all_artifact_kinds()) {
      if (!has_artifact(b, k)) continue;
      write_file(staging / artifact_file(k), pretty(artifact_document(b, k)));
    }
    if (opts.write_graph) {
      write_file(staging / artifact_file(ArtifactKind::kNodes), nodes_csv(rows.nodes));
      write_file(staging / artifact_file(ArtifactKind::kEdges), edges_csv(rows.edges));
    }
    if (opts.extra_files) {
      for (const auto& [rel, content] : opts.extra_files(b.context)) {
        const fs::path target = staging / rel;
        fs::create_directories(target.parent_path());
        write_file(target, content);
      }
    }
    // Same run_id means same timestamp and content: replace.
    fs::remove_all(final_dir);
    fs::rename(staging, final_dir);
  } catch (const std::exception& e) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    throw StoreError(final_dir.string(), std::nullopt, std::string("cannot write run: ") + e.what());
  }
  return b.context;
}

namespace {

Json parse_file(const fs::path& file) {
  std::string text;
  try {
    text = read_file(file);
  } catch (const std::exception& e) {
    throw StoreError(file.string(), std::nullopt, e.what());
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw StoreError(file.string(), e.byte, "corrupt document");
  }
}

}  // namespace

RunBundle load_run(const fs::path& root, const std::string& run_id) {
  const fs::path dir = root / run_id;
  if (!fs::is_directory(dir)) throw StoreError(dir.string(), std::nullopt, "no such run directory");
  RunBundle b;
  for (ArtifactKind k : all_artifact_kinds()) {
    if (k == ArtifactKind::kNodes || k == ArtifactKind::kEdges) continue;
    fs::path file = dir / artifact_file(k);
    if (!fs::exists(file)) {
      if (k == ArtifactKind::kRunContext) throw StoreError(file.string(), std::nullopt, "missing run context");
      continue;
    }
    Json doc = parse_file(file);
    ValidationReport rep = validate_artifact(doc, k);
    if (!rep.ok()) throw StoreError(file.string(), std::nullopt, "invalid document:\n" + rep.format());
    decode_artifact(doc, k, b, rep);
  }
  ValidationReport rep = validate_bundle(b);
  if (!rep.ok()) throw StoreError(dir.string(), std::nullopt, "inconsistent run:\n" + rep.format());
  return b;
}

GraphRows load_graph_rows(const fs::path& root, const std::string& run_id) {
  const fs::path dir = root / run_id;
  fs::path nodes = dir / artifact_file(ArtifactKind::kNodes);
  fs::path edges = dir / artifact_file(ArtifactKind::kEdges);
  if (!fs::exists(nodes) || !fs::exists(edges)) return export_graph(load_run(root, run_id));
  GraphRows rows;
  try {
    rows.nodes = parse_nodes_csv(read_file(nodes));
  } catch (const CsvError& e) {
    throw StoreError(nodes.string(), e.offset(), e.what());
  }
  try {
    rows.edges = parse_edges_csv(read_file(edges));
  } catch (const CsvError& e) {
    throw StoreError(edges.string(), e.offset(), e.what());
  }
  return rows;
}

}  // namespace kgv::ir
