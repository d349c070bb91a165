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

#include "kgv/kg/signal_index.hpp"

#include "kgv/base/text.hpp"

namespace kgv::kg {

SignalIndex::SignalIndex(const std::vector<std::string>& paths) {
  for (const auto& p : paths) add(p);
}

void SignalIndex::add(const std::string& path) {
  paths_.insert(path);
  std::vector<std::string> toks = split(path, '.');
  for (std::size_t i = 0; i < toks.size(); ++i) {
    std::vector<std::string> tail(toks.begin() + static_cast<std::ptrdiff_t>(i), toks.end());
    entries_[join(tail, ".")].insert(path);
  }
}

std::vector<std::string> resolve_signal(const SignalIndex& idx, std::string_view mention) {
  std::vector<std::string> toks = split(trim(mention), '.');
  for (const auto& t : toks) {
    if (t.empty()) return {};
  }
  auto it = idx.entries().find(join(toks, "."));
  if (it == idx.entries().end()) return {};
  return {it->second.begin(), it->second.end()};
}

}  // namespace kgv::kg
