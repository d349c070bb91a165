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

#ifndef KGV_KG_SIGNAL_INDEX_HPP_
#define KGV_KG_SIGNAL_INDEX_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kgv::kg {

// Maps every dot-separated suffix of a hierarchical path to the paths that
// end with it: `top.u0.q` is indexed under `q`, `u0.q` and `top.u0.q`.
class SignalIndex {
 public:
  SignalIndex() = default;
  explicit SignalIndex(const std::vector<std::string>& paths);

  void add(const std::string& path);
  const std::map<std::string, std::set<std::string>>& entries() const { return entries_; }
  const std::set<std::string>& paths() const { return paths_; }
  bool contains(std::string_view path) const { return paths_.count(std::string(path)) > 0; }

 private:
  std::map<std::string, std::set<std::string>> entries_;
  std::set<std::string> paths_;
};

// Sorted paths whose trailing tokens equal the mention's tokens.
std::vector<std::string> resolve_signal(const SignalIndex& idx, std::string_view mention);

}  // namespace kgv::kg

#endif  // KGV_KG_SIGNAL_INDEX_HPP_
