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

#ifndef KGV_BASE_TEXT_HPP_
#define KGV_BASE_TEXT_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace kgv {

std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_lines(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);
std::string to_lower(std::string_view s);
// Collapses every run of whitespace (including newlines) to one space.
std::string collapse_whitespace(std::string_view s);
// Formats `prefix-NNN` with at least three digits.
std::string make_id(std::string_view prefix, int n);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

}  // namespace kgv

#endif  // KGV_BASE_TEXT_HPP_
