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

#include "reader.hpp"

#include <algorithm>
#include <cstring>

namespace kgv::ir::detail {

bool Reader::object(const Json& v, const std::string& path, std::initializer_list<const char*> keys) {
  if (!v.is_object()) {
    fail(path, "expected object");
    return false;
  }
  for (const auto& [k, _] : v.items()) {
    bool known = std::any_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; });
    if (!known) fail(path + "/" + k, "unknown field");
  }
  return true;
}

bool Reader::array(const Json& v, const std::string& path) {
  if (!v.is_array()) {
    fail(path, "expected array");
    return false;
  }
  return true;
}

const Json* Reader::get(const Json& obj, const std::string& path, const char* key, bool required) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  if (it == obj.end() || (!required && it->is_null())) {
    if (required) fail(path + "/" + key, "missing field");
    return nullptr;
  }
  return &*it;
}

std::string Reader::str(const Json& obj, const std::string& path, const char* key) {
  const Json* v = get(obj, path, key, true);
  if (!v) return {};
  if (!v->is_string()) {
    fail(path + "/" + key, "expected string");
    return {};
  }
  return v->get<std::string>();
}

std::optional<std::string> Reader::opt_str(const Json& obj, const std::string& path, const char* key) {
  const Json* v = get(obj, path, key, false);
  if (!v) return std::nullopt;
  if (!v->is_string()) {
    fail(path + "/" + key, "expected string");
    return std::nullopt;
  }
  return v->get<std::string>();
}

std::optional<std::int64_t> Reader::opt_integer(const Json& obj, const std::string& path, const char* key,
                                                std::int64_t min, std::int64_t max) {
  const Json* v = get(obj, path, key, false);
  if (!v) return std::nullopt;
  if (!v->is_number_integer()) {
    fail(path + "/" + key, "expected integer");
    return std::nullopt;
  }
  if (v->is_number_unsigned() && v->get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    fail(path + "/" + key, "integer out of range");
    return std::nullopt;
  }
  std::int64_t x = v->get<std::int64_t>();
  if (x < min || x > max) {
    fail(path + "/" + key, min == 0 && x < 0 ? "must be nonnegative" : "integer out of range");
    return std::nullopt;
  }
  return x;
}

std::int64_t Reader::integer(const Json& obj, const std::string& path, const char* key, std::int64_t min,
                             std::int64_t max) {
  if (obj.is_object() && !obj.contains(key)) {
    fail(path + "/" + key, "missing field");
    return 0;
  }
  if (obj.is_object() && obj.at(key).is_null()) {
    fail(path + "/" + key, "expected integer");
    return 0;
  }
  return opt_integer(obj, path, key, min, max).value_or(0);
}

std::optional<double> Reader::opt_number(const Json& obj, const std::string& path, const char* key) {
  const Json* v = get(obj, path, key, false);
  if (!v) return std::nullopt;
  if (!v->is_number()) {
    fail(path + "/" + key, "expected number");
    return std::nullopt;
  }
  return v->get<double>();
}

double Reader::number(const Json& obj, const std::string& path, const char* key) {
  const Json* v = get(obj, path, key, true);
  if (!v) return 0.0;
  if (!v->is_number()) {
    fail(path + "/" + key, "expected number");
    return 0.0;
  }
  return v->get<double>();
}

bool Reader::boolean(const Json& obj, const std::string& path, const char* key, bool fallback) {
  const Json* v = get(obj, path, key, false);
  if (!v) return fallback;
  if (!v->is_boolean()) {
    fail(path + "/" + key, "expected boolean");
    return fallback;
  }
  return v->get<bool>();
}

std::vector<std::string> Reader::strings(const Json& obj, const std::string& path, const char* key) {
  std::vector<std::string> out;
  each(obj, path, key, [&](const Json& v, const std::string& p) {
    if (!v.is_string()) {
      fail(p, "expected string");
      return;
    }
    out.push_back(v.get<std::string>());
  });
  return out;
}

}  // namespace kgv::ir::detail
