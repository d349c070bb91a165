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

#ifndef KGV_IR_READER_HPP_
#define KGV_IR_READER_HPP_

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "kgv/ir/validate.hpp"

namespace kgv::ir::detail {

// Typed field access over a JSON document. Every problem is recorded in the
// report under its JSON pointer and a default value is returned, so one pass
// lists all violations.
class Reader {
 public:
  explicit Reader(ValidationReport& report) : report_(report) {}

  ValidationReport& report() { return report_; }
  void fail(const std::string& path, const std::string& message) { report_.add(path, message); }

  // False (and a violation) unless `v` is an object; unknown keys are flagged.
  bool object(const Json& v, const std::string& path, std::initializer_list<const char*> keys);
  bool array(const Json& v, const std::string& path);

  std::string str(const Json& obj, const std::string& path, const char* key);
  std::optional<std::string> opt_str(const Json& obj, const std::string& path, const char* key);
  std::int64_t integer(const Json& obj, const std::string& path, const char* key,
                       std::int64_t min = INT32_MIN, std::int64_t max = INT32_MAX);
  std::optional<std::int64_t> opt_integer(const Json& obj, const std::string& path, const char* key,
                                          std::int64_t min = INT32_MIN, std::int64_t max = INT32_MAX);
  double number(const Json& obj, const std::string& path, const char* key);
  std::optional<double> opt_number(const Json& obj, const std::string& path, const char* key);
  bool boolean(const Json& obj, const std::string& path, const char* key, bool fallback = false);
  std::vector<std::string> strings(const Json& obj, const std::string& path, const char* key);

  template <typename E, typename Parse>
  E enumeration(const Json& obj, const std::string& path, const char* key, Parse parse, E fallback) {
    std::string s = str(obj, path, key);
    if (!present(obj, key) || !obj.at(key).is_string()) return fallback;
    auto v = parse(s);
    if (!v) {
      fail(path + "/" + key, "unknown value '" + s + "'");
      return fallback;
    }
    return *v;
  }

  template <typename E, typename Parse>
  std::optional<E> opt_enumeration(const Json& obj, const std::string& path, const char* key, Parse parse) {
    auto s = opt_str(obj, path, key);
    if (!s) return std::nullopt;
    auto v = parse(*s);
    if (!v) fail(path + "/" + key, "unknown value '" + *s + "'");
    return v;
  }

  // Applies `each(element, element_path)` to every element of obj[key].
  template <typename F>
  void each(const Json& obj, const std::string& path, const char* key, F each_fn) {
    if (!present(obj, key)) {
      fail(path + "/" + key, "missing field");
      return;
    }
    each_of(obj.at(key), path + "/" + key, each_fn);
  }

  template <typename F>
  void each_of(const Json& arr, const std::string& path, F each_fn) {
    if (!array(arr, path)) return;
    for (std::size_t i = 0; i < arr.size(); ++i) each_fn(arr[i], path + "/" + std::to_string(i));
  }

  static bool present(const Json& obj, const char* key) { return obj.is_object() && obj.contains(key); }

 private:
  const Json* get(const Json& obj, const std::string& path, const char* key, bool required);

  ValidationReport& report_;
};

}  // namespace kgv::ir::detail

#endif  // KGV_IR_READER_HPP_
