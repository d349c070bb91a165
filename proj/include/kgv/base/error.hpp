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

#ifndef KGV_BASE_ERROR_HPP_
#define KGV_BASE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace kgv {

// Base class for every error the library reports by exception. Recoverable,
// per-item problems (parse diagnostics, validation violations, bind errors)
// are returned as values instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kgv

#endif  // KGV_BASE_ERROR_HPP_
