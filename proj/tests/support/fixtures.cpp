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

#include "support/fixtures.hpp"

#include "kgv/base/text.hpp"

namespace kgv::testing {

std::string fixture_path(const std::string& name) { return std::string(KGV_FIXTURE_DIR) + "/" + name; }

std::string read_fixture(const std::string& name) { return read_file(fixture_path(name)); }

}  // namespace kgv::testing
