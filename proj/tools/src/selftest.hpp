// Copyright 2026 The gltrees Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gltrees::cli {

enum class SelftestLevel { quick, paper, extended };

struct CheckResult {
  bool passed = false;
  std::string detail;  // expected vs actual on failure
};

struct Check {
  std::string name;
  SelftestLevel level;
  std::function<CheckResult()> run;
};

/// Checks at or below `level`, in a fixed order.
std::vector<Check> selftest_checks(SelftestLevel level, unsigned threads);

/// Prints one line per check; returns the number of failures.
std::size_t run_selftest(SelftestLevel level, unsigned threads, std::ostream& out);

}  // namespace gltrees::cli
