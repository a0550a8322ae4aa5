// Copyright 2026 The qcong Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcong {

/// Knobs shared by the verification suites. Zero means "suite default".
struct SuiteOptions {
  std::int64_t qmax = 0;
  std::int64_t cases = 0;
  std::uint64_t seed = 42;
};

struct SuiteResult {
  explicit SuiteResult(std::string suite = {}) : name(std::move(suite)) {}

  std::string name;
  bool passed = true;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::vector<std::string> lines;  // deterministic detail, one fact per line

  void fail(std::string line);
};

/// a0, sieve, counter, bijection, strata, reduction, products, expsum,
/// moments.
const std::vector<std::string_view>& suite_names();

/// Throws Error(kOutOfRange) for an unknown name.
SuiteResult run_suite(std::string_view name, const SuiteOptions& options);

/// The suite report exactly as the CLI prints and stores it.
std::string render(const SuiteResult& result);

}  // namespace qcong
