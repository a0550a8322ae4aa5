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

#include <string>
#include <vector>

namespace qcong::cli {

/// exit_code: 0 success, 1 a requested check failed, 2 usage or input error.
struct CommandOutcome {
  int exit_code = 0;
  std::string stdout_summary;
  std::string diagnostics;  // destined for stderr
};

/// argv excludes the program name.
CommandOutcome run_command(const std::vector<std::string>& argv);

}  // namespace qcong::cli
