// Copyright 2026 The langevin-bias Authors.
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

#include <iosfwd>
#include <string>
#include <vector>

namespace langevin::cli {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kDivergence = 2,
  kIoError = 3,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "LANGEVIN_OUT_DIR";

/// Entry point of the `langevin` tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace langevin::cli
