// Copyright 2026 The Vetoshield Authors
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

#ifndef VETOSHIELD_TOOLS_COMMANDS_H_
#define VETOSHIELD_TOOLS_COMMANDS_H_

#include <optional>
#include <string>
#include <vector>

#include "vetoshield/config.h"

namespace vetoshield::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 64;
inline constexpr int kExitInfeasible = 65;
inline constexpr int kExitInternal = 70;
// opportunism only
inline constexpr int kExitNotImmune = 2;
inline constexpr int kExitIndeterminate = 3;

struct Context {
  RunConfig config;
  std::string config_source;  // path, or empty for built-in defaults
  std::string out_dir = ".";
  std::optional<int> grid;    // overrides the grid this command uses
  std::string input;
};

const std::vector<std::string>& CommandNames();
std::string CommandHelp(const std::string& name);

// Runs one command and returns its exit code. Library errors propagate.
int RunCommand(const std::string& name, const Context& ctx);

}  // namespace vetoshield::cli

#endif  // VETOSHIELD_TOOLS_COMMANDS_H_
