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

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.h"
#include "json.hpp"
#include "vetoshield/error.h"

namespace {

using vetoshield::ErrorKind;
namespace cli = vetoshield::cli;

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kDimension:
    case ErrorKind::kShape:
    case ErrorKind::kDomain:
    case ErrorKind::kInvalidWeights:
      return cli::kExitParse;
    case ErrorKind::kInfeasible:
    case ErrorKind::kInfeasibleSplitting:
    case ErrorKind::kUnbounded:
    case ErrorKind::kUndefinedConditional:
    case ErrorKind::kImpossibleSignal:
    case ErrorKind::kResolutionExhausted:
    case ErrorKind::kInstanceTooLarge:
    case ErrorKind::kPrecondition:
      return cli::kExitInfeasible;
    case ErrorKind::kInternal:
      return cli::kExitInternal;
  }
  return cli::kExitInternal;
}

void ReportError(const std::string& kind, const std::string& message) {
  nlohmann::json err = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << err.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vetoshield: veto-proof mechanisms and off-path punishment"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::string out_dir = ".";
  app.add_option("--config", config_path,
                 "JSON run configuration (falls back to $VETOSHIELD_CONFIG)");
  app.add_option("--seed", seed, "Seed recorded in the audit block");
  app.add_option("--grid", grid,
                 "Grid resolution: posterior grid for punish, envelope, "
                 "solve-mech and opportunism; veto-probability grid for "
                 "simulate and replicate");
  app.add_option("--out-dir", out_dir, "Directory for JSON, CSV and SVG files");

  std::map<std::string, std::string> inputs;
  for (const std::string& name : cli::CommandNames()) {
    CLI::App* sub = app.add_subcommand(name, cli::CommandHelp(name));
    sub->add_option("input", inputs[name], "Input JSON document")
        ->required()
        ->check(CLI::ExistingFile);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitParse;
  }

  try {
    cli::Context ctx;
    if (config_path.empty()) {
      if (const char* env = std::getenv("VETOSHIELD_CONFIG")) config_path = env;
    }
    if (!config_path.empty()) {
      ctx.config = vetoshield::LoadConfig(config_path);
      ctx.config_source = config_path;
    }
    if (seed) ctx.config.seed = *seed;
    ctx.grid = grid;
    ctx.out_dir = out_dir;
    for (const std::string& name : cli::CommandNames()) {
      if (app.got_subcommand(name)) {
        ctx.input = inputs[name];
        return cli::RunCommand(name, ctx);
      }
    }
    return cli::kExitInternal;
  } catch (const vetoshield::Error& e) {
    ReportError(vetoshield::ErrorKindName(e.kind()), e.what());
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    ReportError("internal", e.what());
    return cli::kExitInternal;
  }
}
