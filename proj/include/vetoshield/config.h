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


#ifndef VETOSHIELD_CONFIG_H_
#define VETOSHIELD_CONFIG_H_

#include <cstdint>
#include <string>

#include "json.hpp"
#include "vetoshield/defaultgame.h"

namespace vetoshield {

struct Tolerances {
  double normalization = kNormalizationTol;
  double equality = kEqualityTol;
  double equilibrium = kEquilibriumTol;
  double pbe = 1e-6;
};

struct RunConfig {
  Tolerances tol;
  int posterior_grid = 20;   // R
  double q_step = 0.05;      // off-path belief scan step
  int strategy_grid = 10;    // G
  int fosd_resolution = 10;
  double profile_cap = 1e7;
  // "lexicographic_first", "deviator_worst" or "designer_worst"; empty picks
  // the per-command default.
  std::string policy;
  std::uint64_t seed = 20260415;
};

// Throws kParse on unknown keys or values outside their domain.
RunConfig ConfigFromJson(const nlohmann::json& j);
RunConfig LoadConfig(const std::string& path);
nlohmann::json ConfigToJson(const RunConfig& c);
void ValidateConfig(const RunConfig& c);

// Policy for a command whose default is `fallback`.
SelectionPolicy PolicyFromConfig(const RunConfig& c, SelectionPolicy fallback);

}  // namespace vetoshield

#endif  // VETOSHIELD_CONFIG_H_
