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

#include "vetoshield/config.h"

#include <fstream>

#include "vetoshield/error.h"

namespace vetoshield {

using nlohmann::json;

void ValidateConfig(const RunConfig& c) {
  const Tolerances& t = c.tol;
  if (!(t.normalization > 0 && t.equality > 0 && t.equilibrium > 0 &&
        t.pbe > 0)) {
    Fail(ErrorKind::kParse, "tolerances must be positive");
  }
  if (c.posterior_grid < 2 || c.strategy_grid < 2) {
    Fail(ErrorKind::kParse, "grid resolutions must be at least 2");
  }
  if (!(c.q_step > 0.0 && c.q_step <= 1.0)) {
    Fail(ErrorKind::kParse, "q_step must lie in (0, 1]");
  }
  if (c.fosd_resolution < 1 || !(c.profile_cap >= 1.0)) {
    Fail(ErrorKind::kParse, "fosd_resolution and profile_cap must be >= 1");
  }
  if (!c.policy.empty() && c.policy != "lexicographic_first" &&
      c.policy != "deviator_worst" && c.policy != "designer_worst") {
    Fail(ErrorKind::kParse, "unknown selection policy '" + c.policy + "'");
  }
}

RunConfig ConfigFromJson(const json& j) {
  RunConfig c;
  if (!j.is_object()) Fail(ErrorKind::kParse, "config must be an object");
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "tolerances") {
        for (const auto& [k, v] : val.items()) {
          if (k == "normalization") c.tol.normalization = v.get<double>();
          else if (k == "equality") c.tol.equality = v.get<double>();
          else if (k == "equilibrium") c.tol.equilibrium = v.get<double>();
          else if (k == "pbe") c.tol.pbe = v.get<double>();
          else Fail(ErrorKind::kParse, "unknown tolerance '" + k + "'");
        }
      } else if (key == "posterior_grid") {
        c.posterior_grid = val.get<int>();
      } else if (key == "q_step") {
        c.q_step = val.get<double>();
      } else if (key == "strategy_grid") {
        c.strategy_grid = val.get<int>();
      } else if (key == "fosd_resolution") {
        c.fosd_resolution = val.get<int>();
      } else if (key == "profile_cap") {
        c.profile_cap = val.get<double>();
      } else if (key == "policy") {
        c.policy = val.get<std::string>();
      } else if (key == "seed") {
        c.seed = val.get<std::uint64_t>();
      } else {
        Fail(ErrorKind::kParse, "unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, std::string("config: ") + e.what());
  }
  ValidateConfig(c);
  return c;
}

RunConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kParse, "cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, "config " + path + ": " + e.what());
  }
  return ConfigFromJson(j);
}

json ConfigToJson(const RunConfig& c) {
  return json{{"tolerances",
               {{"normalization", c.tol.normalization},
                {"equality", c.tol.equality},
                {"equilibrium", c.tol.equilibrium},
                {"pbe", c.tol.pbe}}},
              {"posterior_grid", c.posterior_grid},
              {"q_step", c.q_step},
              {"strategy_grid", c.strategy_grid},
              {"fosd_resolution", c.fosd_resolution},
              {"profile_cap", c.profile_cap},
              {"policy", c.policy},
              {"seed", c.seed}};
}

SelectionPolicy PolicyFromConfig(const RunConfig& c, SelectionPolicy fallback) {
  if (c.policy == "lexicographic_first") return SelectionPolicy::Lexicographic();
  if (c.policy == "designer_worst") return SelectionPolicy::DesignerWorst();
  if (c.policy == "deviator_worst") {
    if (fallback.deviator < 0) {
      Fail(ErrorKind::kParse, "deviator_worst needs a deviator for this command");
    }
    return SelectionPolicy::DeviatorWorst(fallback.deviator, fallback.weights);
  }
  return fallback;
}

}  // namespace vetoshield
