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


// JSON reading and writing for every model object.

#ifndef VETOSHIELD_JSON_IO_H_
#define VETOSHIELD_JSON_IO_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "vetoshield/belief.h"
#include "vetoshield/defaultgame.h"
#include "vetoshield/mechanism.h"
#include "vetoshield/model.h"

namespace vetoshield {

using nlohmann::json;

// Accepts numbers, decimal strings and "p/q" rationals.
double ParseProbability(const json& j);

json ReadJsonFile(const std::string& path);

std::shared_ptr<const TypeSpace> ParseTypeSpace(const json& j);
OutcomeSpace ParseOutcomes(const json& j);

// A profile is an index or an array of type labels, one per player.
int ParseProfile(const json& j, const TypeSpace& space);
int ParseSubProfile(const json& j, const TypeSpace& space,
                    std::span<const Player> players);
json ProfileToJson(int profile, const TypeSpace& space);

// [{profile, prob}, ...] with omitted profiles at zero, or {"table": [...]}.
// No normalization or validation happens here.
InformationStructure ParseStructure(const json& j,
                                    std::shared_ptr<const TypeSpace> space);
json StructureToJson(const InformationStructure& info);

UtilityTable ParseUtilities(const json& j, const TypeSpace& space,
                            const OutcomeSpace& outcomes);
json UtilitiesToJson(const UtilityTable& u, const TypeSpace& space,
                     const OutcomeSpace& outcomes);

// [{profile, dist}, ...]; dist is an array or an object keyed by outcome.
DecisionRule ParseRule(const json& j, const TypeSpace& space,
                       const OutcomeSpace& outcomes);
json RuleToJson(const DecisionRule& rule, const TypeSpace& space);

SignalingDevice ParseDevice(const json& j,
                            std::shared_ptr<const TypeSpace> space);
json DeviceToJson(const SignalingDevice& device);

PosteriorLottery ParseLottery(const json& j,
                              std::shared_ptr<const TypeSpace> space);
json LotteryToJson(const PosteriorLottery& lottery);

StrategicBayesianGame ParseStrategicGame(
    const json& j, std::shared_ptr<const TypeSpace> space,
    const OutcomeSpace& outcomes, const std::optional<UtilityTable>& fallback);
ReducedFormGame ParseReducedForm(const json& j,
                                 std::shared_ptr<const TypeSpace> space);
json BneToJson(const BNEProfile& profile, const StrategicBayesianGame& game);

struct Model {
  std::shared_ptr<const TypeSpace> space;
  OutcomeSpace outcomes;
  std::optional<InformationStructure> prior;
  std::optional<UtilityTable> utilities;
  std::map<std::string, DecisionRule> rules;
  std::optional<DefaultGame> game;
};

// Reads type_space, outcomes, prior, utilities, rules, strategic_game and
// reduced_form. Only type_space is mandatory.
Model ParseModel(const json& doc);

const InformationStructure& RequirePrior(const Model& m);
const UtilityTable& RequireUtilities(const Model& m);
const DefaultGame& RequireGame(const Model& m);
const DecisionRule& RequireRule(const Model& m, const std::string& name);

VetoEquilibrium ParseVetoEquilibrium(const json& j,
                                     const InformationStructure& prior,
                                     const OutcomeSpace& outcomes);
json VetoEquilibriumToJson(const VetoEquilibrium& veq);

// NaN and infinities become null.
json NumberOrNull(double x);
json VectorToJson(const std::vector<double>& v);
json MatrixToJson(const std::vector<std::vector<double>>& m);
std::vector<double> ParseVector(const json& j);
std::vector<std::vector<double>> ParseMatrix(const json& j);

// Converts nlohmann exceptions into kParse errors.
template <typename F>
auto Parsing(const std::string& what, F&& f) -> decltype(f());

}  // namespace vetoshield

#include "vetoshield/error.h"

namespace vetoshield {

template <typename F>
auto Parsing(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kParse, what + ": " + e.what());
  }
}

}  // namespace vetoshield

#endif  // VETOSHIELD_JSON_IO_H_
