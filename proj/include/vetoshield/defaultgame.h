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

#ifndef VETOSHIELD_DEFAULTGAME_H_
#define VETOSHIELD_DEFAULTGAME_H_

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vetoshield/model.h"

namespace vetoshield {

// Equilibrium acceptance bound for the best-response sweep.
inline constexpr double kEquilibriumTol = 1e-8;

// Finite Bayesian game whose action profiles map to outcome lotteries.
struct StrategicBayesianGame {
  std::shared_ptr<const TypeSpace> space;
  OutcomeSpace outcomes;
  std::vector<std::vector<std::string>> actions;  // per player
  // outcome_map[action profile][z]; action profiles in mixed radix with
  // player 0 most significant.
  std::vector<std::vector<double>> outcome_map;
  UtilityTable utilities{2, 1, 1};

  int num_players() const { return space->num_players(); }
  int num_actions(Player p) const {
    return static_cast<int>(actions[p].size());
  }
  int num_action_profiles() const;
  int EncodeActions(std::span<const int> acts) const;
  std::vector<int> DecodeActions(int index) const;
  // Expected utility of `player` at type profile `profile` and pure action
  // profile `action_profile`.
  double PayoffAt(Player player, int action_profile, int profile) const;
  // Throws kDimension on inconsistent shapes or invalid lotteries.
  void Validate() const;
};

// Continuous piecewise-linear function on [0, 1].
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> points);
  double Evaluate(double x) const;
  const std::vector<std::pair<double, double>>& points() const {
    return points_;
  }

 private:
  std::vector<std::pair<double, double>> points_;
};

struct ReducedFormValue {
  Player player = 0;
  int type = 0;
  PiecewiseLinear value;
};

// Interim default-game values given directly as functions of one belief
// coordinate: the common-knowledge probability that `subject` has type
// `subject_type`.
struct ReducedFormGame {
  std::shared_ptr<const TypeSpace> space;
  Player subject = 0;
  int subject_type = 0;
  std::vector<ReducedFormValue> values;

  const PiecewiseLinear& ValueFunction(Player player, int type) const;
  double BeliefCoordinate(const InformationStructure& info) const;
};

using DefaultGame = std::variant<StrategicBayesianGame, ReducedFormGame>;

const TypeSpace& GameSpace(const DefaultGame& game);
std::shared_ptr<const TypeSpace> GameSpacePtr(const DefaultGame& game);

// strategy[player][type][action]
struct BNEProfile {
  std::vector<std::vector<std::vector<double>>> strategy;
  double epsilon = 0.0;
};

struct SelectionPolicy {
  enum class Kind { kDeviatorWorst, kDesignerWorst, kLexicographicFirst };
  Kind kind = Kind::kLexicographicFirst;
  Player deviator = -1;         // for kDeviatorWorst
  std::vector<double> weights;  // deviator type weights; empty = marginal
  double tie_tol = 1e-10;

  static SelectionPolicy Lexicographic() { return {}; }
  static SelectionPolicy DeviatorWorst(Player p,
                                       std::vector<double> w = {}) {
    SelectionPolicy s;
    s.kind = Kind::kDeviatorWorst;
    s.deviator = p;
    s.weights = std::move(w);
    return s;
  }
  static SelectionPolicy DesignerWorst() {
    SelectionPolicy s;
    s.kind = Kind::kDesignerWorst;
    return s;
  }
};

const char* SelectionPolicyName(SelectionPolicy::Kind kind);

// Interim value of (player, type) under `profile`. Types outside the support
// of `info` evaluate against the co-players' marginal.
double InterimValue(const StrategicBayesianGame& game,
                    const InformationStructure& info, const BNEProfile& profile,
                    Player player, int type);
// Payoff of a pure action for (player, type) against `profile`.
double ActionValue(const StrategicBayesianGame& game,
                   const InformationStructure& info, const BNEProfile& profile,
                   Player player, int type, int action);

// Largest gain any supported type can obtain by a pure deviation.
double BestResponseGap(const StrategicBayesianGame& game,
                       const InformationStructure& info,
                       const BNEProfile& profile);

// All equilibria found by support enumeration (two players) or pure-profile
// enumeration (three or more), in enumeration order, duplicates removed.
std::vector<BNEProfile> EnumerateBne(const StrategicBayesianGame& game,
                                     const InformationStructure& info);

BNEProfile SolveBne(const StrategicBayesianGame& game,
                    const InformationStructure& info,
                    const SelectionPolicy& policy);

DecisionRule InducedDecisionRule(const StrategicBayesianGame& game,
                                 const BNEProfile& profile);

double EvaluateReducedForm(const ReducedFormGame& rf, Player player, int type,
                           double belief);

// v_i(theta_i, I) for every type of `player`.
std::vector<double> OutsideOptionValues(const DefaultGame& game,
                                        const InformationStructure& info,
                                        Player player,
                                        const SelectionPolicy& policy);

double OutsideOptionValue(const DefaultGame& game,
                          const InformationStructure& info, Player player,
                          int type, const SelectionPolicy& policy);

// Solved status quo at one structure: the selected profile, its decision
// rule, and all interim values (values[player][type]).
struct DefaultSolution {
  BNEProfile profile;
  DecisionRule rule{1, 1};
  std::vector<std::vector<double>> values;
};

DefaultSolution SolveDefault(const StrategicBayesianGame& game,
                             const InformationStructure& info,
                             const SelectionPolicy& policy);

}  // namespace vetoshield

#endif  // VETOSHIELD_DEFAULTGAME_H_
