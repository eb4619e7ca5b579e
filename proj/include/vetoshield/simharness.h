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


// Brute-force grid search over the grand game on tiny instances.

#ifndef VETOSHIELD_SIMHARNESS_H_
#define VETOSHIELD_SIMHARNESS_H_

#include <vector>

#include "vetoshield/belief.h"
#include "vetoshield/defaultgame.h"
#include "vetoshield/mechanism.h"
#include "vetoshield/opportunism.h"

namespace vetoshield {

inline constexpr double kPbeTol = 1e-6;

struct GrandGameInstance {
  DefaultGame game;
  // Mechanism outcomes and utilities. For a strategic default game these
  // must be the game's own outcomes and utilities.
  OutcomeSpace outcomes;
  UtilityTable utilities{2, 1, 1};
  InformationStructure prior;
  DecisionRule rule{1, 1};  // proposed mechanism
  SignalingDevice device;   // fed truthful reports before the veto stage
  int grid = 10;            // veto probabilities on multiples of 1/grid
  int belief_resolution = 20;
  double epsilon = kPbeTol;
  double cap = 1e7;
  SelectionPolicy policy;
  long max_results = -1;  // stop early once this many are found
};

// Builds an instance whose mechanism utilities are the strategic game's.
GrandGameInstance StrategicInstance(const StrategicBayesianGame& game,
                                    const InformationStructure& prior,
                                    const DecisionRule& rule);

struct Evaluation {
  bool equilibrium = false;
  double slack = 0.0;
  DecisionRule acceptance_rule{1, 1};
  // Per-profile continuation rules for every veto set (strategic games only).
  std::vector<DecisionRule> continuation;  // indexed by mask
  std::vector<std::vector<double>> veto_value;    // [player][type]
  std::vector<std::vector<double>> accept_value;  // [player][type]
};

// Checks one veto profile with the given off-path beliefs.
Evaluation EvaluateProfile(const GrandGameInstance& inst,
                           const std::vector<std::vector<double>>& xi,
                           const std::vector<std::vector<double>>& offpath);

// Every grid profile that is an eps-PBE, with the first grid off-path belief
// assignment that supports it.
std::vector<VetoEquilibrium> EnumerateVetoEquilibria(
    const GrandGameInstance& inst);

struct ReplicationReport {
  bool replicated = false;
  double max_deviation = 0.0;  // per-profile TV distance of outcomes
  double slack = 0.0;
  std::vector<std::vector<double>> offpath;
  std::optional<Construction> construction;
  long beliefs_tried = 0;
};

ReplicationReport ReplicateCheck(const VetoEquilibrium& veq,
                                 const GrandGameInstance& inst);

struct DesignerDeviceReport {
  // Binary kernels Pr(signal 1 | designer type) that survive as an
  // equilibrium choice of every designer type.
  std::vector<std::vector<double>> survivors;
  bool only_babbling = false;
  long devices_checked = 0;
};

// Continuation after a veto when the designer picks the device ex post.
DesignerDeviceReport EnumerateDesignerDevices(const DesignerSpace& ds,
                                              int grid, int belief_resolution,
                                              double epsilon = kPbeTol);

// Binary device reading the designer types, with kernel `ones`.
SignalingDevice DesignerDevice(const DesignerSpace& ds,
                               const std::vector<double>& ones);

}  // namespace vetoshield

#endif  // VETOSHIELD_SIMHARNESS_H_
