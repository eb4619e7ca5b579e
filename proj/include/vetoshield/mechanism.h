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


// Incentive and participation checks, the optimal-mechanism LP, and the
// full-participation construction from a veto equilibrium.

#ifndef VETOSHIELD_MECHANISM_H_
#define VETOSHIELD_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vetoshield/belief.h"
#include "vetoshield/defaultgame.h"
#include "vetoshield/model.h"

namespace vetoshield {

struct IcReport {
  bool ok = true;
  double worst_violation = 0.0;  // max gain from misreporting, clipped at 0
  Player player = -1;
  int type = -1;
  int report = -1;
};

// Truthful reporting against a truthful population under `info`. Only types
// with positive marginal are checked.
IcReport CheckIc(const DecisionRule& rule, const InformationStructure& info,
                 const UtilityTable& u, double tol = kEqualityTol);

// Interim utility E[u_i(rule(theta), theta) | theta_i] with truthful reports.
double InterimUtility(const DecisionRule& rule, const InformationStructure& info,
                      const UtilityTable& u, Player player, int type);

inline constexpr double kNoBound = -1e300;

struct MechanismLpSpec {
  std::shared_ptr<const TypeSpace> space;
  OutcomeSpace outcomes;
  // [profile][z] payoff; the LP maximizes its expectation under the prior.
  std::vector<std::vector<double>> objective;
  bool impose_ic = true;
  // participation[player][type]; kNoBound disables a constraint.
  std::vector<std::vector<double>> participation;
};

struct MechanismSolution {
  bool feasible = false;
  DecisionRule rule{1, 1};
  double value = 0.0;
  // Shadow cost of each participation bound (nonnegative); 0 when absent.
  std::vector<std::vector<double>> multipliers;
  std::vector<std::vector<double>> participation_slack;
  // Smallest uniform lowering of all bounds that restores feasibility.
  double relaxation = 0.0;
  double ic_violation = 0.0;
  double complementary_slackness = 0.0;  // max |multiplier * slack|
  int pivots = 0;
};

MechanismSolution SolveOptimalMechanism(const MechanismLpSpec& spec,
                                        const InformationStructure& prior,
                                        const UtilityTable& u);

// Alternates between the LP and the punished bounds of `deviator`, feeding
// normalized participation multipliers back as type weights.
struct PunishedMechanism {
  MechanismSolution solution;
  std::vector<double> alpha;
  std::vector<double> bounds;
  int iterations = 0;
  bool converged = false;
};
PunishedMechanism SolveWithPunishment(MechanismLpSpec spec,
                                      const InformationStructure& prior,
                                      const UtilityTable& u,
                                      const DefaultGame& game, Player deviator,
                                      int grid_resolution, int max_iter = 50,
                                      double damping = 0.5);

// ---------------------------------------------------------------------------
// Veto equilibria.

using VetoMask = std::uint32_t;  // bit i set iff player i vetoes

struct VetoSet {
  VetoMask mask = 0;
  double prob = 0.0;  // ex-ante probability of exactly this veto set
  InformationStructure posterior;
  DecisionRule rule{1, 1};  // continuation outcome rule after this set
};

struct VetoEquilibrium {
  InformationStructure prior;
  std::vector<std::vector<double>> xi;  // xi[player][type]
  std::vector<VetoSet> veto_sets;       // nonempty sets with prob > 0
  std::optional<InformationStructure> acceptance;  // absent if never accepted
  DecisionRule acceptance_rule{1, 1};              // outcome rule on acceptance
  std::vector<std::vector<double>> offpath;        // q per player
  double slack = 0.0;     // smallest incentive margin found
  bool marginal = false;  // slack within 10 eps of violating
};

// Pr(exactly `mask` vetoes | profile).
double VetoSetProbability(const std::vector<std::vector<double>>& xi,
                          const TypeSpace& space, VetoMask mask, int profile);

// Bayes bookkeeping for given veto probabilities. Rules are left at zero.
struct VetoDistribution {
  std::vector<VetoSet> sets;
  std::optional<InformationStructure> acceptance;
  double accept_prob = 0.0;
};
VetoDistribution ComputeVetoDistribution(
    const InformationStructure& prior,
    const std::vector<std::vector<double>>& xi, int num_outcomes);

// Empty when consistent.
std::vector<std::string> CheckVetoEquilibrium(const VetoEquilibrium& veq);

// Per-profile outcome distribution of the veto equilibrium.
DecisionRule VetoOutcomeRule(const VetoEquilibrium& veq);

// Off-path beliefs indexed [player][signal][type].
using SignalBeliefs = std::vector<std::vector<std::vector<double>>>;
SignalBeliefs UniformBeliefs(const std::vector<std::vector<double>>& q,
                             int num_signals);

struct NoVetoReport {
  bool ok = true;
  // slack[player][type] = participation - veto value; NaN off support.
  std::vector<std::vector<double>> slack;
  std::vector<std::vector<double>> veto_value;
  std::vector<std::vector<double>> accept_value;
  double worst = 0.0;
};

// Expected deviation value of (deviator, type) when the others update on the
// device with the deviator's channel disregarded and `beliefs` pasted on the
// deviator.
double DeviationValue(const DefaultGame& game, const SignalingDevice& device,
                      const SignalBeliefs& beliefs,
                      const InformationStructure& prior, Player deviator,
                      int type, const SelectionPolicy& policy);

NoVetoReport VerifyNoVeto(const DecisionRule& rule,
                          const SignalingDevice& device,
                          const DefaultGame& game, const UtilityTable& u,
                          const SignalBeliefs& beliefs,
                          const InformationStructure& prior,
                          const SelectionPolicy& policy,
                          double tol = kEqualityTol);

struct Construction {
  DecisionRule rule{1, 1};
  SignalingDevice device;
  std::vector<std::vector<double>> offpath;  // q per player
  IcReport ic;
  NoVetoReport no_veto;
  double outcome_deviation = 0.0;  // max TV distance per profile
  bool ok() const {
    return ic.ok && no_veto.ok && outcome_deviation <= kEqualityTol;
  }
};

// One binary channel per player who vetoes with positive probability;
// babbling when nobody does.
SignalingDevice VetoSignalDevice(std::shared_ptr<const TypeSpace> space,
                                 const std::vector<std::vector<double>>& xi);

Construction ConstructFullParticipation(const VetoEquilibrium& veq,
                                        const DefaultGame& game,
                                        const UtilityTable& u,
                                        const SelectionPolicy& policy);

struct IntuitiveReport {
  bool ok = true;
  std::vector<std::string> failures;
};
IntuitiveReport CheckIntuitiveCriterion(const Construction& construction,
                                        const InformationStructure& prior,
                                        const DefaultGame& game,
                                        const UtilityTable& u,
                                        const SelectionPolicy& policy);

// A principal (player 0) proposal together with its continuation.
struct Proposal {
  std::string label;
  VetoEquilibrium veq;  // prior = I^0 conditioned on this proposal
};

struct Pooling {
  DecisionRule rule{1, 1};
  SignalingDevice device;
  SignalChannel principal_channel;  // rows = proposal probabilities
  SignalBeliefs beliefs;
  std::vector<Construction> components;
  NoVetoReport no_veto;
  double outcome_deviation = 0.0;
  bool collapsed = false;  // every principal type made the same proposal
};

// proposal_probs[type of player 0][proposal].
Pooling PoolInformedPrincipal(
    const InformationStructure& prior,
    const std::vector<std::vector<double>>& proposal_probs,
    const std::vector<Proposal>& proposals, const DefaultGame& game,
    const UtilityTable& u, const SelectionPolicy& policy);

// Separate-and-veto outcome: each principal type mixes over the proposals'
// veto-equilibrium outcomes.
DecisionRule SeparatingOutcomeRule(
    const InformationStructure& prior,
    const std::vector<std::vector<double>>& proposal_probs,
    const std::vector<Proposal>& proposals);

}  // namespace vetoshield

#endif  // VETOSHIELD_MECHANISM_H_
