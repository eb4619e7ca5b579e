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

#ifndef VETOSHIELD_TESTS_SUPPORT_H_
#define VETOSHIELD_TESTS_SUPPORT_H_

// Brute-force reference computations and seeded instance generators shared by
// the unit tests and the acceptance runner. Nothing here calls the library's
// solvers; library types are used only as containers.

#include <random>
#include <string>
#include <vector>

#include "vetoshield/belief.h"
#include "vetoshield/defaultgame.h"
#include "vetoshield/mechanism.h"
#include "vetoshield/model.h"
#include "vetoshield/json_io.h"

namespace vetoshield::testing {

using Rng = std::mt19937_64;

std::string FixturePath(const std::string& name);
json LoadJson(const std::string& name);
Model LoadFixture(const std::string& name);

double Uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
std::vector<double> RandomSimplexPoint(Rng& rng, int dim);

// Digits of a mixed-radix index, first digit most significant.
std::vector<int> Digits(int index, const std::vector<int>& radix);
int Index(const std::vector<int>& digits, const std::vector<int>& radix);
std::vector<int> Radix(const TypeSpace& space);

// --- one-dimensional splitting -------------------------------------------

// Linear interpolation through sorted (x, y) breakpoints.
double Interpolate(const std::vector<std::pair<double, double>>& pts, double x);

// Smallest mean value over splittings of p into at most two points of xs
// (xs must contain p or bracket it).
double TwoPointMinimum(const std::vector<double>& xs,
                       const std::vector<double>& fx, double p);

// Random continuous piecewise-linear function on [0, 1].
std::vector<std::pair<double, double>> RandomPiecewiseLinear(Rng& rng);

// --- Bayesian games --------------------------------------------------------

// Largest gain of a pure deviation for any type with positive marginal,
// computed by summing over all type and action profiles.
double BestResponseGap(const StrategicBayesianGame& g,
                       const InformationStructure& info, const BNEProfile& b);

// 2 players, 2 types, 2 actions, 2 outcomes; product prior with marginals
// in [0.2, 0.8].
struct RandomInstance {
  StrategicBayesianGame game;
  InformationStructure prior;
  DecisionRule rule{1, 1};
};
RandomInstance RandomStrategicInstance(Rng& rng);

// --- mechanisms -------------------------------------------------------------

// Largest interim gain from misreporting for a type with positive marginal.
double IcGap(const DecisionRule& rule, const InformationStructure& info,
             const UtilityTable& u);

// Per-profile outcome distribution implied by a veto equilibrium, from the
// independent veto draws.
std::vector<std::vector<double>> VetoOutcome(const VetoEquilibrium& veq);

// Largest per-profile total-variation distance over the support of `info`.
double MaxTv(const std::vector<std::vector<double>>& a, const DecisionRule& b,
             const InformationStructure& info);

// --- beliefs ----------------------------------------------------------------

// max over profiles of |sum_k w_k I_k(theta) - base(theta)|.
double PlausibilityGap(const PosteriorLottery& lottery,
                       const InformationStructure& base);

// Posterior after each signal with positive probability; weight first.
std::vector<std::pair<double, std::vector<double>>> SplitByDevice(
    const InformationStructure& base, const SignalingDevice& device);

// Device reading a random nonempty subset of players.
SignalingDevice RandomDevice(Rng& rng, std::shared_ptr<const TypeSpace> space,
                             int num_signals);

// max |I(theta) - q(theta_i) * I_{-i}(theta_{-i})| over profiles.
double OpacityGap(const InformationStructure& info, Player deviator,
                  const std::vector<double>& q);

}  // namespace vetoshield::testing

#endif  // VETOSHIELD_TESTS_SUPPORT_H_
