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


// Checks for a signal designer who picks the device after a veto. The
// designer's type is the co-profile she elicited from the participants.

#ifndef VETOSHIELD_OPPORTUNISM_H_
#define VETOSHIELD_OPPORTUNISM_H_

#include <optional>
#include <string>
#include <vector>

#include "vetoshield/belief.h"
#include "vetoshield/defaultgame.h"
#include "vetoshield/model.h"

namespace vetoshield {

struct DesignerSpace {
  DefaultGame game;
  InformationStructure base;  // prior before the veto
  Player deviator = 0;
  SelectionPolicy policy;
  int fosd_resolution = 10;
};

int NumDesignerTypes(const DesignerSpace& ds);
std::string DesignerTypeName(const DesignerSpace& ds, int coprofile);

// Sum of the participants' values at their true types in `posterior`.
double DesignerPayoff(const DesignerSpace& ds, int coprofile,
                      const InformationStructure& posterior);

// Off-path belief on the deviator: her marginal under the base.
std::vector<double> DeviatorPrior(const DesignerSpace& ds);

// q pasted onto a distribution over designer types.
InformationStructure DesignerPosterior(const DesignerSpace& ds,
                                       const std::vector<double>& coblock);

struct AlignmentWitness {
  int prefers_f = -1;        // designer type ranking F first (or -1)
  int prefers_f_prime = -1;  // designer type strictly preferring F'
  std::vector<double> f;     // dominating distribution
  std::vector<double> f_prime;
  double gap = 0.0;  // payoff(F') - payoff(F) for prefers_f_prime
};

struct AlignmentReport {
  Player player = 0;  // player whose marginal moves
  bool aligned = true;
  std::optional<AlignmentWitness> witness;
  long pairs_checked = 0;
};

// F dominates G when every upper tail (types ordered by label index) of F
// is at least that of G.
bool FirstOrderDominates(const TypeSpace& space, Player player,
                         const std::vector<double>& f,
                         const std::vector<double>& g,
                         double tol = kNormalizationTol);

AlignmentReport CheckAligned(const DesignerSpace& ds, Player player);

// One report per participant with more than one type.
std::vector<AlignmentReport> CheckAlignedAll(const DesignerSpace& ds);

struct PressureReport {
  std::vector<bool> pressured;  // per designer type; false off support
  std::vector<double> verify_value;
  std::vector<double> lottery_value;
};

PressureReport CheckUnravelingPressure(const SignalingDevice& device,
                                       const DesignerSpace& ds);

enum class Verdict { kImmune, kNotImmune, kIndeterminate };
const char* VerdictName(Verdict v);

struct ImmunityReport {
  Verdict verdict = Verdict::kIndeterminate;
  bool full_support = false;
  std::vector<AlignmentReport> alignment;
  std::optional<PressureReport> pressure;
  std::string reason;
};

ImmunityReport CheckImmunity(const SignalingDevice& device,
                             const DesignerSpace& ds);

struct WeakImmunityReport {
  Verdict verdict = Verdict::kIndeterminate;
  std::optional<int> worst_signal;
  // values[designer type][signal]; NaN when the signal has no posterior.
  std::vector<std::vector<double>> values;
  std::string reason;
};

WeakImmunityReport CheckWeakImmunity(const SignalingDevice& device,
                                     const DesignerSpace& ds);

}  // namespace vetoshield

#endif  // VETOSHIELD_OPPORTUNISM_H_
