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

#ifndef VETOSHIELD_BELIEF_H_
#define VETOSHIELD_BELIEF_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vetoshield/model.h"

namespace vetoshield {

// One independent channel of a product device: reads a single player's report
// and emits a label from its own alphabet.
struct SignalChannel {
  Player player = 0;
  std::vector<std::string> alphabet;
  std::vector<std::vector<double>> rows;  // rows[type][signal]
};

// A garbling of type reports. The device reads the reports of the players in
// `domain` (in that order) and draws one realization from a joint alphabet.
class SignalingDevice {
 public:
  SignalingDevice(std::shared_ptr<const TypeSpace> space,
                  std::vector<Player> domain,
                  std::vector<std::string> alphabet,
                  std::vector<std::vector<double>> rows);

  static SignalingDevice Babbling(std::shared_ptr<const TypeSpace> space);
  static SignalingDevice FullyRevealing(std::shared_ptr<const TypeSpace> space,
                                        Player player);
  // Joint device over the product alphabet of independent channels.
  static SignalingDevice Product(std::shared_ptr<const TypeSpace> space,
                                 const std::vector<SignalChannel>& channels);

  const TypeSpace& space() const { return *space_; }
  const std::shared_ptr<const TypeSpace>& space_ptr() const { return space_; }
  const std::vector<Player>& domain() const { return domain_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  int num_signals() const { return static_cast<int>(alphabet_.size()); }
  // rows()[subprofile of domain][signal]
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  // Channel sizes when built by Product(); empty otherwise.
  const std::vector<SignalChannel>& channels() const { return channels_; }

  bool Reads(Player player) const;
  // Pr(signal | theta) with every player reporting truthfully.
  double Likelihood(int signal, int profile) const;
  // Pr(signal | theta_{-deviator}) when the deviator's report is treated as
  // uniform over her types, i.e. her own channel carries no information.
  double LikelihoodIgnoring(int signal, int profile, Player deviator) const;

  // |S_i| >= |Theta_i| for every product channel; for a joint device, the
  // alphabet must be at least as large as the domain's profile count.
  bool SatisfiesCapacity() const;

 private:
  std::shared_ptr<const TypeSpace> space_;
  std::vector<Player> domain_;
  std::vector<std::string> alphabet_;
  std::vector<std::vector<double>> rows_;
  std::vector<SignalChannel> channels_;
};

// Co-players' belief about a vetoing player, pasted onto their posteriors.
struct DeviatorBelief {
  Player player = 0;
  std::vector<double> q;  // distribution over the deviator's types
};

struct PosteriorAtom {
  double weight = 0.0;
  InformationStructure posterior;
  std::vector<int> signals;  // realizations merged into this atom
};

struct PosteriorLottery {
  std::vector<PosteriorAtom> atoms;
  std::string base_ref;  // free-form provenance label for serialization
};

struct PlausibilityReport {
  bool ok = false;
  double max_deviation = 0.0;   // cell-wise |sum P I - base|
  double opacity_deviation = 0.0;  // deviator-conditional mismatch
};

// I_{-i}(. | theta_i) indexed by co-profile.
std::vector<double> ConditionOnType(const InformationStructure& info,
                                    Player player, int type);

// The structure after a unilateral veto and before any signal: q pasted onto
// the co-players' marginal of `prior`.
InformationStructure PostVetoStructure(const InformationStructure& prior,
                                       const DeviatorBelief& belief);

// Pr(signal) under `base`.
double SignalProbability(const InformationStructure& base,
                         const SignalingDevice& device, int signal,
                         const std::optional<DeviatorBelief>& deviator = {});

InformationStructure UpdateOnSignal(
    const InformationStructure& base, const SignalingDevice& device,
    int signal, const std::optional<DeviatorBelief>& deviator = {});

PosteriorLottery DeviceToLottery(
    const InformationStructure& base, const SignalingDevice& device,
    const std::optional<DeviatorBelief>& deviator = {});

PlausibilityReport CheckBayesPlausible(
    const PosteriorLottery& lottery, const InformationStructure& base,
    std::optional<Player> deviator = {}, double tol = kEqualityTol);

// Inverse splitting. With a deviator, the device reads only the co-players'
// reports and the lottery must leave the deviator's conditional untouched.
SignalingDevice LotteryToDevice(const PosteriorLottery& lottery,
                                const InformationStructure& base,
                                std::optional<Player> deviator = {});

// Merges atoms whose posteriors coincide within `tol` and drops zero weights.
PosteriorLottery CanonicalLottery(PosteriorLottery lottery,
                                  double tol = kNormalizationTol);

}  // namespace vetoshield

#endif  // VETOSHIELD_BELIEF_H_
