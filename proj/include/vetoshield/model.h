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

#ifndef VETOSHIELD_MODEL_H_
#define VETOSHIELD_MODEL_H_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vetoshield {

// Tolerance for validating user-supplied distributions.
inline constexpr double kNormalizationTol = 1e-12;
// Tolerance for equalities between quantities obtained by arithmetic.
inline constexpr double kEqualityTol = 1e-9;

using Player = int;

struct TypeLabel {
  std::string name;
  double index = 0.0;  // position on the real line, used for orderings
};

// Finite product type space Theta = Theta_0 x ... x Theta_{N-1}. Profiles are
// encoded in mixed radix with player 0 as the most significant digit.
class TypeSpace {
 public:
  explicit TypeSpace(std::vector<std::vector<TypeLabel>> types);
  // Labels "t0", "t1", ... with index equal to the position.
  static TypeSpace FromCounts(const std::vector<int>& counts);

  int num_players() const { return static_cast<int>(types_.size()); }
  int num_types(Player player) const;
  int num_profiles() const { return num_profiles_; }
  const TypeLabel& label(Player player, int type) const;
  // Returns -1 when the name is unknown.
  int FindType(Player player, std::string_view name) const;

  std::vector<int> Decode(int profile) const;
  int Encode(std::span<const int> types) const;
  int TypeOf(int profile, Player player) const;
  int WithType(int profile, Player player, int type) const;

  // Sub-profiles over an ordered subset of players, encoded the same way.
  int num_subprofiles(std::span<const Player> players) const;
  int SubProfileOf(int profile, std::span<const Player> players) const;
  std::vector<Player> Others(Player player) const;

  // Co-profiles theta_{-i}.
  int num_coprofiles(Player player) const;
  int CoProfileOf(int profile, Player player) const;
  int Splice(Player player, int type, int coprofile) const;

  std::string ProfileName(int profile) const;

  bool operator==(const TypeSpace& other) const;

 private:
  std::vector<std::vector<TypeLabel>> types_;
  std::vector<int> strides_;
  int num_profiles_ = 1;
};

struct OutcomeSpace {
  std::vector<std::string> labels;
  int dimension = 1;  // metadata only

  OutcomeSpace() = default;
  explicit OutcomeSpace(std::vector<std::string> outcome_labels,
                        int dim = 1);
  static OutcomeSpace FromCount(int count);
  int size() const { return static_cast<int>(labels.size()); }
  int Find(std::string_view name) const;
  bool operator==(const OutcomeSpace& other) const = default;
};

// Probability mass over type profiles. Construction only checks shape and
// finiteness; use Validate() or ValidateInformationStructure() for the
// distribution invariants.
class InformationStructure {
 public:
  InformationStructure(std::shared_ptr<const TypeSpace> space,
                       std::vector<double> mass);
  // Rescales nonnegative weights to unit mass.
  static InformationStructure Normalized(std::shared_ptr<const TypeSpace> space,
                                         std::vector<double> weights);
  static InformationStructure Uniform(std::shared_ptr<const TypeSpace> space);
  static InformationStructure PointMass(std::shared_ptr<const TypeSpace> space,
                                        int profile);
  // Independent product of per-player marginals.
  static InformationStructure Product(
      std::shared_ptr<const TypeSpace> space,
      const std::vector<std::vector<double>>& marginals);

  const TypeSpace& space() const { return *space_; }
  const std::shared_ptr<const TypeSpace>& space_ptr() const { return space_; }
  const std::vector<double>& table() const { return mass_; }
  double mass(int profile) const { return mass_[profile]; }
  double total() const;

  std::vector<double> Marginal(Player player) const;
  // Marginal over an ordered subset of players.
  std::vector<double> SubMarginal(std::span<const Player> players) const;
  std::vector<double> CoMarginal(Player player) const;

  // Empty when valid.
  std::vector<std::string> Validate(double tol = kNormalizationTol) const;

  double MaxAbsDiff(const InformationStructure& other) const;

 private:
  std::shared_ptr<const TypeSpace> space_;
  std::vector<double> mass_;
};

// u_i(z, theta) for every player, outcome and profile.
class UtilityTable {
 public:
  UtilityTable(int num_players, int num_outcomes, int num_profiles);
  double operator()(Player player, int outcome, int profile) const {
    return values_[Index(player, outcome, profile)];
  }
  double& at(Player player, int outcome, int profile) {
    return values_[Index(player, outcome, profile)];
  }
  int num_players() const { return num_players_; }
  int num_outcomes() const { return num_outcomes_; }
  int num_profiles() const { return num_profiles_; }

 private:
  int Index(Player player, int outcome, int profile) const {
    return (player * num_outcomes_ + outcome) * num_profiles_ + profile;
  }
  int num_players_;
  int num_outcomes_;
  int num_profiles_;
  std::vector<double> values_;
};

// G(z | theta): one outcome distribution per type profile.
class DecisionRule {
 public:
  DecisionRule(int num_profiles, int num_outcomes);
  DecisionRule(int num_profiles, int num_outcomes, std::vector<double> probs);
  static DecisionRule Constant(int num_profiles, int num_outcomes,
                               int outcome);

  int num_profiles() const { return num_profiles_; }
  int num_outcomes() const { return num_outcomes_; }
  double operator()(int profile, int outcome) const {
    return probs_[profile * num_outcomes_ + outcome];
  }
  double& at(int profile, int outcome) {
    return probs_[profile * num_outcomes_ + outcome];
  }
  std::span<const double> Row(int profile) const {
    return {probs_.data() + profile * num_outcomes_,
            static_cast<size_t>(num_outcomes_)};
  }
  const std::vector<double>& data() const { return probs_; }

  // Empty when every row is a distribution.
  std::vector<std::string> Validate(double tol = kNormalizationTol) const;
  // Largest per-profile total-variation distance.
  double MaxRowDistance(const DecisionRule& other) const;

 private:
  int num_profiles_;
  int num_outcomes_;
  std::vector<double> probs_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks that `candidate` is a distribution with supp(candidate) contained in
// supp(prior). Throws kDimension when the type spaces differ.
ValidationReport ValidateInformationStructure(
    const InformationStructure& candidate, const InformationStructure& prior);

// Row-wise mixture: result(theta) = sum_k weights[theta][k] * rules[k](theta).
DecisionRule MixDecisionRules(std::span<const DecisionRule> rules,
                              const std::vector<std::vector<double>>& weights);

// Interim expected utility of `player` of type `type` reporting `report`
// while everyone else reports truthfully.
double ExpectedUtility(const DecisionRule& rule, const UtilityTable& u,
                       const InformationStructure& info, Player player,
                       int type, int report);

void RequireSameSpace(const TypeSpace& a, const TypeSpace& b,
                      std::string_view context);

}  // namespace vetoshield

#endif  // VETOSHIELD_MODEL_H_
