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

#include "vetoshield/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "vetoshield/belief.h"
#include "vetoshield/error.h"

namespace vetoshield {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kInvalidWeights: return "invalid-weights";
    case ErrorKind::kUndefinedConditional: return "undefined-conditional";
    case ErrorKind::kImpossibleSignal: return "impossible-signal";
    case ErrorKind::kInfeasibleSplitting: return "infeasible-splitting";
    case ErrorKind::kResolutionExhausted: return "resolution-exhausted";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kUnbounded: return "unbounded";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kInstanceTooLarge: return "instance-too-large";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

// TypeSpace ------------------------------------------------------------------

TypeSpace::TypeSpace(std::vector<std::vector<TypeLabel>> types)
    : types_(std::move(types)) {
  if (types_.size() < 2) {
    Fail(ErrorKind::kDimension, "type space needs at least two players");
  }
  strides_.assign(types_.size(), 1);
  for (int p = num_players() - 1; p >= 0; --p) {
    const auto& labels = types_[p];
    if (labels.empty()) {
      Fail(ErrorKind::kDimension,
           "player " + std::to_string(p) + " has no types");
    }
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l.name).second) {
        Fail(ErrorKind::kDimension, "duplicate type label '" + l.name +
                                        "' for player " + std::to_string(p));
      }
    }
    strides_[p] = num_profiles_;
    num_profiles_ *= static_cast<int>(labels.size());
  }
}

TypeSpace TypeSpace::FromCounts(const std::vector<int>& counts) {
  std::vector<std::vector<TypeLabel>> types;
  for (int c : counts) {
    std::vector<TypeLabel> labels;
    for (int t = 0; t < c; ++t) {
      labels.push_back({"t" + std::to_string(t), static_cast<double>(t)});
    }
    types.push_back(std::move(labels));
  }
  return TypeSpace(std::move(types));
}

int TypeSpace::num_types(Player player) const {
  return static_cast<int>(types_.at(player).size());
}

const TypeLabel& TypeSpace::label(Player player, int type) const {
  return types_.at(player).at(type);
}

int TypeSpace::FindType(Player player, std::string_view name) const {
  const auto& labels = types_.at(player);
  for (size_t t = 0; t < labels.size(); ++t) {
    if (labels[t].name == name) return static_cast<int>(t);
  }
  return -1;
}

std::vector<int> TypeSpace::Decode(int profile) const {
  std::vector<int> out(types_.size());
  for (int p = 0; p < num_players(); ++p) out[p] = TypeOf(profile, p);
  return out;
}

int TypeSpace::Encode(std::span<const int> types) const {
  if (static_cast<int>(types.size()) != num_players()) {
    Fail(ErrorKind::kDimension, "profile length does not match player count");
  }
  int profile = 0;
  for (int p = 0; p < num_players(); ++p) {
    if (types[p] < 0 || types[p] >= num_types(p)) {
      Fail(ErrorKind::kDimension, "type index out of range");
    }
    profile += types[p] * strides_[p];
  }
  return profile;
}

int TypeSpace::TypeOf(int profile, Player player) const {
  return (profile / strides_[player]) % num_types(player);
}

int TypeSpace::WithType(int profile, Player player, int type) const {
  return profile + (type - TypeOf(profile, player)) * strides_[player];
}

int TypeSpace::num_subprofiles(std::span<const Player> players) const {
  int n = 1;
  for (Player p : players) n *= num_types(p);
  return n;
}

int TypeSpace::SubProfileOf(int profile,
                            std::span<const Player> players) const {
  int sub = 0;
  for (Player p : players) sub = sub * num_types(p) + TypeOf(profile, p);
  return sub;
}

std::vector<Player> TypeSpace::Others(Player player) const {
  std::vector<Player> out;
  for (int p = 0; p < num_players(); ++p) {
    if (p != player) out.push_back(p);
  }
  return out;
}

int TypeSpace::num_coprofiles(Player player) const {
  return num_profiles_ / num_types(player);
}

int TypeSpace::CoProfileOf(int profile, Player player) const {
  int sub = 0;
  for (int p = 0; p < num_players(); ++p) {
    if (p != player) sub = sub * num_types(p) + TypeOf(profile, p);
  }
  return sub;
}

int TypeSpace::Splice(Player player, int type, int coprofile) const {
  int profile = 0;
  for (int p = num_players() - 1; p >= 0; --p) {
    int t = type;
    if (p != player) {
      t = coprofile % num_types(p);
      coprofile /= num_types(p);
    }
    profile += t * strides_[p];
  }
  return profile;
}

std::string TypeSpace::ProfileName(int profile) const {
  std::string out = "(";
  for (int p = 0; p < num_players(); ++p) {
    if (p) out += ",";
    out += label(p, TypeOf(profile, p)).name;
  }
  return out + ")";
}

bool TypeSpace::operator==(const TypeSpace& other) const {
  if (types_.size() != other.types_.size()) return false;
  for (size_t p = 0; p < types_.size(); ++p) {
    if (types_[p].size() != other.types_[p].size()) return false;
    for (size_t t = 0; t < types_[p].size(); ++t) {
      if (types_[p][t].name != other.types_[p][t].name) return false;
    }
  }
  return true;
}

void RequireSameSpace(const TypeSpace& a, const TypeSpace& b,
                      std::string_view context) {
  if (!(a == b)) {
    Fail(ErrorKind::kDimension,
         std::string(context) + ": type spaces do not match");
  }
}

// OutcomeSpace ---------------------------------------------------------------

OutcomeSpace::OutcomeSpace(std::vector<std::string> outcome_labels, int dim)
    : labels(std::move(outcome_labels)), dimension(dim) {
  if (labels.empty()) Fail(ErrorKind::kDimension, "outcome space is empty");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    Fail(ErrorKind::kDimension, "duplicate outcome labels");
  }
}

OutcomeSpace OutcomeSpace::FromCount(int count) {
  std::vector<std::string> labels;
  for (int z = 0; z < count; ++z) labels.push_back("z" + std::to_string(z));
  return OutcomeSpace(std::move(labels));
}

int OutcomeSpace::Find(std::string_view name) const {
  for (size_t z = 0; z < labels.size(); ++z) {
    if (labels[z] == name) return static_cast<int>(z);
  }
  return -1;
}

// InformationStructure -------------------------------------------------------

InformationStructure::InformationStructure(
    std::shared_ptr<const TypeSpace> space, std::vector<double> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) Fail(ErrorKind::kDimension, "null type space");
  if (static_cast<int>(mass_.size()) != space_->num_profiles()) {
    Fail(ErrorKind::kDimension,
         "information structure has " + std::to_string(mass_.size()) +
             " cells, type space has " +
             std::to_string(space_->num_profiles()) + " profiles");
  }
  for (double m : mass_) {
    if (!std::isfinite(m)) {
      Fail(ErrorKind::kDimension, "non-finite probability mass");
    }
  }
}

InformationStructure InformationStructure::Normalized(
    std::shared_ptr<const TypeSpace> space, std::vector<double> weights) {
  double total = 0.0;
  for (double& w : weights) {
    if (w < 0.0) {
      if (w < -kEqualityTol) {
        Fail(ErrorKind::kInvalidWeights, "negative weight in normalization");
      }
      w = 0.0;
    }
    total += w;
  }
  if (total <= 0.0) {
    Fail(ErrorKind::kInvalidWeights, "cannot normalize zero total mass");
  }
  for (double& w : weights) w /= total;
  return InformationStructure(std::move(space), std::move(weights));
}

InformationStructure InformationStructure::Uniform(
    std::shared_ptr<const TypeSpace> space) {
  const int n = space->num_profiles();
  return InformationStructure(std::move(space),
                              std::vector<double>(n, 1.0 / n));
}

InformationStructure InformationStructure::PointMass(
    std::shared_ptr<const TypeSpace> space, int profile) {
  std::vector<double> mass(space->num_profiles(), 0.0);
  mass.at(profile) = 1.0;
  return InformationStructure(std::move(space), std::move(mass));
}

InformationStructure InformationStructure::Product(
    std::shared_ptr<const TypeSpace> space,
    const std::vector<std::vector<double>>& marginals) {
  if (static_cast<int>(marginals.size()) != space->num_players()) {
    Fail(ErrorKind::kDimension, "one marginal per player required");
  }
  std::vector<double> mass(space->num_profiles(), 1.0);
  for (int prof = 0; prof < space->num_profiles(); ++prof) {
    for (int p = 0; p < space->num_players(); ++p) {
      if (static_cast<int>(marginals[p].size()) != space->num_types(p)) {
        Fail(ErrorKind::kDimension, "marginal length mismatch");
      }
      mass[prof] *= marginals[p][space->TypeOf(prof, p)];
    }
  }
  return InformationStructure(std::move(space), std::move(mass));
}

double InformationStructure::total() const {
  return std::accumulate(mass_.begin(), mass_.end(), 0.0);
}

std::vector<double> InformationStructure::Marginal(Player player) const {
  std::vector<double> out(space_->num_types(player), 0.0);
  for (int prof = 0; prof < space_->num_profiles(); ++prof) {
    out[space_->TypeOf(prof, player)] += mass_[prof];
  }
  return out;
}

std::vector<double> InformationStructure::SubMarginal(
    std::span<const Player> players) const {
  std::vector<double> out(space_->num_subprofiles(players), 0.0);
  for (int prof = 0; prof < space_->num_profiles(); ++prof) {
    out[space_->SubProfileOf(prof, players)] += mass_[prof];
  }
  return out;
}

std::vector<double> InformationStructure::CoMarginal(Player player) const {
  std::vector<double> out(space_->num_coprofiles(player), 0.0);
  for (int prof = 0; prof < space_->num_profiles(); ++prof) {
    out[space_->CoProfileOf(prof, player)] += mass_[prof];
  }
  return out;
}

std::vector<std::string> InformationStructure::Validate(double tol) const {
  std::vector<std::string> out;
  for (int prof = 0; prof < space_->num_profiles(); ++prof) {
    if (mass_[prof] < 0.0) {
      std::ostringstream msg;
      msg << "negative mass " << mass_[prof] << " at "
          << space_->ProfileName(prof);
      out.push_back(msg.str());
    }
  }
  const double t = total();
  if (std::abs(t - 1.0) > tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "total mass " << t << " differs from 1";
    out.push_back(msg.str());
  }
  return out;
}

double InformationStructure::MaxAbsDiff(
    const InformationStructure& other) const {
  RequireSameSpace(*space_, other.space(), "MaxAbsDiff");
  double d = 0.0;
  for (size_t k = 0; k < mass_.size(); ++k) {
    d = std::max(d, std::abs(mass_[k] - other.mass_[k]));
  }
  return d;
}

ValidationReport ValidateInformationStructure(
    const InformationStructure& candidate, const InformationStructure& prior) {
  RequireSameSpace(candidate.space(), prior.space(),
                   "ValidateInformationStructure");
  ValidationReport report;
  report.violations = candidate.Validate();
  const TypeSpace& space = candidate.space();
  for (int prof = 0; prof < space.num_profiles(); ++prof) {
    if (candidate.mass(prof) > 0.0 && prior.mass(prof) <= 0.0) {
      std::ostringstream msg;
      msg << "mass " << candidate.mass(prof) << " at "
          << space.ProfileName(prof) << " outside prior support";
      report.violations.push_back(msg.str());
    }
  }
  report.ok = report.violations.empty();
  return report;
}

// UtilityTable / DecisionRule ------------------------------------------------

UtilityTable::UtilityTable(int num_players, int num_outcomes, int num_profiles)
    : num_players_(num_players),
      num_outcomes_(num_outcomes),
      num_profiles_(num_profiles),
      values_(static_cast<size_t>(num_players) * num_outcomes * num_profiles,
              0.0) {}

DecisionRule::DecisionRule(int num_profiles, int num_outcomes)
    : num_profiles_(num_profiles),
      num_outcomes_(num_outcomes),
      probs_(static_cast<size_t>(num_profiles) * num_outcomes, 0.0) {}

DecisionRule::DecisionRule(int num_profiles, int num_outcomes,
                           std::vector<double> probs)
    : num_profiles_(num_profiles),
      num_outcomes_(num_outcomes),
      probs_(std::move(probs)) {
  if (probs_.size() != static_cast<size_t>(num_profiles) * num_outcomes) {
    Fail(ErrorKind::kDimension, "decision rule table has wrong size");
  }
}

DecisionRule DecisionRule::Constant(int num_profiles, int num_outcomes,
                                    int outcome) {
  DecisionRule rule(num_profiles, num_outcomes);
  for (int p = 0; p < num_profiles; ++p) rule.at(p, outcome) = 1.0;
  return rule;
}

std::vector<std::string> DecisionRule::Validate(double tol) const {
  std::vector<std::string> out;
  for (int p = 0; p < num_profiles_; ++p) {
    double s = 0.0;
    for (int z = 0; z < num_outcomes_; ++z) {
      const double g = (*this)(p, z);
      if (g < 0.0 || !std::isfinite(g)) {
        out.push_back("invalid probability in row " + std::to_string(p));
      }
      s += g;
    }
    if (std::abs(s - 1.0) > tol) {
      out.push_back("row " + std::to_string(p) + " sums to " +
                    std::to_string(s));
    }
  }
  return out;
}

double DecisionRule::MaxRowDistance(const DecisionRule& other) const {
  if (other.num_profiles_ != num_profiles_ ||
      other.num_outcomes_ != num_outcomes_) {
    Fail(ErrorKind::kDimension, "decision rules have different shapes");
  }
  double worst = 0.0;
  for (int p = 0; p < num_profiles_; ++p) {
    double tv = 0.0;
    for (int z = 0; z < num_outcomes_; ++z) {
      tv += std::abs((*this)(p, z) - other(p, z));
    }
    worst = std::max(worst, 0.5 * tv);
  }
  return worst;
}

DecisionRule MixDecisionRules(std::span<const DecisionRule> rules,
                              const std::vector<std::vector<double>>& weights) {
  if (rules.empty()) Fail(ErrorKind::kDimension, "no rules to mix");
  const int np = rules[0].num_profiles();
  const int nz = rules[0].num_outcomes();
  for (const auto& r : rules) {
    if (r.num_profiles() != np || r.num_outcomes() != nz) {
      Fail(ErrorKind::kDimension, "rules to mix have different shapes");
    }
  }
  if (static_cast<int>(weights.size()) != np) {
    Fail(ErrorKind::kInvalidWeights, "one weight row per profile required");
  }
  DecisionRule out(np, nz);
  for (int p = 0; p < np; ++p) {
    const auto& w = weights[p];
    if (w.size() != rules.size()) {
      Fail(ErrorKind::kInvalidWeights, "weight row length mismatch");
    }
    double s = 0.0;
    for (double x : w) {
      if (x < 0.0) Fail(ErrorKind::kInvalidWeights, "negative mixing weight");
      s += x;
    }
    if (std::abs(s - 1.0) > kNormalizationTol) {
      Fail(ErrorKind::kInvalidWeights,
           "mixing weights at profile " + std::to_string(p) + " sum to " +
               std::to_string(s));
    }
    for (size_t k = 0; k < rules.size(); ++k) {
      if (w[k] == 0.0) continue;
      for (int z = 0; z < nz; ++z) out.at(p, z) += w[k] * rules[k](p, z);
    }
  }
  return out;
}

double ExpectedUtility(const DecisionRule& rule, const UtilityTable& u,
                       const InformationStructure& info, Player player,
                       int type, int report) {
  const TypeSpace& space = info.space();
  const std::vector<double> belief = ConditionOnType(info, player, type);
  double value = 0.0;
  for (int co = 0; co < space.num_coprofiles(player); ++co) {
    if (belief[co] == 0.0) continue;
    const int truth = space.Splice(player, type, co);
    const int reported = space.Splice(player, report, co);
    double inner = 0.0;
    for (int z = 0; z < rule.num_outcomes(); ++z) {
      inner += rule(reported, z) * u(player, z, truth);
    }
    value += belief[co] * inner;
  }
  return value;
}

}  // namespace vetoshield
