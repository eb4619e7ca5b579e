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

#include "vetoshield/belief.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "vetoshield/error.h"

namespace vetoshield {
namespace {

void CheckDistribution(const std::vector<double>& row, const char* what) {
  double s = 0.0;
  for (double x : row) {
    if (x < 0.0 || !std::isfinite(x)) {
      Fail(ErrorKind::kInvalidWeights, std::string(what) + ": bad entry");
    }
    s += x;
  }
  if (std::abs(s - 1.0) > kNormalizationTol) {
    Fail(ErrorKind::kInvalidWeights,
         std::string(what) + ": row sums to " + std::to_string(s));
  }
}

void CheckDeviator(const TypeSpace& space, const DeviatorBelief& d) {
  if (d.player < 0 || d.player >= space.num_players()) {
    Fail(ErrorKind::kDimension, "deviator index out of range");
  }
  if (static_cast<int>(d.q.size()) != space.num_types(d.player)) {
    Fail(ErrorKind::kDimension, "off-path belief has wrong length");
  }
  CheckDistribution(d.q, "off-path belief");
}

// Co-player likelihood of `signal`, with the deviator's channel ignored.
std::vector<double> CoLikelihood(const SignalingDevice& device, int signal,
                                 Player deviator) {
  const TypeSpace& space = device.space();
  std::vector<double> out(space.num_coprofiles(deviator));
  for (int co = 0; co < static_cast<int>(out.size()); ++co) {
    out[co] = device.LikelihoodIgnoring(signal, space.Splice(deviator, 0, co),
                                        deviator);
  }
  return out;
}

}  // namespace

// SignalingDevice ------------------------------------------------------------

SignalingDevice::SignalingDevice(std::shared_ptr<const TypeSpace> space,
                                 std::vector<Player> domain,
                                 std::vector<std::string> alphabet,
                                 std::vector<std::vector<double>> rows)
    : space_(std::move(space)),
      domain_(std::move(domain)),
      alphabet_(std::move(alphabet)),
      rows_(std::move(rows)) {
  std::set<Player> seen;
  for (Player p : domain_) {
    if (p < 0 || p >= space_->num_players() || !seen.insert(p).second) {
      Fail(ErrorKind::kDimension, "invalid device domain");
    }
  }
  if (alphabet_.empty()) Fail(ErrorKind::kDimension, "empty signal alphabet");
  if (static_cast<int>(rows_.size()) != space_->num_subprofiles(domain_)) {
    Fail(ErrorKind::kDimension, "device needs one row per domain profile");
  }
  for (const auto& row : rows_) {
    if (row.size() != alphabet_.size()) {
      Fail(ErrorKind::kDimension, "device row length != alphabet size");
    }
    CheckDistribution(row, "device kernel");
  }
}

SignalingDevice SignalingDevice::Babbling(
    std::shared_ptr<const TypeSpace> space) {
  return SignalingDevice(std::move(space), {}, {"*"}, {{1.0}});
}

SignalingDevice SignalingDevice::FullyRevealing(
    std::shared_ptr<const TypeSpace> space, Player player) {
  const int n = space->num_types(player);
  std::vector<std::string> alphabet;
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (int t = 0; t < n; ++t) {
    alphabet.push_back(space->label(player, t).name);
    rows[t][t] = 1.0;
  }
  return SignalingDevice(std::move(space), {player}, std::move(alphabet),
                         std::move(rows));
}

SignalingDevice SignalingDevice::Product(
    std::shared_ptr<const TypeSpace> space,
    const std::vector<SignalChannel>& channels) {
  std::vector<Player> domain;
  std::vector<std::string> alphabet = {""};
  for (const auto& ch : channels) {
    domain.push_back(ch.player);
    if (static_cast<int>(ch.rows.size()) != space->num_types(ch.player)) {
      Fail(ErrorKind::kDimension, "channel needs one row per type");
    }
    std::vector<std::string> next;
    for (const auto& prefix : alphabet) {
      for (const auto& s : ch.alphabet) {
        next.push_back(prefix.empty() ? s : prefix + "|" + s);
      }
    }
    alphabet = std::move(next);
  }
  if (channels.empty()) return Babbling(std::move(space));
  const int nsub = space->num_subprofiles(domain);
  std::vector<std::vector<double>> rows(nsub);
  for (int sub = 0; sub < nsub; ++sub) {
    // Decode sub-profile digits (first channel most significant).
    std::vector<int> types(channels.size());
    int rest = sub;
    for (int c = static_cast<int>(channels.size()) - 1; c >= 0; --c) {
      const int nt = space->num_types(channels[c].player);
      types[c] = rest % nt;
      rest /= nt;
    }
    std::vector<double> row = {1.0};
    for (size_t c = 0; c < channels.size(); ++c) {
      const auto& probs = channels[c].rows[types[c]];
      std::vector<double> next;
      next.reserve(row.size() * probs.size());
      for (double a : row) {
        for (double b : probs) next.push_back(a * b);
      }
      row = std::move(next);
    }
    rows[sub] = std::move(row);
  }
  SignalingDevice device(std::move(space), std::move(domain),
                         std::move(alphabet), std::move(rows));
  device.channels_ = channels;
  return device;
}

bool SignalingDevice::Reads(Player player) const {
  return std::find(domain_.begin(), domain_.end(), player) != domain_.end();
}

double SignalingDevice::Likelihood(int signal, int profile) const {
  return rows_[space_->SubProfileOf(profile, domain_)][signal];
}

double SignalingDevice::LikelihoodIgnoring(int signal, int profile,
                                           Player deviator) const {
  if (!Reads(deviator)) return Likelihood(signal, profile);
  const int n = space_->num_types(deviator);
  double s = 0.0;
  for (int r = 0; r < n; ++r) {
    s += Likelihood(signal, space_->WithType(profile, deviator, r));
  }
  return s / n;
}

bool SignalingDevice::SatisfiesCapacity() const {
  if (!channels_.empty()) {
    for (const auto& ch : channels_) {
      if (static_cast<int>(ch.alphabet.size()) <
          space_->num_types(ch.player)) {
        return false;
      }
    }
    return true;
  }
  return num_signals() >= space_->num_subprofiles(domain_);
}

// Updating -------------------------------------------------------------------

std::vector<double> ConditionOnType(const InformationStructure& info,
                                    Player player, int type) {
  const TypeSpace& space = info.space();
  if (player < 0 || player >= space.num_players() || type < 0 ||
      type >= space.num_types(player)) {
    Fail(ErrorKind::kDimension, "player or type out of range");
  }
  const int nco = space.num_coprofiles(player);
  std::vector<double> out(nco);
  double marginal = 0.0;
  for (int co = 0; co < nco; ++co) {
    out[co] = info.mass(space.Splice(player, type, co));
    marginal += out[co];
  }
  if (marginal <= 0.0) {
    Fail(ErrorKind::kUndefinedConditional,
         "type " + space.label(player, type).name + " of player " +
             std::to_string(player) + " has zero probability");
  }
  for (double& x : out) x /= marginal;
  return out;
}

InformationStructure PostVetoStructure(const InformationStructure& prior,
                                       const DeviatorBelief& belief) {
  const TypeSpace& space = prior.space();
  CheckDeviator(space, belief);
  const std::vector<double> co = prior.CoMarginal(belief.player);
  std::vector<double> mass(space.num_profiles());
  for (int prof = 0; prof < space.num_profiles(); ++prof) {
    mass[prof] = belief.q[space.TypeOf(prof, belief.player)] *
                 co[space.CoProfileOf(prof, belief.player)];
  }
  return InformationStructure(prior.space_ptr(), std::move(mass));
}

double SignalProbability(const InformationStructure& base,
                         const SignalingDevice& device, int signal,
                         const std::optional<DeviatorBelief>& deviator) {
  RequireSameSpace(base.space(), device.space(), "SignalProbability");
  if (signal < 0 || signal >= device.num_signals()) {
    Fail(ErrorKind::kDimension, "signal index out of range");
  }
  const TypeSpace& space = base.space();
  double pr = 0.0;
  if (deviator) {
    CheckDeviator(space, *deviator);
    const std::vector<double> m = base.CoMarginal(deviator->player);
    const std::vector<double> lik =
        CoLikelihood(device, signal, deviator->player);
    for (size_t co = 0; co < m.size(); ++co) pr += m[co] * lik[co];
    return pr;
  }
  for (int prof = 0; prof < space.num_profiles(); ++prof) {
    pr += base.mass(prof) * device.Likelihood(signal, prof);
  }
  return pr;
}

InformationStructure UpdateOnSignal(
    const InformationStructure& base, const SignalingDevice& device,
    int signal, const std::optional<DeviatorBelief>& deviator) {
  const double pr = SignalProbability(base, device, signal, deviator);
  if (pr <= 0.0) {
    Fail(ErrorKind::kImpossibleSignal,
         "signal '" + device.alphabet()[signal] + "' has probability zero");
  }
  const TypeSpace& space = base.space();
  std::vector<double> mass(space.num_profiles());
  if (deviator) {
    const Player i = deviator->player;
    const std::vector<double> m = base.CoMarginal(i);
    const std::vector<double> lik = CoLikelihood(device, signal, i);
    std::vector<double> co_post(m.size());
    for (size_t co = 0; co < m.size(); ++co) co_post[co] = m[co] * lik[co] / pr;
    for (int prof = 0; prof < space.num_profiles(); ++prof) {
      mass[prof] = deviator->q[space.TypeOf(prof, i)] *
                   co_post[space.CoProfileOf(prof, i)];
    }
  } else {
    for (int prof = 0; prof < space.num_profiles(); ++prof) {
      mass[prof] = base.mass(prof) * device.Likelihood(signal, prof) / pr;
    }
  }
  return InformationStructure(base.space_ptr(), std::move(mass));
}

PosteriorLottery CanonicalLottery(PosteriorLottery lottery, double tol) {
  PosteriorLottery out;
  out.base_ref = lottery.base_ref;
  for (auto& atom : lottery.atoms) {
    if (atom.weight <= 0.0) continue;
    bool merged = false;
    for (auto& existing : out.atoms) {
      if (existing.posterior.MaxAbsDiff(atom.posterior) <= tol) {
        existing.weight += atom.weight;
        existing.signals.insert(existing.signals.end(), atom.signals.begin(),
                                atom.signals.end());
        merged = true;
        break;
      }
    }
    if (!merged) out.atoms.push_back(std::move(atom));
  }
  return out;
}

PosteriorLottery DeviceToLottery(
    const InformationStructure& base, const SignalingDevice& device,
    const std::optional<DeviatorBelief>& deviator) {
  PosteriorLottery lottery;
  for (int s = 0; s < device.num_signals(); ++s) {
    const double pr = SignalProbability(base, device, s, deviator);
    if (pr <= 0.0) continue;
    lottery.atoms.push_back(
        {pr, UpdateOnSignal(base, device, s, deviator), {s}});
  }
  return CanonicalLottery(std::move(lottery));
}

PlausibilityReport CheckBayesPlausible(const PosteriorLottery& lottery,
                                       const InformationStructure& base,
                                       std::optional<Player> deviator,
                                       double tol) {
  const TypeSpace& space = base.space();
  PlausibilityReport report;
  std::vector<double> avg(space.num_profiles(), 0.0);
  double total_weight = 0.0;
  for (const auto& atom : lottery.atoms) {
    RequireSameSpace(space, atom.posterior.space(), "CheckBayesPlausible");
    if (atom.weight < 0.0) report.max_deviation = std::abs(atom.weight);
    total_weight += atom.weight;
    for (int prof = 0; prof < space.num_profiles(); ++prof) {
      avg[prof] += atom.weight * atom.posterior.mass(prof);
    }
  }
  report.max_deviation =
      std::max(report.max_deviation, std::abs(total_weight - 1.0));
  for (int prof = 0; prof < space.num_profiles(); ++prof) {
    report.max_deviation =
        std::max(report.max_deviation, std::abs(avg[prof] - base.mass(prof)));
  }
  if (deviator) {
    // Deviator conditional I_i(theta_i | theta_{-i}) must match the base
    // wherever both are defined.
    const Player i = *deviator;
    const std::vector<double> base_co = base.CoMarginal(i);
    for (const auto& atom : lottery.atoms) {
      const std::vector<double> co = atom.posterior.CoMarginal(i);
      for (int c = 0; c < space.num_coprofiles(i); ++c) {
        if (co[c] <= 0.0 || base_co[c] <= 0.0) continue;
        for (int t = 0; t < space.num_types(i); ++t) {
          const int prof = space.Splice(i, t, c);
          const double a = atom.posterior.mass(prof) / co[c];
          const double b = base.mass(prof) / base_co[c];
          report.opacity_deviation =
              std::max(report.opacity_deviation, std::abs(a - b));
        }
      }
    }
  }
  report.ok = report.max_deviation <= tol && report.opacity_deviation <= tol;
  return report;
}

SignalingDevice LotteryToDevice(const PosteriorLottery& lottery,
                                const InformationStructure& base,
                                std::optional<Player> deviator) {
  const PlausibilityReport check =
      CheckBayesPlausible(lottery, base, deviator);
  if (!check.ok) {
    Fail(ErrorKind::kInfeasibleSplitting,
         "lottery is not Bayes plausible (deviation " +
             std::to_string(std::max(check.max_deviation,
                                     check.opacity_deviation)) +
             ")");
  }
  const TypeSpace& space = base.space();
  const int k = static_cast<int>(lottery.atoms.size());
  std::vector<std::string> alphabet;
  for (int a = 0; a < k; ++a) alphabet.push_back("s" + std::to_string(a));

  std::vector<Player> domain;
  std::vector<double> base_cells;
  std::vector<std::vector<double>> atom_cells;
  if (deviator) {
    domain = space.Others(*deviator);
    base_cells = base.CoMarginal(*deviator);
    for (const auto& atom : lottery.atoms) {
      atom_cells.push_back(atom.posterior.CoMarginal(*deviator));
    }
  } else {
    for (int p = 0; p < space.num_players(); ++p) domain.push_back(p);
    base_cells = base.table();
    for (const auto& atom : lottery.atoms) {
      atom_cells.push_back(atom.posterior.table());
    }
  }
  std::vector<std::vector<double>> rows(base_cells.size(),
                                        std::vector<double>(k, 0.0));
  for (size_t c = 0; c < base_cells.size(); ++c) {
    if (base_cells[c] <= 0.0) {
      std::fill(rows[c].begin(), rows[c].end(), 1.0 / k);
      continue;
    }
    double s = 0.0;
    for (int a = 0; a < k; ++a) {
      rows[c][a] = std::max(
          0.0, lottery.atoms[a].weight * atom_cells[a][c] / base_cells[c]);
      s += rows[c][a];
    }
    for (double& x : rows[c]) x /= s;
  }
  return SignalingDevice(base.space_ptr(), std::move(domain),
                         std::move(alphabet), std::move(rows));
}

}  // namespace vetoshield
