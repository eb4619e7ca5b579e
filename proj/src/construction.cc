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

#include <algorithm>
#include <cmath>
#include <limits>

#include "vetoshield/error.h"
#include "vetoshield/mechanism.h"

namespace vetoshield {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void CheckXi(const TypeSpace& space,
             const std::vector<std::vector<double>>& xi) {
  if (static_cast<int>(xi.size()) != space.num_players()) {
    Fail(ErrorKind::kDimension, "veto probabilities need one row per player");
  }
  if (space.num_players() > 30) {
    Fail(ErrorKind::kInstanceTooLarge, "too many players for veto sets");
  }
  for (Player i = 0; i < space.num_players(); ++i) {
    if (static_cast<int>(xi[i].size()) != space.num_types(i)) {
      Fail(ErrorKind::kDimension, "veto probabilities need one entry per type");
    }
    for (double x : xi[i]) {
      if (!(x >= 0.0 && x <= 1.0)) {
        Fail(ErrorKind::kPrecondition, "veto probability outside [0, 1]");
      }
    }
  }
}

// Belief attached to a player after her own veto: the veto-weighted marginal,
// or the fallback when she never vetoes.
std::vector<double> UnilateralVetoBelief(const VetoEquilibrium& veq,
                                         Player i) {
  for (const VetoSet& set : veq.veto_sets) {
    if (set.mask == (VetoMask{1} << i)) return set.posterior.Marginal(i);
  }
  const std::vector<double> marg = veq.prior.Marginal(i);
  std::vector<double> w(marg.size());
  double total = 0.0;
  for (size_t t = 0; t < marg.size(); ++t) {
    w[t] = marg[t] * veq.xi[i][t];
    total += w[t];
  }
  if (total <= 0.0) return veq.offpath[i];
  for (double& x : w) x /= total;
  return w;
}

}  // namespace

double VetoSetProbability(const std::vector<std::vector<double>>& xi,
                          const TypeSpace& space, VetoMask mask, int profile) {
  double p = 1.0;
  for (Player i = 0; i < space.num_players(); ++i) {
    const double x = xi[i][space.TypeOf(profile, i)];
    p *= (mask >> i) & 1u ? x : 1.0 - x;
  }
  return p;
}

VetoDistribution ComputeVetoDistribution(
    const InformationStructure& prior,
    const std::vector<std::vector<double>>& xi, int num_outcomes) {
  const TypeSpace& space = prior.space();
  CheckXi(space, xi);
  const int np = space.num_profiles();
  VetoDistribution out;
  const VetoMask all = (VetoMask{1} << space.num_players()) - 1;
  for (VetoMask mask = 0; mask <= all; ++mask) {
    std::vector<double> w(np);
    double total = 0.0;
    for (int p = 0; p < np; ++p) {
      w[p] = prior.mass(p) * VetoSetProbability(xi, space, mask, p);
      total += w[p];
    }
    if (total <= 0.0) continue;
    for (double& x : w) x /= total;
    InformationStructure post(prior.space_ptr(), std::move(w));
    if (mask == 0) {
      out.acceptance = std::move(post);
      out.accept_prob = total;
    } else {
      out.sets.push_back(
          {mask, total, std::move(post), DecisionRule(np, num_outcomes)});
    }
  }
  return out;
}

std::vector<std::string> CheckVetoEquilibrium(const VetoEquilibrium& veq) {
  std::vector<std::string> issues;
  const TypeSpace& space = veq.prior.space();
  for (const std::string& v : veq.prior.Validate()) {
    issues.push_back("prior: " + v);
  }
  VetoDistribution expected;
  try {
    expected = ComputeVetoDistribution(veq.prior, veq.xi,
                                       veq.acceptance_rule.num_outcomes());
  } catch (const Error& e) {
    issues.push_back(e.what());
    return issues;
  }
  if (expected.sets.size() != veq.veto_sets.size()) {
    issues.push_back("veto sets do not match the veto probabilities");
  } else {
    for (size_t k = 0; k < expected.sets.size(); ++k) {
      const VetoSet& want = expected.sets[k];
      const VetoSet& got = veq.veto_sets[k];
      const std::string tag = "veto set " + std::to_string(got.mask);
      if (want.mask != got.mask) {
        issues.push_back(tag + ": unexpected set");
        continue;
      }
      if (std::abs(want.prob - got.prob) > kEqualityTol) {
        issues.push_back(tag + ": probability is not Bayes-consistent");
      }
      if (want.posterior.MaxAbsDiff(got.posterior) > kEqualityTol) {
        issues.push_back(tag + ": posterior is not Bayes-consistent");
      }
      if (got.rule.num_profiles() != space.num_profiles()) {
        issues.push_back(tag + ": rule has wrong shape");
      } else if (auto bad = got.rule.Validate(kEqualityTol); !bad.empty()) {
        issues.push_back(tag + ": " + bad.front());
      }
    }
  }
  if (expected.acceptance.has_value() != veq.acceptance.has_value()) {
    issues.push_back("acceptance structure presence is inconsistent");
  } else if (expected.acceptance &&
             expected.acceptance->MaxAbsDiff(*veq.acceptance) > kEqualityTol) {
    issues.push_back("acceptance structure is not Bayes-consistent");
  }
  if (veq.acceptance_rule.num_profiles() != space.num_profiles()) {
    issues.push_back("acceptance rule has wrong shape");
  } else if (auto bad = veq.acceptance_rule.Validate(kEqualityTol);
             !bad.empty()) {
    issues.push_back("acceptance rule: " + bad.front());
  }
  if (static_cast<int>(veq.offpath.size()) != space.num_players()) {
    issues.push_back("need one off-path belief per player");
  } else {
    for (Player i = 0; i < space.num_players(); ++i) {
      const auto& q = veq.offpath[i];
      double s = 0.0;
      bool neg = false;
      for (double x : q) {
        s += x;
        neg |= x < 0.0;
      }
      if (static_cast<int>(q.size()) != space.num_types(i) || neg ||
          std::abs(s - 1.0) > kEqualityTol) {
        issues.push_back("off-path belief of player " + std::to_string(i) +
                         " is not a distribution");
      }
    }
  }
  return issues;
}

DecisionRule VetoOutcomeRule(const VetoEquilibrium& veq) {
  const TypeSpace& space = veq.prior.space();
  const int np = space.num_profiles();
  std::vector<DecisionRule> rules{veq.acceptance_rule};
  for (const VetoSet& set : veq.veto_sets) rules.push_back(set.rule);
  std::vector<std::vector<double>> weights(np);
  for (int p = 0; p < np; ++p) {
    double used = 0.0;
    weights[p].assign(rules.size(), 0.0);
    for (size_t k = 0; k < veq.veto_sets.size(); ++k) {
      weights[p][k + 1] =
          VetoSetProbability(veq.xi, space, veq.veto_sets[k].mask, p);
      used += weights[p][k + 1];
    }
    // Off-support profiles may put mass on sets that never occur.
    weights[p][0] = std::max(0.0, 1.0 - used);
    if (used > 1.0) {
      for (double& w : weights[p]) w /= used;
    }
  }
  return MixDecisionRules(rules, weights);
}

SignalBeliefs UniformBeliefs(const std::vector<std::vector<double>>& q,
                             int num_signals) {
  SignalBeliefs out(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    out[i].assign(num_signals, q[i]);
  }
  return out;
}

double DeviationValue(const DefaultGame& game, const SignalingDevice& device,
                      const SignalBeliefs& beliefs,
                      const InformationStructure& prior, Player deviator,
                      int type, const SelectionPolicy& policy) {
  const TypeSpace& space = prior.space();
  const Player i = deviator;
  const std::vector<double> comarg = prior.CoMarginal(i);
  const std::vector<double> cond = prior.Marginal(i)[type] > 0.0
                                       ? ConditionOnType(prior, i, type)
                                       : comarg;
  const int nco = space.num_coprofiles(i);
  double value = 0.0;
  for (int s = 0; s < device.num_signals(); ++s) {
    double ps = 0.0;
    for (int co = 0; co < nco; ++co) {
      if (cond[co] > 0.0) {
        ps += cond[co] * device.Likelihood(s, space.Splice(i, type, co));
      }
    }
    if (ps <= 0.0) continue;
    std::vector<double> w(nco);
    double total = 0.0;
    for (int co = 0; co < nco; ++co) {
      w[co] = comarg[co] *
              device.LikelihoodIgnoring(s, space.Splice(i, 0, co), i);
      total += w[co];
    }
    if (total <= 0.0) {
      Fail(ErrorKind::kInternal, "deviation signal has no posterior");
    }
    const std::vector<double>& q = beliefs.at(i).at(s);
    std::vector<double> mass(space.num_profiles());
    for (int p = 0; p < space.num_profiles(); ++p) {
      mass[p] = q[space.TypeOf(p, i)] * w[space.CoProfileOf(p, i)] / total;
    }
    const InformationStructure post(prior.space_ptr(), std::move(mass));
    value += ps * OutsideOptionValue(game, post, i, type, policy);
  }
  return value;
}

NoVetoReport VerifyNoVeto(const DecisionRule& rule,
                          const SignalingDevice& device,
                          const DefaultGame& game, const UtilityTable& u,
                          const SignalBeliefs& beliefs,
                          const InformationStructure& prior,
                          const SelectionPolicy& policy, double tol) {
  const TypeSpace& space = prior.space();
  RequireSameSpace(device.space(), space, "VerifyNoVeto");
  RequireSameSpace(GameSpace(game), space, "VerifyNoVeto");
  NoVetoReport report;
  report.worst = std::numeric_limits<double>::infinity();
  const int np = space.num_players();
  report.slack.resize(np);
  report.veto_value.resize(np);
  report.accept_value.resize(np);
  for (Player i = 0; i < np; ++i) {
    const std::vector<double> marg = prior.Marginal(i);
    const int nt = space.num_types(i);
    report.slack[i].assign(nt, kNaN);
    report.veto_value[i].assign(nt, kNaN);
    report.accept_value[i].assign(nt, kNaN);
    for (int t = 0; t < nt; ++t) {
      if (marg[t] <= 0.0) continue;
      const double accept = InterimUtility(rule, prior, u, i, t);
      const double veto =
          DeviationValue(game, device, beliefs, prior, i, t, policy);
      report.accept_value[i][t] = accept;
      report.veto_value[i][t] = veto;
      report.slack[i][t] = accept - veto;
      report.worst = std::min(report.worst, accept - veto);
    }
  }
  report.ok = report.worst >= -tol;
  return report;
}

SignalingDevice VetoSignalDevice(std::shared_ptr<const TypeSpace> space,
                                 const std::vector<std::vector<double>>& xi) {
  std::vector<SignalChannel> channels;
  for (Player i = 0; i < space->num_players(); ++i) {
    if (std::all_of(xi[i].begin(), xi[i].end(),
                    [](double x) { return x <= 0.0; })) {
      continue;
    }
    SignalChannel ch{i, {"0", "1"}, {}};
    for (double x : xi[i]) ch.rows.push_back({1.0 - x, x});
    channels.push_back(std::move(ch));
  }
  if (channels.empty()) return SignalingDevice::Babbling(std::move(space));
  return SignalingDevice::Product(std::move(space), channels);
}

Construction ConstructFullParticipation(const VetoEquilibrium& veq,
                                        const DefaultGame& game,
                                        const UtilityTable& u,
                                        const SelectionPolicy& policy) {
  if (auto issues = CheckVetoEquilibrium(veq); !issues.empty()) {
    Fail(ErrorKind::kPrecondition,
         "inconsistent veto equilibrium: " + issues.front());
  }
  const TypeSpace& space = veq.prior.space();
  Construction c{.rule = VetoOutcomeRule(veq),
                 .device = VetoSignalDevice(veq.prior.space_ptr(), veq.xi),
                 .offpath = {},
                 .ic = {},
                 .no_veto = {},
                 .outcome_deviation = 0.0};
  for (Player i = 0; i < space.num_players(); ++i) {
    c.offpath.push_back(UnilateralVetoBelief(veq, i));
  }
  c.ic = CheckIc(c.rule, veq.prior, u, kEquilibriumTol);
  c.no_veto = VerifyNoVeto(c.rule, c.device, game, u,
                           UniformBeliefs(c.offpath, c.device.num_signals()),
                           veq.prior, policy);
  // Under full participation the grand game implements the rule row by row.
  const DecisionRule source = VetoOutcomeRule(veq);
  for (int p = 0; p < space.num_profiles(); ++p) {
    if (veq.prior.mass(p) <= 0.0) continue;
    double tv = 0.0;
    for (int z = 0; z < source.num_outcomes(); ++z) {
      tv += std::abs(c.rule(p, z) - source(p, z));
    }
    c.outcome_deviation = std::max(c.outcome_deviation, 0.5 * tv);
  }
  return c;
}

IntuitiveReport CheckIntuitiveCriterion(const Construction& construction,
                                        const InformationStructure& prior,
                                        const DefaultGame& game,
                                        const UtilityTable& u,
                                        const SelectionPolicy& policy) {
  IntuitiveReport report;
  const TypeSpace& space = prior.space();
  const SignalBeliefs beliefs = UniformBeliefs(
      construction.offpath, construction.device.num_signals());
  for (Player i = 0; i < space.num_players(); ++i) {
    const std::vector<double> marg = prior.Marginal(i);
    for (int t = 0; t < space.num_types(i); ++t) {
      const bool in_belief = construction.offpath[i][t] > 0.0;
      if (!in_belief && marg[t] <= 0.0) continue;
      const double veto = DeviationValue(game, construction.device, beliefs,
                                         prior, i, t, policy);
      const double stay =
          marg[t] > 0.0
              ? InterimUtility(construction.rule, prior, u, i, t)
              : std::numeric_limits<double>::infinity();
      const std::string who = "player " + std::to_string(i) + " type " +
                              space.label(i, t).name;
      if (in_belief && veto < stay - kEqualityTol) {
        report.failures.push_back(who +
                                  " carries off-path mass but loses by vetoing");
      }
      if (marg[t] > 0.0 && veto > stay + kEqualityTol) {
        report.failures.push_back(who + " strictly prefers to veto");
      }
    }
  }
  report.ok = report.failures.empty();
  return report;
}

DecisionRule SeparatingOutcomeRule(
    const InformationStructure& prior,
    const std::vector<std::vector<double>>& proposal_probs,
    const std::vector<Proposal>& proposals) {
  const TypeSpace& space = prior.space();
  std::vector<DecisionRule> rules;
  for (const Proposal& p : proposals) rules.push_back(VetoOutcomeRule(p.veq));
  std::vector<std::vector<double>> weights(space.num_profiles());
  for (int p = 0; p < space.num_profiles(); ++p) {
    weights[p] = proposal_probs[space.TypeOf(p, 0)];
  }
  return MixDecisionRules(rules, weights);
}

Pooling PoolInformedPrincipal(
    const InformationStructure& prior,
    const std::vector<std::vector<double>>& proposal_probs,
    const std::vector<Proposal>& proposals, const DefaultGame& game,
    const UtilityTable& u, const SelectionPolicy& policy) {
  const TypeSpace& space = prior.space();
  const int nk = static_cast<int>(proposals.size());
  const int n0 = space.num_types(0);
  if (nk == 0) Fail(ErrorKind::kPrecondition, "no proposals");
  if (static_cast<int>(proposal_probs.size()) != n0) {
    Fail(ErrorKind::kDimension, "proposal probabilities need one row per type");
  }
  for (const auto& row : proposal_probs) {
    double s = 0.0;
    for (double x : row) {
      if (x < 0.0) Fail(ErrorKind::kPrecondition, "negative proposal weight");
      s += x;
    }
    if (static_cast<int>(row.size()) != nk ||
        std::abs(s - 1.0) > kNormalizationTol) {
      Fail(ErrorKind::kPrecondition, "proposal rows must be distributions");
    }
  }
  for (int k = 0; k < nk; ++k) {
    RequireSameSpace(proposals[k].veq.prior.space(), space, "pool");
    std::vector<double> w(space.num_profiles());
    double total = 0.0;
    for (int p = 0; p < space.num_profiles(); ++p) {
      w[p] = prior.mass(p) * proposal_probs[space.TypeOf(p, 0)][k];
      total += w[p];
    }
    if (total <= 0.0) continue;
    for (double& x : w) x /= total;
    const InformationStructure expected(prior.space_ptr(), std::move(w));
    if (expected.MaxAbsDiff(proposals[k].veq.prior) > kEqualityTol) {
      Fail(ErrorKind::kPrecondition, "proposal '" + proposals[k].label +
                                         "' continuation prior is not the "
                                         "Bayes update on the proposal");
    }
  }

  std::vector<Construction> comps;
  for (const Proposal& p : proposals) {
    comps.push_back(ConstructFullParticipation(p.veq, game, u, policy));
  }
  SignalChannel principal{0, {}, proposal_probs};
  for (const Proposal& p : proposals) principal.alphabet.push_back(p.label);

  for (int k = 0; k < nk; ++k) {
    const bool all = std::all_of(
        proposal_probs.begin(), proposal_probs.end(),
        [k](const std::vector<double>& row) { return row[k] == 1.0; });
    if (!all) continue;
    Construction& c = comps[k];
    Pooling out{.rule = c.rule,
                .device = c.device,
                .principal_channel = principal,
                .beliefs = UniformBeliefs(c.offpath, c.device.num_signals()),
                .components = {},
                .no_veto = c.no_veto,
                .outcome_deviation = 0.0,
                .collapsed = true};
    out.outcome_deviation = out.rule.MaxRowDistance(
        SeparatingOutcomeRule(prior, proposal_probs, proposals));
    out.components = std::move(comps);
    return out;
  }

  // Joint device: the proposal label drawn from the principal's row, then one
  // veto bit per other player drawn from that proposal's veto probabilities.
  const int np = space.num_players();
  const int nbits = np - 1;
  const int per_label = 1 << nbits;
  std::vector<Player> domain(np);
  for (Player i = 0; i < np; ++i) domain[i] = i;
  std::vector<std::string> alphabet;
  for (int k = 0; k < nk; ++k) {
    for (int b = 0; b < per_label; ++b) {
      std::string label = proposals[k].label;
      for (int j = 1; j < np; ++j) {
        label += (b >> (j - 1)) & 1 ? "|1" : "|0";
      }
      alphabet.push_back(std::move(label));
    }
  }
  std::vector<std::vector<double>> rows(space.num_profiles(),
                                        std::vector<double>(nk * per_label));
  for (int p = 0; p < space.num_profiles(); ++p) {
    for (int k = 0; k < nk; ++k) {
      const double pk = proposal_probs[space.TypeOf(p, 0)][k];
      for (int b = 0; b < per_label; ++b) {
        double pr = pk;
        for (int j = 1; j < np; ++j) {
          const double x = proposals[k].veq.xi[j][space.TypeOf(p, j)];
          pr *= (b >> (j - 1)) & 1 ? x : 1.0 - x;
        }
        rows[p][k * per_label + b] = pr;
      }
    }
  }
  SignalingDevice device(prior.space_ptr(), domain, std::move(alphabet),
                         std::move(rows));
  SignalBeliefs beliefs(np);
  for (Player i = 0; i < np; ++i) {
    for (int s = 0; s < device.num_signals(); ++s) {
      beliefs[i].push_back(comps[s / per_label].offpath[i]);
    }
  }
  std::vector<DecisionRule> rules;
  for (const Construction& c : comps) rules.push_back(c.rule);
  std::vector<std::vector<double>> weights(space.num_profiles());
  for (int p = 0; p < space.num_profiles(); ++p) {
    weights[p] = proposal_probs[space.TypeOf(p, 0)];
  }
  DecisionRule rule = MixDecisionRules(rules, weights);
  NoVetoReport no_veto =
      VerifyNoVeto(rule, device, game, u, beliefs, prior, policy);
  const double dev = rule.MaxRowDistance(
      SeparatingOutcomeRule(prior, proposal_probs, proposals));
  return Pooling{.rule = std::move(rule),
                 .device = std::move(device),
                 .principal_channel = std::move(principal),
                 .beliefs = std::move(beliefs),
                 .components = std::move(comps),
                 .no_veto = std::move(no_veto),
                 .outcome_deviation = dev,
                 .collapsed = false};
}

}  // namespace vetoshield
