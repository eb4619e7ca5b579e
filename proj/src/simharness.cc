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

#include "vetoshield/simharness.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "vetoshield/error.h"
#include "vetoshield/punishment.h"

namespace vetoshield {
namespace {

using Key = std::vector<long long>;

Key TableKey(const std::vector<double>& t) {
  Key k(t.size());
  for (size_t i = 0; i < t.size(); ++i) k[i] = std::llround(t[i] * 1e12);
  return k;
}

// Advances a mixed-radix counter; false once it wraps around.
bool Advance(std::vector<int>& digits, const std::vector<int>& radix) {
  for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
    if (++digits[k] < radix[k]) return true;
    digits[k] = 0;
  }
  return false;
}

class Harness {
 public:
  explicit Harness(const GrandGameInstance& inst)
      : inst_(inst), space_(inst.prior.space()) {
    const auto* sg = std::get_if<StrategicBayesianGame>(&inst.game);
    strategic_ = sg != nullptr;
    if (strategic_ && (sg->outcomes.size() != inst.outcomes.size() ||
                       inst.utilities.num_outcomes() != inst.outcomes.size())) {
      Fail(ErrorKind::kDimension,
           "strategic default game and mechanism must share outcomes");
    }
    RequireSameSpace(GameSpace(inst.game), space_, "grand game");
    RequireSameSpace(inst.device.space(), space_, "grand game device");
    if (inst.rule.num_profiles() != space_.num_profiles() ||
        inst.rule.num_outcomes() != inst.outcomes.size()) {
      Fail(ErrorKind::kDimension, "proposed rule has the wrong shape");
    }
    if (inst.grid < 2 || inst.belief_resolution < 1) {
      Fail(ErrorKind::kPrecondition, "strategy grid needs G >= 2");
    }
  }

  Evaluation Evaluate(const std::vector<std::vector<double>>& xi,
                      const std::vector<std::vector<double>>& offpath);

 private:
  const DecisionRule& RuleAt(const InformationStructure& j) {
    Key key = TableKey(j.table());
    auto it = rules_.find(key);
    if (it != rules_.end()) return it->second;
    const auto& game = std::get<StrategicBayesianGame>(inst_.game);
    return rules_.emplace(std::move(key), SolveDefault(game, j, inst_.policy).rule)
        .first->second;
  }

  double ValueAt(const InformationStructure& j, Player i, int type) {
    Key key = TableKey(j.table());
    auto it = values_.find(key);
    if (it == values_.end()) {
      std::vector<std::vector<double>> v(space_.num_players());
      for (Player p = 0; p < space_.num_players(); ++p) {
        v[p] = OutsideOptionValues(inst_.game, j, p, inst_.policy);
      }
      it = values_.emplace(std::move(key), std::move(v)).first;
    }
    return it->second[i][type];
  }

  // Structure after veto set `mask`, before the signal, and the players
  // whose device channels are disregarded.
  std::pair<InformationStructure, VetoMask> VetoPosterior(
      VetoMask mask, const std::vector<std::vector<double>>& xi,
      const std::vector<std::vector<double>>& offpath) const;

  // Bayes update on a signal with the channels in `ignore` averaged out.
  std::optional<InformationStructure> Update(const InformationStructure& j,
                                             int signal,
                                             VetoMask ignore) const;

  int Erase(int profile, VetoMask players) const {
    for (Player p = 0; p < space_.num_players(); ++p) {
      if ((players >> p) & 1u) profile = space_.WithType(profile, p, 0);
    }
    return profile;
  }

  const GrandGameInstance& inst_;
  const TypeSpace& space_;
  bool strategic_ = false;
  std::map<Key, DecisionRule> rules_;
  std::map<Key, std::vector<std::vector<double>>> values_;
};

std::pair<InformationStructure, VetoMask> Harness::VetoPosterior(
    VetoMask mask, const std::vector<std::vector<double>>& xi,
    const std::vector<std::vector<double>>& offpath) const {
  const int np = space_.num_profiles();
  const int n = space_.num_players();
  std::vector<double> w(np);
  double total = 0.0;
  for (int p = 0; p < np; ++p) {
    w[p] = inst_.prior.mass(p) * VetoSetProbability(xi, space_, mask, p);
    total += w[p];
  }
  if (total > 0.0) {
    for (double& x : w) x /= total;
    return {InformationStructure(inst_.prior.space_ptr(), std::move(w)), 0};
  }
  // Off path: players in the set who never veto get their off-path belief.
  VetoMask dmask = 0;
  for (Player j = 0; j < n; ++j) {
    if (!((mask >> j) & 1u)) continue;
    const std::vector<double> marg = inst_.prior.Marginal(j);
    double vm = 0.0;
    for (size_t t = 0; t < marg.size(); ++t) vm += marg[t] * xi[j][t];
    if (vm <= 0.0) dmask |= VetoMask{1} << j;
  }
  if (dmask == 0) dmask = mask;
  auto block = [&](VetoMask d) {
    std::map<int, double> sums;
    double tot = 0.0;
    for (int p = 0; p < np; ++p) {
      double x = inst_.prior.mass(p);
      for (Player j = 0; j < n; ++j) {
        if ((d >> j) & 1u) continue;
        const double v = xi[j][space_.TypeOf(p, j)];
        x *= (mask >> j) & 1u ? v : 1.0 - v;
      }
      sums[Erase(p, d)] += x;
      tot += x;
    }
    return std::make_pair(std::move(sums), tot);
  };
  auto [sums, tot] = block(dmask);
  if (tot <= 0.0) {
    dmask = (VetoMask{1} << n) - 1;
    std::tie(sums, tot) = block(dmask);
  }
  std::vector<double> mass(np);
  for (int p = 0; p < np; ++p) {
    double x = sums[Erase(p, dmask)] / tot;
    for (Player j = 0; j < n; ++j) {
      if ((dmask >> j) & 1u) x *= offpath[j][space_.TypeOf(p, j)];
    }
    mass[p] = x;
  }
  return {InformationStructure(inst_.prior.space_ptr(), std::move(mass)),
          dmask};
}

std::optional<InformationStructure> Harness::Update(
    const InformationStructure& j, int signal, VetoMask ignore) const {
  const int np = space_.num_profiles();
  const SignalingDevice& dev = inst_.device;
  std::map<int, std::pair<double, int>> avg;  // erased profile -> (sum, count)
  if (ignore != 0) {
    for (int p = 0; p < np; ++p) {
      auto& e = avg[Erase(p, ignore)];
      e.first += dev.Likelihood(signal, p);
      e.second += 1;
    }
  }
  std::vector<double> w(np);
  double total = 0.0;
  for (int p = 0; p < np; ++p) {
    double like = dev.Likelihood(signal, p);
    if (ignore != 0) {
      const auto& e = avg.at(Erase(p, ignore));
      like = e.first / e.second;
    }
    w[p] = j.mass(p) * like;
    total += w[p];
  }
  if (total <= 0.0) return std::nullopt;
  for (double& x : w) x /= total;
  return InformationStructure(j.space_ptr(), std::move(w));
}

Evaluation Harness::Evaluate(const std::vector<std::vector<double>>& xi,
                             const std::vector<std::vector<double>>& offpath) {
  const int n = space_.num_players();
  const int np = space_.num_profiles();
  const int nz = inst_.outcomes.size();
  const int ns = inst_.device.num_signals();
  const VetoMask all = (VetoMask{1} << n) - 1;
  const UtilityTable& u = inst_.utilities;
  Evaluation ev;

  // cont[mask][profile][player]
  std::vector<std::vector<std::vector<double>>> cont(
      all + 1, std::vector<std::vector<double>>(np, std::vector<double>(n)));
  ev.continuation.assign(all + 1, DecisionRule(np, nz));
  for (VetoMask mask = 1; mask <= all; ++mask) {
    auto [base, ignore] = VetoPosterior(mask, xi, offpath);
    std::vector<std::optional<InformationStructure>> post(ns);
    for (int s = 0; s < ns; ++s) {
      post[s] = Update(base, s, ignore);
      if (!post[s]) post[s] = Update(base, s, ignore | mask);
      if (!post[s]) post[s] = base;
    }
    DecisionRule& crule = ev.continuation[mask];
    for (int p = 0; p < np; ++p) {
      for (int s = 0; s < ns; ++s) {
        const double ls = inst_.device.Likelihood(s, p);
        if (ls <= 0.0) continue;
        if (strategic_) {
          const DecisionRule& r = RuleAt(*post[s]);
          for (int z = 0; z < nz; ++z) crule.at(p, z) += ls * r(p, z);
          for (Player i = 0; i < n; ++i) {
            double v = 0.0;
            for (int z = 0; z < nz; ++z) v += r(p, z) * u(i, z, p);
            cont[mask][p][i] += ls * v;
          }
        } else {
          for (Player i = 0; i < n; ++i) {
            cont[mask][p][i] += ls * ValueAt(*post[s], i, space_.TypeOf(p, i));
          }
        }
      }
      if (!strategic_) {
        for (int z = 0; z < nz; ++z) crule.at(p, z) = 1.0 / nz;
      }
    }
  }

  // Report stage after unanimous acceptance.
  std::vector<double> wa(np);
  double ta = 0.0;
  for (int p = 0; p < np; ++p) {
    wa[p] = inst_.prior.mass(p) * VetoSetProbability(xi, space_, 0, p);
    ta += wa[p];
  }
  // strategy[player][type][report]
  std::vector<std::vector<std::vector<double>>> strat(n);
  for (Player i = 0; i < n; ++i) {
    const int nt = space_.num_types(i);
    strat[i].assign(nt, std::vector<double>(nt, 0.0));
    for (int t = 0; t < nt; ++t) strat[i][t][t] = 1.0;
  }
  if (ta > 0.0) {
    for (double& x : wa) x /= ta;
    const InformationStructure ia(inst_.prior.space_ptr(), wa);
    if (!CheckIc(inst_.rule, ia, u, inst_.epsilon).ok) {
      StrategicBayesianGame report{inst_.prior.space_ptr(), inst_.outcomes,
                                   {}, {}, u};
      for (Player i = 0; i < n; ++i) {
        std::vector<std::string> acts;
        for (int t = 0; t < space_.num_types(i); ++t) {
          acts.push_back(space_.label(i, t).name);
        }
        report.actions.push_back(std::move(acts));
      }
      for (int p = 0; p < np; ++p) {
        auto row = inst_.rule.Row(p);
        report.outcome_map.emplace_back(row.begin(), row.end());
      }
      strat = SolveBne(report, ia, SelectionPolicy::Lexicographic()).strategy;
    }
  }
  // Distribution over reported profiles given the true one.
  auto reports = [&](int prof, Player skip, int fixed) {
    std::vector<std::pair<int, double>> out{{0, 1.0}};
    std::vector<int> types = space_.Decode(prof);
    std::vector<std::pair<std::vector<int>, double>> acc{{{}, 1.0}};
    for (Player j = 0; j < n; ++j) {
      std::vector<std::pair<std::vector<int>, double>> next;
      for (auto& [partial, w] : acc) {
        if (j == skip) {
          auto ext = partial;
          ext.push_back(fixed);
          next.emplace_back(std::move(ext), w);
          continue;
        }
        const auto& row = strat[j][types[j]];
        for (int m = 0; m < static_cast<int>(row.size()); ++m) {
          if (row[m] <= 0.0) continue;
          auto ext = partial;
          ext.push_back(m);
          next.emplace_back(std::move(ext), w * row[m]);
        }
      }
      acc = std::move(next);
    }
    out.clear();
    for (auto& [v, w] : acc) out.emplace_back(space_.Encode(v), w);
    return out;
  };
  ev.acceptance_rule = DecisionRule(np, nz);
  for (int p = 0; p < np; ++p) {
    for (auto [m, w] : reports(p, -1, 0)) {
      for (int z = 0; z < nz; ++z) {
        ev.acceptance_rule.at(p, z) += w * inst_.rule(m, z);
      }
    }
  }

  ev.slack = std::numeric_limits<double>::infinity();
  ev.veto_value.resize(n);
  ev.accept_value.resize(n);
  for (Player i = 0; i < n; ++i) {
    const std::vector<double> marg = inst_.prior.Marginal(i);
    const int nt = space_.num_types(i);
    ev.veto_value[i].assign(nt, std::numeric_limits<double>::quiet_NaN());
    ev.accept_value[i].assign(nt, std::numeric_limits<double>::quiet_NaN());
    const VetoMask me = VetoMask{1} << i;
    for (int t = 0; t < nt; ++t) {
      if (marg[t] <= 0.0) continue;
      const std::vector<double> cond = ConditionOnType(inst_.prior, i, t);
      double veto = 0.0;
      double accept_cont = 0.0;
      std::vector<double> report_value(nt, 0.0);
      for (int co = 0; co < space_.num_coprofiles(i); ++co) {
        if (cond[co] <= 0.0) continue;
        const int p = space_.Splice(i, t, co);
        for (VetoMask w = 0; w <= all; ++w) {
          if (w & me) continue;
          // Probability that exactly the others in w veto.
          double others = 1.0;
          for (Player j = 0; j < n; ++j) {
            if (j == i) continue;
            const double x = xi[j][space_.TypeOf(p, j)];
            others *= (w >> j) & 1u ? x : 1.0 - x;
          }
          if (others <= 0.0) continue;
          veto += cond[co] * others * cont[w | me][p][i];
          if (w != 0) {
            accept_cont += cond[co] * others * cont[w][p][i];
          } else {
            for (int m = 0; m < nt; ++m) {
              double r = 0.0;
              for (auto [rep, wr] : reports(p, i, m)) {
                for (int z = 0; z < nz; ++z) {
                  r += wr * inst_.rule(rep, z) * u(i, z, p);
                }
              }
              report_value[m] += cond[co] * others * r;
            }
          }
        }
      }
      const double accept =
          accept_cont +
          *std::max_element(report_value.begin(), report_value.end());
      ev.veto_value[i][t] = veto;
      ev.accept_value[i][t] = accept;
      const double x = xi[i][t];
      const double margin = x == 0.0   ? accept - veto
                            : x == 1.0 ? veto - accept
                                       : -std::abs(accept - veto);
      ev.slack = std::min(ev.slack, margin);
    }
  }
  ev.equilibrium = ev.slack >= -inst_.epsilon;
  return ev;
}

std::vector<double> VetoWeightedMarginal(const InformationStructure& prior,
                                         const std::vector<double>& xi,
                                         Player i) {
  std::vector<double> m = prior.Marginal(i);
  double total = 0.0;
  for (size_t t = 0; t < m.size(); ++t) {
    m[t] *= xi[t];
    total += m[t];
  }
  if (total <= 0.0) return {};
  for (double& x : m) x /= total;
  return m;
}

VetoEquilibrium Assemble(const GrandGameInstance& inst,
                         const std::vector<std::vector<double>>& xi,
                         const std::vector<std::vector<double>>& offpath,
                         const Evaluation& ev) {
  VetoDistribution dist =
      ComputeVetoDistribution(inst.prior, xi, inst.outcomes.size());
  for (VetoSet& set : dist.sets) set.rule = ev.continuation[set.mask];
  VetoEquilibrium veq{.prior = inst.prior,
                      .xi = xi,
                      .veto_sets = std::move(dist.sets),
                      .acceptance = std::move(dist.acceptance),
                      .acceptance_rule = ev.acceptance_rule,
                      .offpath = offpath,
                      .slack = ev.slack,
                      .marginal = ev.slack < 10.0 * inst.epsilon};
  return veq;
}

}  // namespace

GrandGameInstance StrategicInstance(const StrategicBayesianGame& game,
                                    const InformationStructure& prior,
                                    const DecisionRule& rule) {
  return GrandGameInstance{.game = game,
                           .outcomes = game.outcomes,
                           .utilities = game.utilities,
                           .prior = prior,
                           .rule = rule,
                           .device = SignalingDevice::Babbling(prior.space_ptr()),
                           .grid = 10,
                           .belief_resolution = 20,
                           .epsilon = kPbeTol,
                           .cap = 1e7,
                           .policy = SelectionPolicy::Lexicographic(),
                           .max_results = -1};
}

Evaluation EvaluateProfile(const GrandGameInstance& inst,
                           const std::vector<std::vector<double>>& xi,
                           const std::vector<std::vector<double>>& offpath) {
  Harness h(inst);
  return h.Evaluate(xi, offpath);
}

std::vector<VetoEquilibrium> EnumerateVetoEquilibria(
    const GrandGameInstance& inst) {
  Harness h(inst);
  const TypeSpace& space = inst.prior.space();
  const int n = space.num_players();
  std::vector<std::pair<Player, int>> agents;
  std::vector<std::vector<std::vector<double>>> qgrid(n);
  double product = 1.0;
  for (Player i = 0; i < n; ++i) {
    const std::vector<double> marg = inst.prior.Marginal(i);
    for (int t = 0; t < space.num_types(i); ++t) {
      if (marg[t] > 0.0) agents.emplace_back(i, t);
    }
    qgrid[i] = SimplexGrid(space.num_types(i), inst.belief_resolution);
    product *= static_cast<double>(qgrid[i].size());
  }
  product *= std::pow(inst.grid + 1.0, static_cast<double>(agents.size()));
  if (product > inst.cap) {
    Fail(ErrorKind::kInstanceTooLarge,
         "grid product " + std::to_string(product) + " exceeds the cap");
  }

  std::vector<VetoEquilibrium> found;
  std::vector<int> digits(agents.size(), 0);
  const std::vector<int> radix(agents.size(), inst.grid + 1);
  do {
    std::vector<std::vector<double>> xi(n);
    for (Player i = 0; i < n; ++i) xi[i].assign(space.num_types(i), 0.0);
    for (size_t a = 0; a < agents.size(); ++a) {
      xi[agents[a].first][agents[a].second] =
          static_cast<double>(digits[a]) / inst.grid;
    }
    std::vector<std::vector<double>> offpath(n);
    std::vector<Player> free;
    for (Player i = 0; i < n; ++i) {
      offpath[i] = VetoWeightedMarginal(inst.prior, xi[i], i);
      if (offpath[i].empty()) free.push_back(i);
    }
    std::vector<int> qd(free.size(), 0);
    std::vector<int> qr;
    for (Player i : free) qr.push_back(static_cast<int>(qgrid[i].size()));
    do {
      for (size_t k = 0; k < free.size(); ++k) {
        offpath[free[k]] = qgrid[free[k]][qd[k]];
      }
      const Evaluation ev = h.Evaluate(xi, offpath);
      if (ev.equilibrium) {
        found.push_back(Assemble(inst, xi, offpath, ev));
        break;
      }
    } while (Advance(qd, qr));
    if (inst.max_results >= 0 &&
        static_cast<long>(found.size()) >= inst.max_results) {
      break;
    }
  } while (Advance(digits, radix));
  return found;
}

ReplicationReport ReplicateCheck(const VetoEquilibrium& veq,
                                 const GrandGameInstance& inst) {
  ReplicationReport report;
  Construction c = ConstructFullParticipation(veq, inst.game, inst.utilities,
                                              inst.policy);
  GrandGameInstance full{.game = inst.game,
                         .outcomes = inst.outcomes,
                         .utilities = inst.utilities,
                         .prior = veq.prior,
                         .rule = c.rule,
                         .device = c.device,
                         .grid = inst.grid,
                         .belief_resolution = inst.belief_resolution,
                         .epsilon = inst.epsilon,
                         .cap = inst.cap,
                         .policy = inst.policy,
                         .max_results = inst.max_results};
  Harness h(full);
  const TypeSpace& space = veq.prior.space();
  const int n = space.num_players();
  std::vector<std::vector<double>> xi(n);
  for (Player i = 0; i < n; ++i) xi[i].assign(space.num_types(i), 0.0);
  const DecisionRule target = VetoOutcomeRule(veq);

  std::vector<std::vector<std::vector<double>>> qgrid(n);
  std::vector<int> qr(n);
  for (Player i = 0; i < n; ++i) {
    qgrid[i] = SimplexGrid(space.num_types(i), inst.belief_resolution);
    qr[i] = static_cast<int>(qgrid[i].size());
  }
  std::vector<int> qd(n, 0);
  bool first = true;
  while (true) {
    std::vector<std::vector<double>> q = c.offpath;
    if (!first) {
      for (Player i = 0; i < n; ++i) q[i] = qgrid[i][qd[i]];
    }
    ++report.beliefs_tried;
    const Evaluation ev = h.Evaluate(xi, q);
    if (ev.equilibrium) {
      double dev = 0.0;
      for (int p = 0; p < space.num_profiles(); ++p) {
        if (veq.prior.mass(p) <= 0.0) continue;
        double tv = 0.0;
        for (int z = 0; z < target.num_outcomes(); ++z) {
          tv += std::abs(ev.acceptance_rule(p, z) - target(p, z));
        }
        dev = std::max(dev, 0.5 * tv);
      }
      report.max_deviation = dev;
      report.slack = ev.slack;
      report.offpath = q;
      report.replicated = dev <= 1.0 / inst.grid + kPbeTol;
      break;
    }
    if (!first && !Advance(qd, qr)) break;
    if (report.beliefs_tried > inst.cap) break;
    first = false;
  }
  report.construction = std::move(c);
  return report;
}

SignalingDevice DesignerDevice(const DesignerSpace& ds,
                               const std::vector<double>& ones) {
  const TypeSpace& space = ds.base.space();
  std::vector<std::vector<double>> rows;
  for (double a : ones) rows.push_back({1.0 - a, a});
  return SignalingDevice(ds.base.space_ptr(), space.Others(ds.deviator),
                         {"0", "1"}, std::move(rows));
}

DesignerDeviceReport EnumerateDesignerDevices(const DesignerSpace& ds,
                                              int grid, int belief_resolution,
                                              double epsilon) {
  if (grid < 2) Fail(ErrorKind::kPrecondition, "device grid needs G >= 2");
  const Player i = ds.deviator;
  const int nc = NumDesignerTypes(ds);
  const std::vector<double> comarg = ds.base.CoMarginal(i);
  const DeviatorBelief belief{i, DeviatorPrior(ds)};
  const InformationStructure base =
      PostVetoStructure(ds.base, belief);
  if (std::pow(grid + 1.0, nc) > 1e4) {
    Fail(ErrorKind::kInstanceTooLarge, "too many designer devices");
  }

  // Payoff of each designer type at every grid belief over designer types.
  const auto beliefs = SimplexGrid(nc, belief_resolution);
  std::vector<std::vector<double>> at(beliefs.size(), std::vector<double>(nc));
  for (size_t b = 0; b < beliefs.size(); ++b) {
    const InformationStructure post = DesignerPosterior(ds, beliefs[b]);
    for (int c = 0; c < nc; ++c) at[b][c] = DesignerPayoff(ds, c, post);
  }

  std::vector<std::vector<double>> kernels;
  {
    std::vector<int> d(nc, 0);
    const std::vector<int> r(nc, grid + 1);
    do {
      std::vector<double> k(nc);
      for (int c = 0; c < nc; ++c) k[c] = static_cast<double>(d[c]) / grid;
      kernels.push_back(std::move(k));
    } while (Advance(d, r));
  }
  auto sig_prob = [](const std::vector<double>& k, int c, int s) {
    return s == 1 ? k[c] : 1.0 - k[c];
  };

  DesignerDeviceReport report;
  for (const auto& cand : kernels) {
    ++report.devices_checked;
    const SignalingDevice dev = DesignerDevice(ds, cand);
    std::vector<double> eq(nc, 0.0);
    for (int s = 0; s < 2; ++s) {
      if (SignalProbability(base, dev, s, belief) <= 0.0) continue;
      const InformationStructure post = UpdateOnSignal(base, dev, s, belief);
      for (int c = 0; c < nc; ++c) {
        const double ps = sig_prob(cand, c, s);
        if (ps > 0.0) eq[c] += ps * DesignerPayoff(ds, c, post);
      }
    }
    bool survives = true;
    for (const auto& alt : kernels) {
      if (alt == cand) continue;
      // Grid beliefs allowed after each realization of the deviation.
      std::vector<std::vector<int>> allowed(2);
      for (int s = 0; s < 2; ++s) {
        for (size_t b = 0; b < beliefs.size(); ++b) {
          bool ok = true;
          for (int c = 0; c < nc && ok; ++c) {
            ok = beliefs[b][c] <= 0.0 || sig_prob(alt, c, s) > 0.0;
          }
          if (ok) allowed[s].push_back(static_cast<int>(b));
        }
        if (allowed[s].empty()) allowed[s].push_back(0);  // never realized
      }
      bool deterred = false;
      for (int b0 : allowed[0]) {
        for (int b1 : allowed[1]) {
          bool all_worse = true;
          for (int c = 0; c < nc && all_worse; ++c) {
            if (comarg[c] <= 0.0) continue;
            const double v = sig_prob(alt, c, 0) * at[b0][c] +
                             sig_prob(alt, c, 1) * at[b1][c];
            all_worse = v <= eq[c] + epsilon;
          }
          if (all_worse) {
            deterred = true;
            break;
          }
        }
        if (deterred) break;
      }
      if (!deterred) {
        survives = false;
        break;
      }
    }
    if (survives) report.survivors.push_back(cand);
  }
  report.only_babbling =
      !report.survivors.empty() &&
      std::all_of(report.survivors.begin(), report.survivors.end(),
                  [](const std::vector<double>& k) {
                    return std::all_of(k.begin(), k.end(), [&](double x) {
                      return std::abs(x - k.front()) <= kNormalizationTol;
                    });
                  });
  return report;
}

}  // namespace vetoshield
