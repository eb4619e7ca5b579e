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

#include "vetoshield/opportunism.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vetoshield/error.h"
#include "vetoshield/punishment.h"

namespace vetoshield {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

InformationStructure PostVetoBase(const DesignerSpace& ds) {
  return PostVetoStructure(ds.base, {ds.deviator, DeviatorPrior(ds)});
}

}  // namespace

int NumDesignerTypes(const DesignerSpace& ds) {
  return ds.base.space().num_coprofiles(ds.deviator);
}

std::string DesignerTypeName(const DesignerSpace& ds, int coprofile) {
  const TypeSpace& space = ds.base.space();
  std::string name;
  const int prof = space.Splice(ds.deviator, 0, coprofile);
  for (Player j = 0; j < space.num_players(); ++j) {
    if (j == ds.deviator) continue;
    if (!name.empty()) name += ",";
    name += space.label(j, space.TypeOf(prof, j)).name;
  }
  return name;
}

double DesignerPayoff(const DesignerSpace& ds, int coprofile,
                      const InformationStructure& posterior) {
  const TypeSpace& space = posterior.space();
  const int prof = space.Splice(ds.deviator, 0, coprofile);
  double total = 0.0;
  for (Player j = 0; j < space.num_players(); ++j) {
    if (j == ds.deviator) continue;
    total += OutsideOptionValue(ds.game, posterior, j, space.TypeOf(prof, j),
                                ds.policy);
  }
  return total;
}

std::vector<double> DeviatorPrior(const DesignerSpace& ds) {
  return ds.base.Marginal(ds.deviator);
}

InformationStructure DesignerPosterior(const DesignerSpace& ds,
                                       const std::vector<double>& coblock) {
  const TypeSpace& space = ds.base.space();
  const std::vector<double> q = DeviatorPrior(ds);
  std::vector<double> mass(space.num_profiles());
  for (int p = 0; p < space.num_profiles(); ++p) {
    mass[p] = q[space.TypeOf(p, ds.deviator)] *
              coblock[space.CoProfileOf(p, ds.deviator)];
  }
  return InformationStructure(ds.base.space_ptr(), std::move(mass));
}

bool FirstOrderDominates(const TypeSpace& space, Player player,
                         const std::vector<double>& f,
                         const std::vector<double>& g, double tol) {
  const int n = space.num_types(player);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return space.label(player, a).index < space.label(player, b).index;
  });
  double tail_f = 0.0;
  double tail_g = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    tail_f += f[order[k]];
    tail_g += g[order[k]];
    if (tail_f < tail_g - tol) return false;
  }
  return true;
}

AlignmentReport CheckAligned(const DesignerSpace& ds, Player player) {
  const TypeSpace& space = ds.base.space();
  if (player == ds.deviator || player < 0 || player >= space.num_players()) {
    Fail(ErrorKind::kPrecondition,
         "alignment is checked on a participant's marginal");
  }
  AlignmentReport report;
  report.player = player;
  const int ncot = NumDesignerTypes(ds);
  const std::vector<double> comarg = ds.base.CoMarginal(ds.deviator);
  std::vector<std::vector<double>> marginals(space.num_players());
  for (Player j = 0; j < space.num_players(); ++j) {
    marginals[j] = ds.base.Marginal(j);
  }
  const auto grid =
      SimplexGrid(space.num_types(player), ds.fosd_resolution);
  // payoff[point][designer type]
  std::vector<std::vector<double>> payoff(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) {
    marginals[player] = grid[k];
    const InformationStructure info =
        InformationStructure::Product(ds.base.space_ptr(), marginals);
    payoff[k].assign(ncot, kNaN);
    for (int c = 0; c < ncot; ++c) {
      if (comarg[c] > 0.0) payoff[k][c] = DesignerPayoff(ds, c, info);
    }
  }
  for (size_t a = 0; a < grid.size(); ++a) {
    for (size_t b = 0; b < grid.size(); ++b) {
      if (a == b || !FirstOrderDominates(space, player, grid[a], grid[b])) {
        continue;
      }
      ++report.pairs_checked;
      int loser = -1;
      int keeper = -1;
      double gap = 0.0;
      for (int c = 0; c < ncot; ++c) {
        if (comarg[c] <= 0.0) continue;
        const double d = payoff[b][c] - payoff[a][c];
        if (d > kEqualityTol && loser < 0) {
          loser = c;
          gap = d;
        } else if (d <= kEqualityTol && keeper < 0) {
          keeper = c;
        }
      }
      if (loser >= 0) {
        report.aligned = false;
        report.witness = AlignmentWitness{keeper, loser, grid[a], grid[b], gap};
        return report;
      }
    }
  }
  return report;
}

std::vector<AlignmentReport> CheckAlignedAll(const DesignerSpace& ds) {
  std::vector<AlignmentReport> out;
  const TypeSpace& space = ds.base.space();
  for (Player j = 0; j < space.num_players(); ++j) {
    if (j == ds.deviator || space.num_types(j) < 2) continue;
    out.push_back(CheckAligned(ds, j));
  }
  return out;
}

PressureReport CheckUnravelingPressure(const SignalingDevice& device,
                                       const DesignerSpace& ds) {
  const TypeSpace& space = ds.base.space();
  RequireSameSpace(device.space(), space, "CheckUnravelingPressure");
  const Player i = ds.deviator;
  const int ncot = NumDesignerTypes(ds);
  const std::vector<double> comarg = ds.base.CoMarginal(i);
  const DeviatorBelief belief{i, DeviatorPrior(ds)};
  const InformationStructure base = PostVetoBase(ds);
  PressureReport report;
  report.pressured.assign(ncot, false);
  report.verify_value.assign(ncot, kNaN);
  report.lottery_value.assign(ncot, kNaN);
  for (int c = 0; c < ncot; ++c) {
    if (comarg[c] <= 0.0) continue;
    std::vector<double> point(ncot, 0.0);
    point[c] = 1.0;
    const double verify = DesignerPayoff(ds, c, DesignerPosterior(ds, point));
    double lottery = 0.0;
    for (int s = 0; s < device.num_signals(); ++s) {
      const double ps = device.LikelihoodIgnoring(s, space.Splice(i, 0, c), i);
      if (ps <= 0.0) continue;
      lottery += ps * DesignerPayoff(ds, c,
                                     UpdateOnSignal(base, device, s, belief));
    }
    report.verify_value[c] = verify;
    report.lottery_value[c] = lottery;
    report.pressured[c] = verify > lottery + kEqualityTol;
  }
  return report;
}

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kImmune: return "immune";
    case Verdict::kNotImmune: return "not_immune";
    case Verdict::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

ImmunityReport CheckImmunity(const SignalingDevice& device,
                             const DesignerSpace& ds) {
  ImmunityReport report;
  const auto& table = ds.base.table();
  report.full_support = std::all_of(table.begin(), table.end(),
                                    [](double m) { return m > 0.0; });
  report.alignment = CheckAlignedAll(ds);
  if (!report.full_support) {
    report.reason = "prior lacks full support";
    return report;
  }
  for (const AlignmentReport& a : report.alignment) {
    if (!a.aligned) {
      report.reason = "preferences misaligned on player " +
                      std::to_string(a.player);
      return report;
    }
  }
  report.pressure = CheckUnravelingPressure(device, ds);
  const auto& flags = report.pressure->pressured;
  const bool any = std::any_of(flags.begin(), flags.end(),
                               [](bool b) { return b; });
  report.verdict = any ? Verdict::kNotImmune : Verdict::kImmune;
  report.reason = any ? "a designer type faces unraveling pressure"
                      : "no designer type faces unraveling pressure";
  return report;
}

WeakImmunityReport CheckWeakImmunity(const SignalingDevice& device,
                                     const DesignerSpace& ds) {
  WeakImmunityReport report;
  const ImmunityReport pre = CheckImmunity(device, ds);
  if (!pre.full_support || pre.reason.rfind("preferences", 0) == 0) {
    report.reason = pre.reason;
    return report;
  }
  const Player i = ds.deviator;
  const int ncot = NumDesignerTypes(ds);
  const DeviatorBelief belief{i, DeviatorPrior(ds)};
  const InformationStructure base = PostVetoBase(ds);
  const int ns = device.num_signals();
  std::vector<std::optional<InformationStructure>> posts(ns);
  for (int s = 0; s < ns; ++s) {
    if (SignalProbability(base, device, s, belief) > 0.0) {
      posts[s] = UpdateOnSignal(base, device, s, belief);
    }
  }
  report.values.assign(ncot, std::vector<double>(ns, kNaN));
  std::vector<double> best(ncot, std::numeric_limits<double>::infinity());
  for (int c = 0; c < ncot; ++c) {
    for (int s = 0; s < ns; ++s) {
      if (!posts[s]) continue;
      report.values[c][s] = DesignerPayoff(ds, c, *posts[s]);
      best[c] = std::min(best[c], report.values[c][s]);
    }
  }
  for (int s = 0; s < ns; ++s) {
    if (!posts[s]) continue;
    bool common = true;
    for (int c = 0; c < ncot && common; ++c) {
      common = report.values[c][s] <= best[c] + kEqualityTol;
    }
    if (common) {
      report.worst_signal = s;
      report.verdict = Verdict::kImmune;
      report.reason = "concealment is met with the belief of realization " +
                      device.alphabet()[s];
      return report;
    }
  }
  report.reason = "no realization is worst for every designer type";
  return report;
}

}  // namespace vetoshield
