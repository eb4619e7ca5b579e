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

#include "support.h"

#include <algorithm>
#include <cmath>
#include <limits>

#ifndef VETOSHIELD_FIXTURE_DIR
#define VETOSHIELD_FIXTURE_DIR "data/fixtures"
#endif

namespace vetoshield::testing {

std::string FixturePath(const std::string& name) {
  return std::string(VETOSHIELD_FIXTURE_DIR) + "/" + name;
}

json LoadJson(const std::string& name) {
  return ReadJsonFile(FixturePath(name));
}

Model LoadFixture(const std::string& name) {
  return ParseModel(ReadJsonFile(FixturePath(name)));
}

double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<double> RandomSimplexPoint(Rng& rng, int dim) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> x(dim);
  double total = 0.0;
  for (double& v : x) total += (v = exp1(rng));
  for (double& v : x) v /= total;
  return x;
}

std::vector<int> Digits(int index, const std::vector<int>& radix) {
  std::vector<int> d(radix.size());
  for (int k = static_cast<int>(radix.size()) - 1; k >= 0; --k) {
    d[k] = index % radix[k];
    index /= radix[k];
  }
  return d;
}

int Index(const std::vector<int>& digits, const std::vector<int>& radix) {
  int index = 0;
  for (size_t k = 0; k < radix.size(); ++k) index = index * radix[k] + digits[k];
  return index;
}

std::vector<int> Radix(const TypeSpace& space) {
  std::vector<int> r;
  for (int p = 0; p < space.num_players(); ++p) r.push_back(space.num_types(p));
  return r;
}

double Interpolate(const std::vector<std::pair<double, double>>& pts,
                   double x) {
  for (size_t k = 1; k < pts.size(); ++k) {
    if (x <= pts[k].first) {
      const auto [x0, y0] = pts[k - 1];
      const auto [x1, y1] = pts[k];
      if (x1 == x0) return y1;
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
  }
  return pts.back().second;
}

double TwoPointMinimum(const std::vector<double>& xs,
                       const std::vector<double>& fx, double p) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < xs.size(); ++a) {
    if (std::abs(xs[a] - p) < 1e-15) best = std::min(best, fx[a]);
    for (size_t b = 0; b < xs.size(); ++b) {
      if (!(xs[a] < p && p < xs[b])) continue;
      const double w = (xs[b] - p) / (xs[b] - xs[a]);
      best = std::min(best, w * fx[a] + (1.0 - w) * fx[b]);
    }
  }
  return best;
}

std::vector<std::pair<double, double>> RandomPiecewiseLinear(Rng& rng) {
  const int interior = std::uniform_int_distribution<int>(0, 4)(rng);
  std::vector<double> xs = {0.0, 1.0};
  for (int k = 0; k < interior; ++k) xs.push_back(Uniform(rng));
  std::sort(xs.begin(), xs.end());
  std::vector<std::pair<double, double>> pts;
  for (double x : xs) pts.emplace_back(x, Uniform(rng));
  return pts;
}

double BestResponseGap(const StrategicBayesianGame& g,
                       const InformationStructure& info, const BNEProfile& b) {
  const std::vector<int> tr = Radix(*g.space);
  std::vector<int> ar;
  for (const auto& a : g.actions) ar.push_back(static_cast<int>(a.size()));
  const int n = static_cast<int>(tr.size());
  int num_action_profiles = 1;
  for (int r : ar) num_action_profiles *= r;

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < tr[i]; ++t) {
      std::vector<double> payoff(ar[i], 0.0);
      double mass = 0.0;
      for (int prof = 0; prof < g.space->num_profiles(); ++prof) {
        const std::vector<int> th = Digits(prof, tr);
        if (th[i] != t || info.mass(prof) == 0.0) continue;
        mass += info.mass(prof);
        for (int ap = 0; ap < num_action_profiles; ++ap) {
          const std::vector<int> acts = Digits(ap, ar);
          double w = info.mass(prof);
          for (int j = 0; j < n; ++j) {
            if (j != i) w *= b.strategy[j][th[j]][acts[j]];
          }
          if (w == 0.0) continue;
          double u = 0.0;
          for (int z = 0; z < g.outcomes.size(); ++z) {
            u += g.outcome_map[ap][z] * g.utilities(i, z, prof);
          }
          payoff[acts[i]] += w * u;
        }
      }
      if (mass == 0.0) continue;
      double current = 0.0;
      for (int a = 0; a < ar[i]; ++a) current += b.strategy[i][t][a] * payoff[a];
      const double best = *std::max_element(payoff.begin(), payoff.end());
      worst = std::max(worst, (best - current) / mass);
    }
  }
  return worst;
}

RandomInstance RandomStrategicInstance(Rng& rng) {
  auto space = std::make_shared<const TypeSpace>(TypeSpace::FromCounts({2, 2}));
  StrategicBayesianGame g;
  g.space = space;
  g.outcomes = OutcomeSpace::FromCount(2);
  g.actions = {{"A", "B"}, {"A", "B"}};
  for (int ap = 0; ap < 4; ++ap) {
    const double x = Uniform(rng);
    g.outcome_map.push_back({x, 1.0 - x});
  }
  g.utilities = UtilityTable(2, 2, space->num_profiles());
  for (int i = 0; i < 2; ++i) {
    for (int z = 0; z < 2; ++z) {
      for (int p = 0; p < space->num_profiles(); ++p) {
        g.utilities.at(i, z, p) = Uniform(rng);
      }
    }
  }
  std::vector<std::vector<double>> marg;
  for (int i = 0; i < 2; ++i) {
    const double a = Uniform(rng, 0.2, 0.8);
    marg.push_back({a, 1.0 - a});
  }
  InformationStructure prior = InformationStructure::Product(space, marg);
  DecisionRule rule(space->num_profiles(), 2);
  for (int p = 0; p < space->num_profiles(); ++p) {
    const double x = Uniform(rng);
    rule.at(p, 0) = x;
    rule.at(p, 1) = 1.0 - x;
  }
  return {std::move(g), std::move(prior), std::move(rule)};
}

double IcGap(const DecisionRule& rule, const InformationStructure& info,
             const UtilityTable& u) {
  const std::vector<int> tr = Radix(info.space());
  double worst = 0.0;
  for (size_t i = 0; i < tr.size(); ++i) {
    for (int t = 0; t < tr[i]; ++t) {
      std::vector<double> value(tr[i], 0.0);
      double mass = 0.0;
      for (int prof = 0; prof < info.space().num_profiles(); ++prof) {
        std::vector<int> th = Digits(prof, tr);
        if (th[i] != t) continue;
        const double w = info.mass(prof);
        mass += w;
        for (int r = 0; r < tr[i]; ++r) {
          th[i] = r;
          const int reported = Index(th, tr);
          for (int z = 0; z < u.num_outcomes(); ++z) {
            value[r] += w * rule(reported, z) * u(static_cast<int>(i), z, prof);
          }
        }
      }
      if (mass <= 0.0) continue;
      for (int r = 0; r < tr[i]; ++r) {
        worst = std::max(worst, (value[r] - value[t]) / mass);
      }
    }
  }
  return worst;
}

std::vector<std::vector<double>> VetoOutcome(const VetoEquilibrium& veq) {
  const TypeSpace& space = veq.prior.space();
  const std::vector<int> tr = Radix(space);
  const int n = space.num_players();
  const int nz = veq.acceptance_rule.num_outcomes();
  std::vector<std::vector<double>> out(space.num_profiles(),
                                       std::vector<double>(nz, 0.0));
  for (int prof = 0; prof < space.num_profiles(); ++prof) {
    if (veq.prior.mass(prof) <= 0.0) continue;
    const std::vector<int> th = Digits(prof, tr);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      double pv = 1.0;
      for (int i = 0; i < n; ++i) {
        const double x = veq.xi[i][th[i]];
        pv *= ((mask >> i) & 1u) ? x : 1.0 - x;
      }
      if (pv == 0.0) continue;
      const DecisionRule* rule = nullptr;
      if (mask == 0) {
        rule = &veq.acceptance_rule;
      } else {
        for (const VetoSet& s : veq.veto_sets) {
          if (s.mask == mask) rule = &s.rule;
        }
      }
      if (rule == nullptr) continue;
      for (int z = 0; z < nz; ++z) out[prof][z] += pv * (*rule)(prof, z);
    }
  }
  return out;
}

double MaxTv(const std::vector<std::vector<double>>& a, const DecisionRule& b,
             const InformationStructure& info) {
  double worst = 0.0;
  for (int p = 0; p < info.space().num_profiles(); ++p) {
    if (info.mass(p) <= 0.0) continue;
    double tv = 0.0;
    for (int z = 0; z < b.num_outcomes(); ++z) tv += std::abs(a[p][z] - b(p, z));
    worst = std::max(worst, 0.5 * tv);
  }
  return worst;
}

double PlausibilityGap(const PosteriorLottery& lottery,
                       const InformationStructure& base) {
  double worst = 0.0;
  for (int p = 0; p < base.space().num_profiles(); ++p) {
    double mix = 0.0;
    for (const PosteriorAtom& a : lottery.atoms) {
      mix += a.weight * a.posterior.mass(p);
    }
    worst = std::max(worst, std::abs(mix - base.mass(p)));
  }
  return worst;
}

std::vector<std::pair<double, std::vector<double>>> SplitByDevice(
    const InformationStructure& base, const SignalingDevice& device) {
  const std::vector<int> tr = Radix(base.space());
  std::vector<int> dr;
  for (Player p : device.domain()) dr.push_back(tr[p]);
  std::vector<std::pair<double, std::vector<double>>> out;
  for (int s = 0; s < device.num_signals(); ++s) {
    std::vector<double> post(base.space().num_profiles(), 0.0);
    double total = 0.0;
    for (int prof = 0; prof < base.space().num_profiles(); ++prof) {
      const std::vector<int> th = Digits(prof, tr);
      std::vector<int> sub;
      for (Player p : device.domain()) sub.push_back(th[p]);
      const double like = device.rows()[Index(sub, dr)][s];
      post[prof] = base.mass(prof) * like;
      total += post[prof];
    }
    if (total <= 0.0) continue;
    for (double& x : post) x /= total;
    out.emplace_back(total, std::move(post));
  }
  return out;
}

SignalingDevice RandomDevice(Rng& rng, std::shared_ptr<const TypeSpace> space,
                             int num_signals) {
  std::vector<Player> domain;
  while (domain.empty()) {
    for (Player p = 0; p < space->num_players(); ++p) {
      if (Uniform(rng) < 0.6) domain.push_back(p);
    }
  }
  int rows = 1;
  for (Player p : domain) rows *= space->num_types(p);
  std::vector<std::string> alphabet;
  for (int s = 0; s < num_signals; ++s) alphabet.push_back("s" + std::to_string(s));
  std::vector<std::vector<double>> kernel;
  for (int r = 0; r < rows; ++r) {
    // Occasionally zero out a signal to exercise impossible realizations.
    std::vector<double> row = RandomSimplexPoint(rng, num_signals);
    if (num_signals > 2 && Uniform(rng) < 0.2) {
      row[0] = 0.0;
      double t = 0.0;
      for (double x : row) t += x;
      for (double& x : row) x /= t;
    }
    kernel.push_back(row);
  }
  return SignalingDevice(space, std::move(domain), std::move(alphabet),
                         std::move(kernel));
}

double OpacityGap(const InformationStructure& info, Player deviator,
                  const std::vector<double>& q) {
  const std::vector<int> tr = Radix(info.space());
  std::vector<int> cr;
  for (size_t p = 0; p < tr.size(); ++p) {
    if (static_cast<int>(p) != deviator) cr.push_back(tr[p]);
  }
  auto co_index = [&](const std::vector<int>& th) {
    std::vector<int> d;
    for (size_t p = 0; p < th.size(); ++p) {
      if (static_cast<int>(p) != deviator) d.push_back(th[p]);
    }
    return Index(d, cr);
  };
  int nc = 1;
  for (int r : cr) nc *= r;
  std::vector<double> m(nc, 0.0);
  for (int prof = 0; prof < info.space().num_profiles(); ++prof) {
    m[co_index(Digits(prof, tr))] += info.mass(prof);
  }
  double worst = 0.0;
  for (int prof = 0; prof < info.space().num_profiles(); ++prof) {
    const std::vector<int> th = Digits(prof, tr);
    const double expect = q[th[deviator]] * m[co_index(th)];
    worst = std::max(worst, std::abs(info.mass(prof) - expect));
  }
  return worst;
}

}  // namespace vetoshield::testing
