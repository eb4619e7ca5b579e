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

#include "vetoshield/mechanism.h"

#include <algorithm>
#include <cmath>

#include "vetoshield/error.h"
#include "vetoshield/lp.h"
#include "vetoshield/punishment.h"

namespace vetoshield {
namespace {

bool HasBound(double b) { return b > kNoBound / 2; }

struct LpLayout {
  int num_profiles = 0;
  int num_outcomes = 0;
  int Var(int profile, int z) const { return profile * num_outcomes + z; }
  int num_rule_vars() const { return num_profiles * num_outcomes; }
};

// Adds sum_co c(co) sum_z G(theta, z) u_i(z, theta) to `row`, with theta
// spliced from `type` and the utility evaluated at the true type `true_type`.
void AddInterimTerms(const LpLayout& lay, const InformationStructure& prior,
                     const UtilityTable& u, Player i, int true_type,
                     int reported, double sign, std::vector<double>& row) {
  const TypeSpace& space = prior.space();
  const std::vector<double> cond = ConditionOnType(prior, i, true_type);
  for (int co = 0; co < space.num_coprofiles(i); ++co) {
    if (cond[co] == 0.0) continue;
    const int truth = space.Splice(i, true_type, co);
    const int shown = space.Splice(i, reported, co);
    for (int z = 0; z < lay.num_outcomes; ++z) {
      row[lay.Var(shown, z)] += sign * cond[co] * u(i, z, truth);
    }
  }
}

}  // namespace

double InterimUtility(const DecisionRule& rule, const InformationStructure& info,
                      const UtilityTable& u, Player player, int type) {
  return ExpectedUtility(rule, u, info, player, type, type);
}

IcReport CheckIc(const DecisionRule& rule, const InformationStructure& info,
                 const UtilityTable& u, double tol) {
  const TypeSpace& space = info.space();
  IcReport report;
  for (Player i = 0; i < space.num_players(); ++i) {
    const std::vector<double> marg = info.Marginal(i);
    for (int t = 0; t < space.num_types(i); ++t) {
      if (marg[t] <= 0.0) continue;
      const double truthful = ExpectedUtility(rule, u, info, i, t, t);
      for (int m = 0; m < space.num_types(i); ++m) {
        if (m == t) continue;
        const double gain = ExpectedUtility(rule, u, info, i, t, m) - truthful;
        if (gain > report.worst_violation) {
          report.worst_violation = gain;
          report.player = i;
          report.type = t;
          report.report = m;
        }
      }
    }
  }
  report.ok = report.worst_violation <= tol;
  return report;
}

MechanismSolution SolveOptimalMechanism(const MechanismLpSpec& spec,
                                        const InformationStructure& prior,
                                        const UtilityTable& u) {
  const TypeSpace& space = prior.space();
  RequireSameSpace(*spec.space, space, "SolveOptimalMechanism");
  const int nz = spec.outcomes.size();
  const LpLayout lay{space.num_profiles(), nz};
  if (static_cast<int>(spec.objective.size()) != lay.num_profiles) {
    Fail(ErrorKind::kDimension, "objective needs one row per profile");
  }
  for (const auto& row : spec.objective) {
    if (static_cast<int>(row.size()) != nz) {
      Fail(ErrorKind::kDimension, "objective row length != outcome count");
    }
  }
  if (u.num_outcomes() != nz || u.num_profiles() != lay.num_profiles ||
      u.num_players() != space.num_players()) {
    Fail(ErrorKind::kDimension, "utility table does not match the LP");
  }
  std::vector<std::vector<double>> bounds = spec.participation;
  bounds.resize(space.num_players());
  for (Player i = 0; i < space.num_players(); ++i) {
    bounds[i].resize(space.num_types(i), kNoBound);
    for (double b : bounds[i]) {
      if (!std::isfinite(b)) {
        Fail(ErrorKind::kPrecondition, "participation bounds must be finite");
      }
    }
  }

  // Builds the LP; with `relax`, one extra column delta enters every
  // participation row and the objective becomes min delta.
  struct Built {
    LinearProgram lp{0};
    std::vector<std::pair<Player, int>> part_rows;  // (player, type)
    int first_part_row = 0;
  };
  auto build = [&](bool relax) {
    const int nvars = lay.num_rule_vars() + (relax ? 1 : 0);
    Built b{LinearProgram(nvars), {}, 0};
    b.lp.objective.assign(nvars, 0.0);
    if (relax) {
      b.lp.objective[nvars - 1] = 1.0;
    } else {
      for (int p = 0; p < lay.num_profiles; ++p) {
        for (int z = 0; z < nz; ++z) {
          b.lp.objective[lay.Var(p, z)] =
              -prior.mass(p) * spec.objective[p][z];
        }
      }
    }
    for (int p = 0; p < lay.num_profiles; ++p) {
      LinearRow& row =
          b.lp.AddRow(RowSense::kEqual, 1.0, "simplex_" + std::to_string(p));
      for (int z = 0; z < nz; ++z) row.coeffs[lay.Var(p, z)] = 1.0;
    }
    for (Player i = 0; i < space.num_players(); ++i) {
      const std::vector<double> marg = prior.Marginal(i);
      for (int t = 0; t < space.num_types(i); ++t) {
        if (marg[t] <= 0.0 || !spec.impose_ic) continue;
        for (int m = 0; m < space.num_types(i); ++m) {
          if (m == t) continue;
          LinearRow& row = b.lp.AddRow(
              RowSense::kGreaterEqual, 0.0,
              "ic_" + std::to_string(i) + "_" + std::to_string(t) + "_" +
                  std::to_string(m));
          AddInterimTerms(lay, prior, u, i, t, t, 1.0, row.coeffs);
          AddInterimTerms(lay, prior, u, i, t, m, -1.0, row.coeffs);
        }
      }
    }
    b.first_part_row = static_cast<int>(b.lp.rows.size());
    for (Player i = 0; i < space.num_players(); ++i) {
      const std::vector<double> marg = prior.Marginal(i);
      for (int t = 0; t < space.num_types(i); ++t) {
        if (marg[t] <= 0.0 || !HasBound(bounds[i][t])) continue;
        LinearRow& row = b.lp.AddRow(
            RowSense::kGreaterEqual, bounds[i][t],
            "participation_" + std::to_string(i) + "_" + std::to_string(t));
        AddInterimTerms(lay, prior, u, i, t, t, 1.0, row.coeffs);
        if (relax) row.coeffs[nvars - 1] = 1.0;
        b.part_rows.emplace_back(i, t);
      }
    }
    return b;
  };

  MechanismSolution sol;
  sol.multipliers.resize(space.num_players());
  sol.participation_slack.resize(space.num_players());
  for (Player i = 0; i < space.num_players(); ++i) {
    sol.multipliers[i].assign(space.num_types(i), 0.0);
    sol.participation_slack[i].assign(space.num_types(i), 0.0);
  }

  Built main = build(false);
  LpSolution res = SolveLinearProgram(main.lp);
  sol.pivots = res.pivots;
  if (res.status == LpStatus::kUnbounded) {
    Fail(ErrorKind::kInternal, "mechanism LP cannot be unbounded");
  }
  sol.feasible = res.status == LpStatus::kOptimal;
  if (!sol.feasible) {
    Built relaxed = build(true);
    res = SolveLinearProgram(relaxed.lp);
    sol.pivots += res.pivots;
    if (res.status != LpStatus::kOptimal) {
      Fail(ErrorKind::kInternal, "relaxed mechanism LP failed");
    }
    sol.relaxation = res.x.back();
  }
  std::vector<double> probs(res.x.begin(),
                            res.x.begin() + lay.num_rule_vars());
  sol.rule = DecisionRule(lay.num_profiles, nz, std::move(probs));
  sol.value = 0.0;
  for (int p = 0; p < lay.num_profiles; ++p) {
    for (int z = 0; z < nz; ++z) {
      sol.value += prior.mass(p) * spec.objective[p][z] * sol.rule(p, z);
    }
  }
  for (size_t k = 0; k < main.part_rows.size(); ++k) {
    const auto [i, t] = main.part_rows[k];
    sol.participation_slack[i][t] =
        InterimUtility(sol.rule, prior, u, i, t) - bounds[i][t];
    if (sol.feasible) {
      sol.multipliers[i][t] =
          std::max(0.0, res.duals[main.first_part_row + k]);
      sol.complementary_slackness =
          std::max(sol.complementary_slackness,
                   std::abs(sol.multipliers[i][t] *
                            sol.participation_slack[i][t]));
    }
  }
  sol.ic_violation = CheckIc(sol.rule, prior, u).worst_violation;
  return sol;
}

PunishedMechanism SolveWithPunishment(MechanismLpSpec spec,
                                      const InformationStructure& prior,
                                      const UtilityTable& u,
                                      const DefaultGame& game, Player deviator,
                                      int grid_resolution, int max_iter,
                                      double damping) {
  const int ntypes = prior.space().num_types(deviator);
  PunishedMechanism out;
  out.alpha.assign(ntypes, 1.0 / ntypes);
  spec.participation.resize(prior.space().num_players());
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    out.bounds = PunishedParticipationBound(game, deviator, prior, out.alpha,
                                            grid_resolution);
    spec.participation[deviator] = out.bounds;
    out.solution = SolveOptimalMechanism(spec, prior, u);
    const std::vector<double>& mult = out.solution.multipliers[deviator];
    double total = 0.0;
    for (double m : mult) total += m;
    if (!out.solution.feasible || total <= 0.0) {
      out.converged = true;
      break;
    }
    double change = 0.0;
    for (int t = 0; t < ntypes; ++t) {
      const double next =
          damping * out.alpha[t] + (1.0 - damping) * mult[t] / total;
      change = std::max(change, std::abs(next - out.alpha[t]));
      out.alpha[t] = next;
    }
    if (change <= kEqualityTol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace vetoshield
