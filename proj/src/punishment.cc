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

#include "vetoshield/punishment.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "vetoshield/error.h"
#include "vetoshield/lp.h"

namespace vetoshield {
namespace {

constexpr long kMaxGridPoints = 500'000;

void CheckDistribution(const std::vector<double>& v, int expected_size,
                       const char* what) {
  if (static_cast<int>(v.size()) != expected_size) {
    Fail(ErrorKind::kDimension, std::string(what) + " has wrong length");
  }
  double s = 0.0;
  for (double x : v) {
    if (x < 0.0 || !std::isfinite(x)) {
      Fail(ErrorKind::kInvalidWeights, std::string(what) + " has bad entry");
    }
    s += x;
  }
  if (std::abs(s - 1.0) > kNormalizationTol) {
    Fail(ErrorKind::kInvalidWeights, std::string(what) + " does not sum to 1");
  }
}

long Binomial(int n, int k) {
  long r = 1;
  for (int j = 1; j <= k; ++j) {
    r = r * (n - k + j) / j;
    if (r > kMaxGridPoints) return r;
  }
  return r;
}

void ComposeGrid(int dim, int remaining, std::vector<int>& counts, int pos,
                 int resolution, std::vector<std::vector<double>>& out) {
  if (pos == dim - 1) {
    counts[pos] = remaining;
    std::vector<double> pt(dim);
    for (int c = 0; c < dim; ++c) {
      pt[c] = static_cast<double>(counts[c]) / resolution;
    }
    out.push_back(std::move(pt));
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    counts[pos] = k;
    ComposeGrid(dim, remaining - k, counts, pos + 1, resolution, out);
  }
}

InformationStructure Paste(const InformationStructure& like, Player deviator,
                           const std::vector<double>& q,
                           const std::vector<double>& coblock) {
  const TypeSpace& space = like.space();
  std::vector<double> mass(space.num_profiles());
  for (int prof = 0; prof < space.num_profiles(); ++prof) {
    mass[prof] = q[space.TypeOf(prof, deviator)] *
                 coblock[space.CoProfileOf(prof, deviator)];
  }
  return InformationStructure(like.space_ptr(), std::move(mass));
}

}  // namespace

std::vector<std::vector<double>> SimplexGrid(int dim, int resolution) {
  if (dim < 1 || resolution < 1) {
    Fail(ErrorKind::kPrecondition, "grid needs dim >= 1 and resolution >= 1");
  }
  if (Binomial(resolution + dim - 1, dim - 1) > kMaxGridPoints) {
    Fail(ErrorKind::kInstanceTooLarge, "posterior grid too large");
  }
  std::vector<std::vector<double>> out;
  std::vector<int> counts(dim, 0);
  ComposeGrid(dim, resolution, counts, 0, resolution, out);
  return out;
}

std::vector<double> ReduceSupport(const std::vector<std::vector<double>>& pts,
                                  std::vector<double> weights) {
  if (pts.empty()) return weights;
  const int d = static_cast<int>(pts[0].size());
  while (true) {
    std::vector<int> live;
    for (size_t k = 0; k < weights.size(); ++k) {
      if (weights[k] > 0.0) live.push_back(static_cast<int>(k));
    }
    const int k = static_cast<int>(live.size());
    if (k <= 1) return weights;
    Eigen::MatrixXd mat(d + 1, k);
    for (int j = 0; j < k; ++j) {
      for (int r = 0; r < d; ++r) mat(r, j) = pts[live[j]][r];
      mat(d, j) = 1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
    lu.setThreshold(1e-12);
    if (lu.rank() >= k) return weights;
    Eigen::VectorXd dir = lu.kernel().col(0);
    if (dir.maxCoeff() <= 0.0) dir = -dir;
    double step = std::numeric_limits<double>::infinity();
    int drop = -1;
    for (int j = 0; j < k; ++j) {
      if (dir(j) > 1e-14) {
        const double s = weights[live[j]] / dir(j);
        if (s < step) {
          step = s;
          drop = j;
        }
      }
    }
    if (drop < 0) return weights;
    for (int j = 0; j < k; ++j) {
      double& w = weights[live[j]];
      w -= step * dir(j);
      if (w < 1e-15) w = 0.0;
    }
    weights[live[drop]] = 0.0;
  }
}

std::vector<double> DeviatorValues(const DefaultGame& game,
                                   const InformationStructure& posterior,
                                   Player deviator,
                                   const std::vector<double>& weights) {
  return OutsideOptionValues(game, posterior, deviator,
                             SelectionPolicy::DeviatorWorst(deviator, weights));
}

PunishmentSolution Convexify(const PunishmentProblem& problem) {
  const TypeSpace& space = problem.base.space();
  RequireSameSpace(GameSpace(problem.game), space, "Convexify");
  const Player i = problem.deviator;
  if (i < 0 || i >= space.num_players()) {
    Fail(ErrorKind::kDimension, "deviator index out of range");
  }
  if (auto bad = problem.base.Validate(); !bad.empty()) {
    Fail(ErrorKind::kPrecondition, "invalid base structure: " + bad.front());
  }
  const int ntypes = space.num_types(i);
  PunishmentSolution sol{.lottery = {},
                         .device =
                             SignalingDevice::Babbling(problem.base.space_ptr()),
                         .value = 0.0,
                         .per_type_values = {},
                         .unsplit_value = 0.0,
                         .unsplit_per_type = {},
                         .samples = {},
                         .q = {},
                         .weights = {},
                         .lp_pivots = 0};
  sol.q = problem.offpath_belief.empty() ? problem.base.Marginal(i)
                                         : problem.offpath_belief;
  CheckDistribution(sol.q, ntypes, "off-path belief");
  sol.weights = problem.weights.empty()
                    ? std::vector<double>(ntypes, 1.0 / ntypes)
                    : problem.weights;
  CheckDistribution(sol.weights, ntypes, "type weights");

  const std::vector<double> m = problem.base.CoMarginal(i);
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<double>> grid =
      SimplexGrid(n, problem.grid_resolution);
  bool base_on_grid = false;
  for (const auto& g : grid) {
    double diff = 0.0;
    for (int c = 0; c < n; ++c) diff = std::max(diff, std::abs(g[c] - m[c]));
    if (diff <= kNormalizationTol) {
      base_on_grid = true;
      break;
    }
  }
  if (!base_on_grid) grid.push_back(m);

  const int npts = static_cast<int>(grid.size());
  std::vector<std::vector<double>> type_values(npts);
  std::vector<double> objective(npts);
  for (int k = 0; k < npts; ++k) {
    const InformationStructure post = Paste(problem.base, i, sol.q, grid[k]);
    type_values[k] = DeviatorValues(problem.game, post, i, sol.weights);
    objective[k] = 0.0;
    for (int t = 0; t < ntypes; ++t) {
      objective[k] += sol.weights[t] * type_values[k][t];
    }
    sol.samples.push_back({grid[k], objective[k]});
  }

  LinearProgram lp(npts);
  lp.objective = objective;
  for (int c = 0; c < n; ++c) {
    LinearRow& row = lp.AddRow(RowSense::kEqual, m[c], "mean_" +
                                                           std::to_string(c));
    for (int k = 0; k < npts; ++k) row.coeffs[k] = grid[k][c];
  }
  const LpSolution res = SolveLinearProgram(lp);
  if (res.status == LpStatus::kInfeasible) {
    Fail(ErrorKind::kInternal,
         "splitting LP infeasible although the base point is on the grid");
  }
  if (res.status == LpStatus::kUnbounded) {
    Fail(ErrorKind::kUnbounded, "splitting LP unbounded");
  }
  sol.lp_pivots = res.pivots;

  const std::vector<double> weights = ReduceSupport(grid, res.x);
  const InformationStructure base = Paste(problem.base, i, sol.q, m);
  sol.per_type_values.assign(ntypes, 0.0);
  sol.value = 0.0;
  PosteriorLottery lottery;
  lottery.base_ref = "post-veto base";
  for (int k = 0; k < npts; ++k) {
    if (weights[k] <= 0.0) continue;
    lottery.atoms.push_back({weights[k], Paste(problem.base, i, sol.q, grid[k]),
                             {}});
    sol.value += weights[k] * objective[k];
    for (int t = 0; t < ntypes; ++t) {
      sol.per_type_values[t] += weights[k] * type_values[k][t];
    }
  }
  sol.lottery = CanonicalLottery(std::move(lottery));
  for (size_t a = 0; a < sol.lottery.atoms.size(); ++a) {
    sol.lottery.atoms[a].signals = {static_cast<int>(a)};
  }
  sol.device = LotteryToDevice(sol.lottery, base, i);

  sol.unsplit_per_type = DeviatorValues(problem.game, base, i, sol.weights);
  sol.unsplit_value = 0.0;
  for (int t = 0; t < ntypes; ++t) {
    sol.unsplit_value += sol.weights[t] * sol.unsplit_per_type[t];
  }
  return sol;
}

OffPathOptimum OptimizeOffPathBelief(const PunishmentProblem& problem,
                                     double q_step) {
  if (!(q_step > 0.0)) {
    Fail(ErrorKind::kPrecondition, "q-grid step must be positive");
  }
  const int resolution =
      std::max(1, static_cast<int>(std::lround(1.0 / q_step)));
  const int ntypes = problem.base.space().num_types(problem.deviator);
  std::optional<PunishmentSolution> best;
  std::vector<double> best_q;
  std::vector<std::pair<std::vector<double>, double>> scan;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& q : SimplexGrid(ntypes, resolution)) {
    PunishmentProblem p = problem;
    p.offpath_belief = q;
    p.base = PostVetoStructure(problem.base, {problem.deviator, q});
    PunishmentSolution s = Convexify(p);
    scan.emplace_back(q, s.value);
    lo = std::min(lo, s.value);
    hi = std::max(hi, s.value);
    if (!best || s.value < best->value - 1e-10) {
      best_q = q;
      best = std::move(s);
    }
  }
  return OffPathOptimum{std::move(best_q), std::move(*best),
                        hi - lo <= kEqualityTol, std::move(scan)};
}

std::vector<double> PunishedParticipationBound(
    const DefaultGame& game, Player deviator, const InformationStructure& base,
    const std::vector<double>& weights, int grid_resolution) {
  PunishmentProblem p{game, deviator, base, {}, weights, grid_resolution};
  return Convexify(p).per_type_values;
}

}  // namespace vetoshield
