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

#include "vetoshield/lp.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "vetoshield/error.h"

namespace vetoshield {
namespace {

constexpr int kMaxPivots = 200000;

class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows), cols_(cols), data_((rows) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return data_[r * (cols_ + 1) + c]; }
  double at(int r, int c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  double rhs(int r) const { return at(r, cols_); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void Pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

struct SimplexState {
  Tableau tab;
  std::vector<int> basis;
  std::vector<bool> active;  // rows not found redundant
  int pivots = 0;
};

// Reduced costs for cost vector `cost` under the current basis.
std::vector<double> ReducedCosts(const SimplexState& s,
                                 const std::vector<double>& cost) {
  std::vector<double> r(cost);
  for (int i = 0; i < s.tab.rows(); ++i) {
    if (!s.active[i]) continue;
    const double cb = cost[s.basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j < s.tab.cols(); ++j) r[j] -= cb * s.tab.at(i, j);
  }
  return r;
}

enum class PhaseResult { kOptimal, kUnbounded };

PhaseResult RunPhase(SimplexState& s, const std::vector<double>& cost,
                     const std::vector<bool>& allowed, double tol) {
  while (true) {
    const std::vector<double> r = ReducedCosts(s, cost);
    int enter = -1;
    for (int j = 0; j < s.tab.cols(); ++j) {
      if (allowed[j] && r[j] < -tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return PhaseResult::kOptimal;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < s.tab.rows(); ++i) {
      if (!s.active[i]) continue;
      const double a = s.tab.at(i, enter);
      if (a <= tol) continue;
      const double ratio = s.tab.rhs(i) / a;
      const double slack = 1e-12 * std::max(1.0, std::abs(best));
      if (leave < 0 || ratio < best - slack) {
        best = ratio;
        leave = i;
      } else if (ratio <= best + slack && s.basis[i] < s.basis[leave]) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    if (leave < 0) return PhaseResult::kUnbounded;
    s.tab.Pivot(leave, enter);
    s.basis[leave] = enter;
    if (++s.pivots > kMaxPivots) {
      Fail(ErrorKind::kInternal, "simplex pivot limit exceeded");
    }
  }
}

}  // namespace

LinearRow& LinearProgram::AddRow(RowSense sense, double rhs,
                                 std::string name) {
  rows.push_back({std::vector<double>(num_vars, 0.0), sense, rhs,
                  std::move(name)});
  return rows.back();
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

LpSolution SolveLinearProgram(const LinearProgram& lp, double pivot_tol) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  if (static_cast<int>(lp.objective.size()) != n) {
    Fail(ErrorKind::kDimension, "objective length != number of variables");
  }

  // Normalize to nonnegative right-hand sides.
  std::vector<RowSense> sense(m);
  std::vector<bool> flipped(m, false);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(lp.rows[i].coeffs.size()) != n) {
      Fail(ErrorKind::kDimension, "row length != number of variables");
    }
    sense[i] = lp.rows[i].sense;
    if (lp.rows[i].rhs < 0.0) {
      flipped[i] = true;
      if (sense[i] == RowSense::kLessEqual) {
        sense[i] = RowSense::kGreaterEqual;
      } else if (sense[i] == RowSense::kGreaterEqual) {
        sense[i] = RowSense::kLessEqual;
      }
    }
  }
  int num_slack = 0;
  int num_art = 0;
  for (int i = 0; i < m; ++i) {
    if (sense[i] != RowSense::kEqual) ++num_slack;
    if (sense[i] != RowSense::kLessEqual) ++num_art;
  }
  const int cols = n + num_slack + num_art;
  const int first_art = n + num_slack;

  SimplexState s{Tableau(m, cols), std::vector<int>(m, -1),
                 std::vector<bool>(m, true), 0};
  int next_slack = n;
  int next_art = first_art;
  for (int i = 0; i < m; ++i) {
    const double sign = flipped[i] ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) s.tab.at(i, j) = sign * lp.rows[i].coeffs[j];
    s.tab.rhs(i) = sign * lp.rows[i].rhs;
    if (sense[i] == RowSense::kLessEqual) {
      s.tab.at(i, next_slack) = 1.0;
      s.basis[i] = next_slack++;
    } else {
      if (sense[i] == RowSense::kGreaterEqual) {
        s.tab.at(i, next_slack++) = -1.0;
      }
      s.tab.at(i, next_art) = 1.0;
      s.basis[i] = next_art++;
    }
  }

  LpSolution sol;
  double scale = 1.0;
  for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(s.tab.rhs(i)));

  // Phase 1.
  if (num_art > 0) {
    std::vector<double> cost(cols, 0.0);
    for (int j = first_art; j < cols; ++j) cost[j] = 1.0;
    std::vector<bool> allowed(cols, true);
    RunPhase(s, cost, allowed, pivot_tol);
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
      if (s.basis[i] >= first_art) infeas += s.tab.rhs(i);
    }
    if (infeas > 1e-9 * scale) {
      sol.status = LpStatus::kInfeasible;
      sol.pivots = s.pivots;
      return sol;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (s.basis[i] < first_art) continue;
      int col = -1;
      for (int j = 0; j < first_art; ++j) {
        if (std::abs(s.tab.at(i, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col < 0) {
        s.active[i] = false;
      } else {
        s.tab.Pivot(i, col);
        s.basis[i] = col;
        ++s.pivots;
      }
    }
  }

  // Phase 2.
  std::vector<double> cost(cols, 0.0);
  for (int j = 0; j < n; ++j) cost[j] = lp.objective[j];
  std::vector<bool> allowed(cols, false);
  for (int j = 0; j < first_art; ++j) allowed[j] = true;
  if (RunPhase(s, cost, allowed, pivot_tol) == PhaseResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    sol.pivots = s.pivots;
    return sol;
  }

  sol.status = LpStatus::kOptimal;
  sol.pivots = s.pivots;
  sol.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (!s.active[i]) continue;
    if (s.basis[i] < n) {
      sol.x[s.basis[i]] = std::max(0.0, s.tab.rhs(i));
      sol.basic_vars.push_back(s.basis[i]);
    }
  }
  std::sort(sol.basic_vars.begin(), sol.basic_vars.end());
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];

  // Duals from B^T y = c_B over the active rows of the normalized system.
  std::vector<int> active_rows;
  for (int i = 0; i < m; ++i) {
    if (s.active[i]) active_rows.push_back(i);
  }
  const int k = static_cast<int>(active_rows.size());
  sol.duals.assign(m, 0.0);
  if (k > 0) {
    // Standard-form column j of normalized row i.
    auto column_entry = [&](int i, int j) -> double {
      const double sign = flipped[i] ? -1.0 : 1.0;
      if (j < n) return sign * lp.rows[i].coeffs[j];
      int slack = n;
      for (int r = 0; r < m; ++r) {
        if (sense[r] == RowSense::kEqual) continue;
        if (slack == j) {
          if (r != i) return 0.0;
          return sense[r] == RowSense::kLessEqual ? 1.0 : -1.0;
        }
        ++slack;
      }
      return 0.0;
    };
    Eigen::MatrixXd basis_mat(k, k);
    Eigen::VectorXd cb(k);
    for (int a = 0; a < k; ++a) {
      const int col = s.basis[active_rows[a]];
      cb(a) = cost[col];
      for (int b = 0; b < k; ++b) {
        basis_mat(b, a) = column_entry(active_rows[b], col);
      }
    }
    const Eigen::VectorXd y =
        basis_mat.transpose().fullPivLu().solve(cb);
    for (int a = 0; a < k; ++a) {
      const int i = active_rows[a];
      sol.duals[i] = flipped[i] ? -y(a) : y(a);
    }
  }
  return sol;
}

}  // namespace vetoshield
