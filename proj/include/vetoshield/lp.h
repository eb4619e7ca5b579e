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

#ifndef VETOSHIELD_LP_H_
#define VETOSHIELD_LP_H_

#include <string>
#include <vector>

namespace vetoshield {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LinearRow {
  std::vector<double> coeffs;  // dense, one per variable
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
  std::string name;
};

// minimize objective . x  subject to rows, x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LinearRow> rows;

  explicit LinearProgram(int n = 0) : num_vars(n), objective(n, 0.0) {}
  LinearRow& AddRow(RowSense sense, double rhs, std::string name = {});
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  // d(objective)/d(rhs) per row; zero for rows found redundant.
  std::vector<double> duals;
  // Indices of structural variables that are basic at the optimum.
  std::vector<int> basic_vars;
  int pivots = 0;
};

// Two-phase dense tableau simplex. Entering and leaving variables follow
// Bland's smallest-index rule, so the pivot sequence (and hence the returned
// vertex) is a deterministic function of the input.
LpSolution SolveLinearProgram(const LinearProgram& lp,
                              double pivot_tol = 1e-11);

const char* LpStatusName(LpStatus status);

}  // namespace vetoshield

#endif  // VETOSHIELD_LP_H_
