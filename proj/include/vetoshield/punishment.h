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

#ifndef VETOSHIELD_PUNISHMENT_H_
#define VETOSHIELD_PUNISHMENT_H_

#include <optional>
#include <vector>

#include "vetoshield/belief.h"
#include "vetoshield/defaultgame.h"
#include "vetoshield/model.h"

namespace vetoshield {

// Minimize the weighted continuation value of a vetoing player over
// Bayes-plausible splittings of the co-players' post-veto belief, with the
// belief about the deviator pinned.
struct PunishmentProblem {
  DefaultGame game;
  Player deviator = 0;
  // Post-veto, pre-signal structure. Its co-player marginal is what gets
  // split.
  InformationStructure base;
  // Belief about the deviator; empty means base's deviator marginal.
  std::vector<double> offpath_belief;
  // alpha over deviator types; empty means uniform.
  std::vector<double> weights;
  int grid_resolution = 20;
};

struct EnvelopeSample {
  std::vector<double> coblock;  // co-player distribution at the grid point
  double value = 0.0;           // alpha-weighted deviator value
};

struct PunishmentSolution {
  PosteriorLottery lottery;
  SignalingDevice device;  // reads the co-players' reports only
  double value = 0.0;
  std::vector<double> per_type_values;
  // Objective without any signal (single atom at the base).
  double unsplit_value = 0.0;
  std::vector<double> unsplit_per_type;
  std::vector<EnvelopeSample> samples;  // every grid point, in grid order
  std::vector<double> q;
  std::vector<double> weights;
  int lp_pivots = 0;
};

// Points of the probability simplex in `dim` coordinates whose entries are
// multiples of 1/resolution, in lexicographic order of the integer counts
// (first coordinate largest first).
std::vector<std::vector<double>> SimplexGrid(int dim, int resolution);

// Carathéodory reduction: returns weights with at most (rank of the
// augmented points) positive entries and the same weighted average.
std::vector<double> ReduceSupport(const std::vector<std::vector<double>>& pts,
                                  std::vector<double> weights);

PunishmentSolution Convexify(const PunishmentProblem& problem);

struct OffPathOptimum {
  std::vector<double> q;
  PunishmentSolution solution;
  bool q_irrelevant = false;
  std::vector<std::pair<std::vector<double>, double>> scan;  // (q, value)
};

// Scans q over the deviator's type simplex at step `q_step` and keeps the
// lexicographically first minimizer of the convexified value.
OffPathOptimum OptimizeOffPathBelief(const PunishmentProblem& problem,
                                     double q_step);

// Per-type expected deviation values under the optimal lottery.
std::vector<double> PunishedParticipationBound(
    const DefaultGame& game, Player deviator, const InformationStructure& base,
    const std::vector<double>& weights, int grid_resolution);

// Weighted deviator objective at one posterior.
std::vector<double> DeviatorValues(const DefaultGame& game,
                                   const InformationStructure& posterior,
                                   Player deviator,
                                   const std::vector<double>& weights);

}  // namespace vetoshield

#endif  // VETOSHIELD_PUNISHMENT_H_
