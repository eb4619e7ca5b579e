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

#include "vetoshield/defaultgame.h"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "vetoshield/belief.h"
#include "vetoshield/error.h"

namespace vetoshield {
namespace {

// Accepted profiles must clear the sweep well inside kEquilibriumTol.
constexpr double kAcceptGap = 1e-9;
constexpr long kMaxSupportCombos = 5'000'000;

std::vector<double> AgentBelief(const InformationStructure& info,
                                Player player, int type) {
  const std::vector<double> marginal = info.Marginal(player);
  if (marginal[type] > 0.0) return ConditionOnType(info, player, type);
  std::vector<double> co = info.CoMarginal(player);
  const double s = std::accumulate(co.begin(), co.end(), 0.0);
  for (double& x : co) x /= s;
  return co;
}

std::vector<int> SupportedTypes(const InformationStructure& info,
                                Player player) {
  std::vector<int> out;
  const std::vector<double> m = info.Marginal(player);
  for (int t = 0; t < static_cast<int>(m.size()); ++t) {
    if (m[t] > 0.0) out.push_back(t);
  }
  return out;
}

BNEProfile EmptyProfile(const StrategicBayesianGame& game) {
  BNEProfile profile;
  profile.strategy.resize(game.num_players());
  for (int p = 0; p < game.num_players(); ++p) {
    profile.strategy[p].assign(game.space->num_types(p),
                               std::vector<double>(game.num_actions(p), 0.0));
  }
  return profile;
}

// Pure best responses for types outside the support.
void FillUnsupported(const StrategicBayesianGame& game,
                     const InformationStructure& info, BNEProfile& profile) {
  for (int p = 0; p < game.num_players(); ++p) {
    const std::vector<double> m = info.Marginal(p);
    for (int t = 0; t < game.space->num_types(p); ++t) {
      if (m[t] > 0.0) continue;
      int best = 0;
      double best_v = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < game.num_actions(p); ++a) {
        const double v = ActionValue(game, info, profile, p, t, a);
        if (v > best_v + 1e-12) {
          best_v = v;
          best = a;
        }
      }
      std::fill(profile.strategy[p][t].begin(), profile.strategy[p][t].end(),
                0.0);
      profile.strategy[p][t][best] = 1.0;
    }
  }
}

bool SameProfile(const BNEProfile& a, const BNEProfile& b) {
  for (size_t p = 0; p < a.strategy.size(); ++p) {
    for (size_t t = 0; t < a.strategy[p].size(); ++t) {
      for (size_t x = 0; x < a.strategy[p][t].size(); ++x) {
        if (std::abs(a.strategy[p][t][x] - b.strategy[p][t][x]) > 1e-9) {
          return false;
        }
      }
    }
  }
  return true;
}

void AddIfNew(std::vector<BNEProfile>& found, BNEProfile profile) {
  for (const auto& f : found) {
    if (SameProfile(f, profile)) return;
  }
  found.push_back(std::move(profile));
}

std::vector<unsigned> SupportMasks(int num_actions) {
  std::vector<unsigned> masks;
  for (unsigned m = 1; m < (1u << num_actions); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    return std::popcount(a) < std::popcount(b);
  });
  return masks;
}

// Solve for the mixing of player `b` that makes each agent of player `a`
// indifferent over its support. Returns false if the system is inconsistent
// or the solution is not a distribution.
bool SolveIndifference(
    const std::vector<int>& agents_a, const std::vector<int>& agents_b,
    const std::vector<unsigned>& supp_a, const std::vector<unsigned>& supp_b,
    int num_actions_a, int num_actions_b,
    // coef[t_index][x][s_index][y]
    const std::vector<std::vector<std::vector<std::vector<double>>>>& coef,
    std::vector<std::vector<double>>& mixing) {
  // Pure supports for b: the mixing is forced, and a's support only needs
  // equal payoffs.
  if (std::all_of(supp_b.begin(), supp_b.end(),
                  [](unsigned m) { return std::popcount(m) == 1; })) {
    mixing.assign(agents_b.size(), std::vector<double>(num_actions_b, 0.0));
    for (size_t s = 0; s < agents_b.size(); ++s) {
      mixing[s][std::countr_zero(supp_b[s])] = 1.0;
    }
    for (size_t t = 0; t < agents_a.size(); ++t) {
      double first = 0.0;
      bool seen = false;
      for (int x = 0; x < num_actions_a; ++x) {
        if (!(supp_a[t] >> x & 1u)) continue;
        double v = 0.0;
        for (size_t s = 0; s < agents_b.size(); ++s) {
          v += coef[t][x][s][std::countr_zero(supp_b[s])];
        }
        if (seen && std::abs(v - first) > 1e-10) return false;
        first = seen ? first : v;
        seen = true;
      }
    }
    return true;
  }
  std::vector<std::pair<int, int>> unknowns;  // (s_index, y)
  for (size_t s = 0; s < agents_b.size(); ++s) {
    for (int y = 0; y < num_actions_b; ++y) {
      if (supp_b[s] >> y & 1u) unknowns.emplace_back(static_cast<int>(s), y);
    }
  }
  const int nsig = static_cast<int>(unknowns.size());
  const int nvars = nsig + static_cast<int>(agents_a.size());
  int nrows = static_cast<int>(agents_b.size());
  for (size_t t = 0; t < agents_a.size(); ++t) {
    nrows += std::popcount(supp_a[t]);
  }
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(nrows, nvars);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nrows);
  int row = 0;
  for (size_t t = 0; t < agents_a.size(); ++t) {
    for (int x = 0; x < num_actions_a; ++x) {
      if (!(supp_a[t] >> x & 1u)) continue;
      for (int k = 0; k < nsig; ++k) {
        mat(row, k) = coef[t][x][unknowns[k].first][unknowns[k].second];
      }
      mat(row, nsig + static_cast<int>(t)) = -1.0;
      ++row;
    }
  }
  for (size_t s = 0; s < agents_b.size(); ++s) {
    for (int k = 0; k < nsig; ++k) {
      if (unknowns[k].first == static_cast<int>(s)) mat(row, k) = 1.0;
    }
    rhs(row) = 1.0;
    ++row;
  }
  const Eigen::VectorXd sol = mat.colPivHouseholderQr().solve(rhs);
  if (!sol.allFinite()) return false;
  if ((mat * sol - rhs).cwiseAbs().maxCoeff() > 1e-10) return false;
  mixing.assign(agents_b.size(), std::vector<double>(num_actions_b, 0.0));
  for (int k = 0; k < nsig; ++k) {
    double v = sol(k);
    if (v < -1e-12) return false;
    mixing[unknowns[k].first][unknowns[k].second] = std::max(0.0, v);
  }
  for (auto& row_probs : mixing) {
    const double s = std::accumulate(row_probs.begin(), row_probs.end(), 0.0);
    for (double& v : row_probs) v /= s;
  }
  return true;
}

std::vector<BNEProfile> EnumerateTwoPlayer(const StrategicBayesianGame& game,
                                           const InformationStructure& info,
                                           size_t limit) {
  const TypeSpace& space = *game.space;
  const std::vector<int> agents[2] = {SupportedTypes(info, 0),
                                      SupportedTypes(info, 1)};
  const int na[2] = {game.num_actions(0), game.num_actions(1)};

  // coef[a][t][x][s][y] = I(s|t) * payoff of a at (t, s) under (x, y).
  std::vector<std::vector<std::vector<std::vector<double>>>> coef[2];
  for (int a = 0; a < 2; ++a) {
    const int b = 1 - a;
    coef[a].resize(agents[a].size());
    for (size_t ti = 0; ti < agents[a].size(); ++ti) {
      const int t = agents[a][ti];
      const std::vector<double> belief = ConditionOnType(info, a, t);
      coef[a][ti].assign(
          na[a], std::vector<std::vector<double>>(
                     agents[b].size(), std::vector<double>(na[b], 0.0)));
      for (int x = 0; x < na[a]; ++x) {
        for (size_t si = 0; si < agents[b].size(); ++si) {
          const int s = agents[b][si];
          const double w = belief[s];
          if (w == 0.0) continue;
          const int prof = space.Splice(a, t, s);
          for (int y = 0; y < na[b]; ++y) {
            int acts[2];
            acts[a] = x;
            acts[b] = y;
            coef[a][ti][x][si][y] =
                w * game.PayoffAt(a, game.EncodeActions(acts), prof);
          }
        }
      }
    }
  }

  // Support combinations over all agents, ordered by total support size.
  const std::vector<unsigned> masks[2] = {SupportMasks(na[0]),
                                          SupportMasks(na[1])};
  const int n0 = static_cast<int>(agents[0].size());
  const int nagents = n0 + static_cast<int>(agents[1].size());
  long combos = 1;
  for (int k = 0; k < nagents; ++k) {
    combos *= static_cast<long>(masks[k < n0 ? 0 : 1].size());
    if (combos > kMaxSupportCombos) {
      Fail(ErrorKind::kResolutionExhausted,
           "support enumeration exceeds combination cap");
    }
  }
  // Lexicographic within each total support size, smallest size first.
  std::vector<std::vector<int>> all;
  std::vector<int> sizes;
  all.reserve(combos);
  std::vector<int> digits(nagents, 0);
  int max_size = 0;
  for (long c = 0; c < combos; ++c) {
    int size = 0;
    for (int k = 0; k < nagents; ++k) {
      size += std::popcount(masks[k < n0 ? 0 : 1][digits[k]]);
    }
    all.push_back(digits);
    sizes.push_back(size);
    max_size = std::max(max_size, size);
    for (int k = nagents - 1; k >= 0; --k) {
      const int base = static_cast<int>(masks[k < n0 ? 0 : 1].size());
      if (++digits[k] < base) break;
      digits[k] = 0;
    }
  }
  std::vector<const std::vector<int>*> order;
  order.reserve(combos);
  for (int size = 0; size <= max_size; ++size) {
    for (long c = 0; c < combos; ++c) {
      if (sizes[c] == size) order.push_back(&all[c]);
    }
  }

  std::vector<BNEProfile> found;
  for (const std::vector<int>* dp : order) {
    const std::vector<int>& d = *dp;
    std::vector<unsigned> supp[2];
    for (int k = 0; k < nagents; ++k) {
      supp[k < n0 ? 0 : 1].push_back(masks[k < n0 ? 0 : 1][d[k]]);
    }
    std::vector<std::vector<double>> mix[2];
    // Player 1's mixing from player 0's indifference, and vice versa.
    if (!SolveIndifference(agents[0], agents[1], supp[0], supp[1], na[0],
                           na[1], coef[0], mix[1])) {
      continue;
    }
    if (!SolveIndifference(agents[1], agents[0], supp[1], supp[0], na[1],
                           na[0], coef[1], mix[0])) {
      continue;
    }
    BNEProfile profile = EmptyProfile(game);
    for (int a = 0; a < 2; ++a) {
      for (size_t ti = 0; ti < agents[a].size(); ++ti) {
        profile.strategy[a][agents[a][ti]] = mix[a][ti];
      }
    }
    FillUnsupported(game, info, profile);
    const double gap = BestResponseGap(game, info, profile);
    if (gap > kAcceptGap) continue;
    profile.epsilon = gap;
    AddIfNew(found, std::move(profile));
    if (found.size() >= limit) break;
  }
  return found;
}

std::vector<BNEProfile> EnumeratePure(const StrategicBayesianGame& game,
                                      const InformationStructure& info,
                                      size_t limit) {
  std::vector<std::pair<Player, int>> agents;
  for (int p = 0; p < game.num_players(); ++p) {
    for (int t : SupportedTypes(info, p)) agents.emplace_back(p, t);
  }
  long combos = 1;
  for (const auto& [p, t] : agents) {
    combos *= game.num_actions(p);
    if (combos > kMaxSupportCombos) {
      Fail(ErrorKind::kResolutionExhausted,
           "pure-profile enumeration exceeds combination cap");
    }
  }
  std::vector<BNEProfile> found;
  std::vector<int> digits(agents.size(), 0);
  for (long c = 0; c < combos; ++c) {
    BNEProfile profile = EmptyProfile(game);
    for (size_t k = 0; k < agents.size(); ++k) {
      profile.strategy[agents[k].first][agents[k].second][digits[k]] = 1.0;
    }
    FillUnsupported(game, info, profile);
    const double gap = BestResponseGap(game, info, profile);
    if (gap <= kAcceptGap) {
      profile.epsilon = gap;
      AddIfNew(found, std::move(profile));
      if (found.size() >= limit) break;
    }
    for (int k = static_cast<int>(agents.size()) - 1; k >= 0; --k) {
      if (++digits[k] < game.num_actions(agents[k].first)) break;
      digits[k] = 0;
    }
  }
  return found;
}

double ExAnteValue(const StrategicBayesianGame& game,
                   const InformationStructure& info, const BNEProfile& profile,
                   Player player, const std::vector<double>& weights) {
  double v = 0.0;
  for (int t = 0; t < game.space->num_types(player); ++t) {
    if (weights[t] == 0.0) continue;
    v += weights[t] * InterimValue(game, info, profile, player, t);
  }
  return v;
}

}  // namespace

// StrategicBayesianGame ------------------------------------------------------

int StrategicBayesianGame::num_action_profiles() const {
  int n = 1;
  for (const auto& a : actions) n *= static_cast<int>(a.size());
  return n;
}

int StrategicBayesianGame::EncodeActions(std::span<const int> acts) const {
  int idx = 0;
  for (int p = 0; p < num_players(); ++p) idx = idx * num_actions(p) + acts[p];
  return idx;
}

std::vector<int> StrategicBayesianGame::DecodeActions(int index) const {
  std::vector<int> acts(num_players());
  for (int p = num_players() - 1; p >= 0; --p) {
    acts[p] = index % num_actions(p);
    index /= num_actions(p);
  }
  return acts;
}

double StrategicBayesianGame::PayoffAt(Player player, int action_profile,
                                       int profile) const {
  double v = 0.0;
  const auto& lottery = outcome_map[action_profile];
  for (int z = 0; z < outcomes.size(); ++z) {
    if (lottery[z] != 0.0) v += lottery[z] * utilities(player, z, profile);
  }
  return v;
}

void StrategicBayesianGame::Validate() const {
  if (!space) Fail(ErrorKind::kDimension, "game has no type space");
  if (static_cast<int>(actions.size()) != space->num_players()) {
    Fail(ErrorKind::kDimension, "one action set per player required");
  }
  for (const auto& a : actions) {
    if (a.empty()) Fail(ErrorKind::kDimension, "empty action set");
  }
  if (static_cast<int>(outcome_map.size()) != num_action_profiles()) {
    Fail(ErrorKind::kDimension, "outcome map needs one row per action profile");
  }
  for (const auto& row : outcome_map) {
    if (static_cast<int>(row.size()) != outcomes.size()) {
      Fail(ErrorKind::kDimension, "outcome map row length mismatch");
    }
    double s = 0.0;
    for (double x : row) {
      if (x < 0.0) Fail(ErrorKind::kDimension, "negative outcome probability");
      s += x;
    }
    if (std::abs(s - 1.0) > kNormalizationTol) {
      Fail(ErrorKind::kDimension, "outcome map row does not sum to 1");
    }
  }
  if (utilities.num_players() != space->num_players() ||
      utilities.num_outcomes() != outcomes.size() ||
      utilities.num_profiles() != space->num_profiles()) {
    Fail(ErrorKind::kDimension, "utility table shape mismatch");
  }
}

// Reduced form ---------------------------------------------------------------

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
  if (points_.size() < 2) {
    Fail(ErrorKind::kShape, "piecewise-linear function needs two breakpoints");
  }
  if (std::abs(points_.front().first) > kNormalizationTol ||
      std::abs(points_.back().first - 1.0) > kNormalizationTol) {
    Fail(ErrorKind::kShape, "breakpoints must span [0, 1]");
  }
  for (size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k].second)) {
      Fail(ErrorKind::kShape, "non-finite breakpoint value");
    }
    if (k > 0 && !(points_[k].first > points_[k - 1].first)) {
      Fail(ErrorKind::kShape, "breakpoints must be strictly increasing");
    }
  }
}

double PiecewiseLinear::Evaluate(double x) const {
  if (!(x >= -kNormalizationTol && x <= 1.0 + kNormalizationTol)) {
    Fail(ErrorKind::kDomain, "belief " + std::to_string(x) +
                                 " outside [0, 1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  for (size_t k = 1; k < points_.size(); ++k) {
    const auto& [x1, y1] = points_[k];
    if (x <= x1) {
      const auto& [x0, y0] = points_[k - 1];
      if (x == x1) return y1;
      if (x == x0) return y0;
      const double w = (x - x0) / (x1 - x0);
      return (1.0 - w) * y0 + w * y1;
    }
  }
  return points_.back().second;
}

const PiecewiseLinear& ReducedFormGame::ValueFunction(Player player,
                                                      int type) const {
  for (const auto& v : values) {
    if (v.player == player && v.type == type) return v.value;
  }
  Fail(ErrorKind::kShape, "no reduced-form value for player " +
                              std::to_string(player) + " type " +
                              std::to_string(type));
}

double ReducedFormGame::BeliefCoordinate(
    const InformationStructure& info) const {
  if (subject < 0 || subject >= info.space().num_players() ||
      subject_type < 0 || subject_type >= info.space().num_types(subject)) {
    Fail(ErrorKind::kShape, "reduced-form belief coordinate out of range");
  }
  return info.Marginal(subject)[subject_type];
}

const TypeSpace& GameSpace(const DefaultGame& game) {
  return *GameSpacePtr(game);
}

std::shared_ptr<const TypeSpace> GameSpacePtr(const DefaultGame& game) {
  return std::visit([](const auto& g) { return g.space; }, game);
}

const char* SelectionPolicyName(SelectionPolicy::Kind kind) {
  switch (kind) {
    case SelectionPolicy::Kind::kDeviatorWorst: return "deviator_worst";
    case SelectionPolicy::Kind::kDesignerWorst: return "designer_worst";
    case SelectionPolicy::Kind::kLexicographicFirst:
      return "lexicographic_first";
  }
  return "unknown";
}

// Values and equilibria ------------------------------------------------------

double ActionValue(const StrategicBayesianGame& game,
                   const InformationStructure& info, const BNEProfile& profile,
                   Player player, int type, int action) {
  const TypeSpace& space = *game.space;
  const std::vector<double> belief = AgentBelief(info, player, type);
  double value = 0.0;
  const int nap = game.num_action_profiles();
  for (int co = 0; co < space.num_coprofiles(player); ++co) {
    if (belief[co] == 0.0) continue;
    const int prof = space.Splice(player, type, co);
    double inner = 0.0;
    for (int ap = 0; ap < nap; ++ap) {
      const std::vector<int> acts = game.DecodeActions(ap);
      if (acts[player] != action) continue;
      double pr = 1.0;
      for (int j = 0; j < game.num_players() && pr != 0.0; ++j) {
        if (j == player) continue;
        pr *= profile.strategy[j][space.TypeOf(prof, j)][acts[j]];
      }
      if (pr != 0.0) inner += pr * game.PayoffAt(player, ap, prof);
    }
    value += belief[co] * inner;
  }
  return value;
}

double InterimValue(const StrategicBayesianGame& game,
                    const InformationStructure& info, const BNEProfile& profile,
                    Player player, int type) {
  double v = 0.0;
  const auto& mix = profile.strategy[player][type];
  for (int a = 0; a < game.num_actions(player); ++a) {
    if (mix[a] != 0.0) {
      v += mix[a] * ActionValue(game, info, profile, player, type, a);
    }
  }
  return v;
}

double BestResponseGap(const StrategicBayesianGame& game,
                       const InformationStructure& info,
                       const BNEProfile& profile) {
  double gap = 0.0;
  for (int p = 0; p < game.num_players(); ++p) {
    for (int t : SupportedTypes(info, p)) {
      double current = 0.0;
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < game.num_actions(p); ++a) {
        const double v = ActionValue(game, info, profile, p, t, a);
        current += profile.strategy[p][t][a] * v;
        best = std::max(best, v);
      }
      gap = std::max(gap, best - current);
    }
  }
  return gap;
}

namespace {

// The first `limit` equilibria in enumeration order.
std::vector<BNEProfile> EnumerateUpTo(const StrategicBayesianGame& game,
                                      const InformationStructure& info,
                                      size_t limit) {
  game.Validate();
  RequireSameSpace(*game.space, info.space(), "EnumerateBne");
  if (game.num_players() == 2) return EnumerateTwoPlayer(game, info, limit);
  return EnumeratePure(game, info, limit);
}

}  // namespace

std::vector<BNEProfile> EnumerateBne(const StrategicBayesianGame& game,
                                     const InformationStructure& info) {
  return EnumerateUpTo(game, info, std::numeric_limits<size_t>::max());
}

BNEProfile SolveBne(const StrategicBayesianGame& game,
                    const InformationStructure& info,
                    const SelectionPolicy& policy) {
  const bool first_only = policy.kind == SelectionPolicy::Kind::kLexicographicFirst;
  std::vector<BNEProfile> found = EnumerateUpTo(
      game, info, first_only ? 1 : std::numeric_limits<size_t>::max());
  if (found.empty()) {
    int finest = 1;
    if (game.num_players() == 2) {
      finest = std::max(game.num_actions(0), game.num_actions(1));
    }
    Fail(ErrorKind::kResolutionExhausted,
         "no equilibrium found; finest support size tried: " +
             std::to_string(finest));
  }
  if (policy.kind == SelectionPolicy::Kind::kLexicographicFirst ||
      found.size() == 1) {
    return found.front();
  }
  std::vector<double> score(found.size());
  for (size_t k = 0; k < found.size(); ++k) {
    if (policy.kind == SelectionPolicy::Kind::kDeviatorWorst) {
      const Player d = policy.deviator;
      if (d < 0 || d >= game.num_players()) {
        Fail(ErrorKind::kDimension, "selection policy needs a deviator");
      }
      const std::vector<double> w =
          policy.weights.empty() ? info.Marginal(d) : policy.weights;
      score[k] = ExAnteValue(game, info, found[k], d, w);
    } else {
      // Highest total outside option: the equilibrium the designer likes least.
      double total = 0.0;
      for (int p = 0; p < game.num_players(); ++p) {
        total += ExAnteValue(game, info, found[k], p, info.Marginal(p));
      }
      score[k] = -total;
    }
  }
  size_t best = 0;
  for (size_t k = 1; k < found.size(); ++k) {
    if (score[k] < score[best] - policy.tie_tol) best = k;
  }
  return found[best];
}

DecisionRule InducedDecisionRule(const StrategicBayesianGame& game,
                                 const BNEProfile& profile) {
  const TypeSpace& space = *game.space;
  const int nz = game.outcomes.size();
  DecisionRule rule(space.num_profiles(), nz);
  for (int prof = 0; prof < space.num_profiles(); ++prof) {
    for (int ap = 0; ap < game.num_action_profiles(); ++ap) {
      const std::vector<int> acts = game.DecodeActions(ap);
      double pr = 1.0;
      for (int j = 0; j < game.num_players() && pr != 0.0; ++j) {
        pr *= profile.strategy[j][space.TypeOf(prof, j)][acts[j]];
      }
      if (pr == 0.0) continue;
      for (int z = 0; z < nz; ++z) {
        rule.at(prof, z) += pr * game.outcome_map[ap][z];
      }
    }
  }
  return rule;
}

DefaultSolution SolveDefault(const StrategicBayesianGame& game,
                             const InformationStructure& info,
                             const SelectionPolicy& policy) {
  DefaultSolution sol;
  sol.profile = SolveBne(game, info, policy);
  sol.rule = InducedDecisionRule(game, sol.profile);
  sol.values.resize(game.num_players());
  for (int p = 0; p < game.num_players(); ++p) {
    for (int t = 0; t < game.space->num_types(p); ++t) {
      sol.values[p].push_back(InterimValue(game, info, sol.profile, p, t));
    }
  }
  return sol;
}

double EvaluateReducedForm(const ReducedFormGame& rf, Player player, int type,
                           double belief) {
  return rf.ValueFunction(player, type).Evaluate(belief);
}

std::vector<double> OutsideOptionValues(const DefaultGame& game,
                                        const InformationStructure& info,
                                        Player player,
                                        const SelectionPolicy& policy) {
  RequireSameSpace(GameSpace(game), info.space(), "OutsideOptionValues");
  if (const auto* rf = std::get_if<ReducedFormGame>(&game)) {
    const double belief = rf->BeliefCoordinate(info);
    std::vector<double> out;
    for (int t = 0; t < rf->space->num_types(player); ++t) {
      out.push_back(EvaluateReducedForm(*rf, player, t, belief));
    }
    return out;
  }
  const auto& sg = std::get<StrategicBayesianGame>(game);
  const BNEProfile profile = SolveBne(sg, info, policy);
  std::vector<double> out;
  for (int t = 0; t < sg.space->num_types(player); ++t) {
    out.push_back(InterimValue(sg, info, profile, player, t));
  }
  return out;
}

double OutsideOptionValue(const DefaultGame& game,
                          const InformationStructure& info, Player player,
                          int type, const SelectionPolicy& policy) {
  return OutsideOptionValues(game, info, player, policy).at(type);
}

}  // namespace vetoshield
