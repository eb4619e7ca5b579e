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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "support.h"
#include "vetoshield/opportunism.h"
#include "vetoshield/punishment.h"
#include "vetoshield/simharness.h"

namespace vs = vetoshield;
namespace vt = vetoshield::testing;

namespace {

constexpr std::uint64_t kSeed = 20260415;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failed sub-checks with a short reason each.
class Tally {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failed_;
      if (first_failure_.empty()) first_failure_ = what;
    }
  }
  int failed() const { return failed_; }
  int checks() const { return checks_; }
  const std::string& first_failure() const { return first_failure_; }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::string first_failure_;
};

std::string Fmt(const char* fmt, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

Outcome FromTally(const Tally& t, const std::string& summary) {
  if (t.failed() == 0) return {true, summary};
  return {false, summary + "; " + std::to_string(t.failed()) + "/" +
                     std::to_string(t.checks()) +
                     " checks failed, first: " + t.first_failure()};
}

vs::PunishmentProblem TentProblem(const vs::Model& m, int resolution) {
  return {.game = vs::RequireGame(m),
          .deviator = 1,
          .base = vs::RequirePrior(m),
          .offpath_belief = {},
          .weights = {},
          .grid_resolution = resolution};
}

bool IsPointMassOnSubject(const vs::InformationStructure& info) {
  const auto marg = info.Marginal(0);
  return std::abs(marg[0] - 1.0) <= 1e-12 || std::abs(marg[1] - 1.0) <= 1e-12;
}

// --- 1 ---------------------------------------------------------------------
Outcome TentPunishment() {
  const vs::Model m = vt::LoadFixture("tent.json");
  const vs::PunishmentSolution sol = vs::Convexify(TentProblem(m, 20));
  Tally t;
  t.Expect(std::abs(sol.value) <= 1e-9, "value is not 0");
  t.Expect(sol.lottery.atoms.size() == 2, "lottery does not have two atoms");
  bool revealing = true;
  for (const auto& a : sol.lottery.atoms) {
    revealing = revealing && IsPointMassOnSubject(a.posterior);
  }
  t.Expect(revealing, "an atom is not a point belief about the subject");
  return FromTally(t, Fmt("value=%.3g atoms=%.0f", sol.value,
                          static_cast<double>(sol.lottery.atoms.size())));
}

// --- 2 ---------------------------------------------------------------------
Outcome BabblingBaseline() {
  const vs::Model m = vt::LoadFixture("tent.json");
  const vs::InformationStructure& prior = vs::RequirePrior(m);
  const auto babbling = vs::SignalingDevice::Babbling(m.space);
  const vs::PosteriorLottery lot = vs::DeviceToLottery(prior, babbling);
  Tally t;
  t.Expect(lot.atoms.size() == 1, "babbling lottery has more than one atom");
  double value = 0.0;
  for (const auto& a : lot.atoms) {
    value += a.weight *
             vs::DeviatorValues(vs::RequireGame(m), a.posterior, 1, {1.0})[0];
  }
  t.Expect(std::abs(value - 0.5) <= 1e-9, "babbling value is not 0.5");
  const vs::PunishmentSolution sol = vs::Convexify(TentProblem(m, 20));
  t.Expect(std::abs(sol.unsplit_value - 0.5) <= 1e-9,
           "unsplit punishment value is not 0.5");
  return FromTally(t, Fmt("v2=%.12g", value));
}

// --- 3 ---------------------------------------------------------------------
Outcome TentOpportunism() {
  const vs::Model m = vt::LoadFixture("tent.json");
  const vs::DesignerSpace ds{.game = vs::RequireGame(m),
                             .base = vs::RequirePrior(m),
                             .deviator = 1,
                             .policy = vs::SelectionPolicy::DeviatorWorst(1),
                             .fosd_resolution = 10};
  Tally t;
  const vs::AlignmentReport al = vs::CheckAligned(ds, 0);
  t.Expect(!al.aligned, "alignment check reports aligned");
  t.Expect(al.witness && al.witness->prefers_f == 0 &&
               al.witness->prefers_f_prime == 1,
           "witness is not (l, r)");
  const vs::PunishmentSolution star = vs::Convexify(TentProblem(m, 20));
  const vs::ImmunityReport imm = vs::CheckImmunity(star.device, ds);
  t.Expect(imm.verdict == vs::Verdict::kIndeterminate,
           std::string("immunity verdict is ") + vs::VerdictName(imm.verdict));
  const vs::DesignerDeviceReport rep =
      vs::EnumerateDesignerDevices(ds, 10, 20, vs::kPbeTol);
  t.Expect(rep.only_babbling, "an informative grid device survives");
  t.Expect(!rep.survivors.empty(), "not even babbling survives");
  return FromTally(t, Fmt("devices=%.0f survivors=%.0f",
                          static_cast<double>(rep.devices_checked),
                          static_cast<double>(rep.survivors.size())));
}

// --- 4 ---------------------------------------------------------------------
Outcome ReplicationSuite() {
  vt::Rng rng(kSeed);
  constexpr int kWanted = 50;
  constexpr int kGrid = 10;
  Tally t;
  int collected = 0;
  int with_veto = 0;
  double worst_ic = 0.0, worst_tv = 0.0, worst_dev = 0.0;
  for (int attempt = 0; attempt < 200 && collected < kWanted; ++attempt) {
    vt::RandomInstance ri = vt::RandomStrategicInstance(rng);
    vs::GrandGameInstance inst =
        vs::StrategicInstance(ri.game, ri.prior, ri.rule);
    inst.grid = kGrid;
    const auto found = vs::EnumerateVetoEquilibria(inst);
    if (found.empty()) continue;
    // Up to three equilibria per instance, drawn at random.
    for (int pick = 0; pick < 3 && collected < kWanted; ++pick) {
      const auto& veq = found[std::uniform_int_distribution<size_t>(
          0, found.size() - 1)(rng)];
      ++collected;
      if (!veq.veto_sets.empty()) ++with_veto;
      const std::string tag = "veq " + std::to_string(collected);
      t.Expect(vs::CheckVetoEquilibrium(veq).empty(), tag + " inconsistent");
      const vs::Construction c = vs::ConstructFullParticipation(
          veq, inst.game, inst.utilities, vs::SelectionPolicy::Lexicographic());
      const double ic = vt::IcGap(c.rule, ri.prior, inst.utilities);
      const double tv = vt::MaxTv(vt::VetoOutcome(veq), c.rule, ri.prior);
      worst_ic = std::max(worst_ic, ic);
      worst_tv = std::max(worst_tv, tv);
      t.Expect(ic <= 1e-8, tag + " fails IC");
      t.Expect(tv <= 1e-9, tag + " outcome mismatch");
      t.Expect(c.no_veto.ok, tag + " invites a veto");
      const vs::ReplicationReport rep = vs::ReplicateCheck(veq, inst);
      worst_dev = std::max(worst_dev, rep.max_deviation);
      t.Expect(rep.replicated, tag + " not replicated");
      t.Expect(rep.max_deviation <= 1.0 / kGrid + 1e-6,
               tag + " deviation above grid bound");
    }
  }
  t.Expect(collected >= kWanted, "fewer than 50 equilibria generated");
  std::ostringstream s;
  s << "veqs=" << collected << " with_veto=" << with_veto
    << " ic=" << worst_ic << " tv=" << worst_tv << " dev=" << worst_dev;
  return FromTally(t, s.str());
}

// --- 5 ---------------------------------------------------------------------
vs::ReducedFormGame PlGame(std::shared_ptr<const vs::TypeSpace> space,
                           const std::vector<std::pair<double, double>>& pts) {
  vs::ReducedFormGame rf;
  rf.space = space;
  rf.subject = 0;
  rf.subject_type = 1;
  const vs::PiecewiseLinear zero({{0.0, 0.0}, {1.0, 0.0}});
  rf.values = {{0, 0, zero}, {0, 1, zero}, {1, 0, vs::PiecewiseLinear(pts)}};
  return rf;
}

std::shared_ptr<const vs::TypeSpace> SubjectSpace() {
  return std::make_shared<const vs::TypeSpace>(std::vector<std::vector<vs::TypeLabel>>{
      {{"l", 0.0}, {"r", 1.0}}, {{"s", 0.0}}});
}

Outcome ConcavificationOracle() {
  vt::Rng rng(kSeed + 5);
  auto space = SubjectSpace();
  Tally t;
  double worst = 0.0;
  int refinements = 0;
  for (int k = 0; k < 100; ++k) {
    const auto pts = vt::RandomPiecewiseLinear(rng);
    const double p0 = vt::Uniform(rng, 0.05, 0.95);
    const vs::InformationStructure prior(space, {1.0 - p0, p0});
    vs::PunishmentProblem prob{.game = PlGame(space, pts),
                               .deviator = 1,
                               .base = prior,
                               .offpath_belief = {},
                               .weights = {},
                               .grid_resolution = 20};
    const double v20 = vs::Convexify(prob).value;
    std::vector<double> xs, fx;
    for (int g = 0; g <= 20; ++g) xs.push_back(g / 20.0);
    xs.push_back(p0);
    for (double x : xs) fx.push_back(vt::Interpolate(pts, x));
    const double oracle = vt::TwoPointMinimum(xs, fx, p0);
    worst = std::max(worst, std::abs(v20 - oracle));
    t.Expect(std::abs(v20 - oracle) <= 1e-9,
             "function " + std::to_string(k) + " differs from two-point minimum");
    prob.grid_resolution = 40;
    const double v40 = vs::Convexify(prob).value;
    t.Expect(v40 <= v20 + 1e-12,
             "function " + std::to_string(k) + " value rose on the finer grid");
    if (v40 < v20 - 1e-12) ++refinements;
  }
  std::ostringstream s;
  s << "functions=100 max_gap=" << worst << " strict_refinements=" << refinements;
  return FromTally(t, s.str());
}

// --- 6 ---------------------------------------------------------------------
bool SameLottery(vs::PosteriorLottery a, vs::PosteriorLottery b) {
  a = vs::CanonicalLottery(std::move(a), 1e-9);
  b = vs::CanonicalLottery(std::move(b), 1e-9);
  if (a.atoms.size() != b.atoms.size()) return false;
  std::vector<bool> used(b.atoms.size(), false);
  for (const auto& x : a.atoms) {
    bool matched = false;
    for (size_t k = 0; k < b.atoms.size() && !matched; ++k) {
      if (used[k]) continue;
      if (std::abs(x.weight - b.atoms[k].weight) <= 1e-9 &&
          x.posterior.MaxAbsDiff(b.atoms[k].posterior) <= 1e-9) {
        used[k] = matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

Outcome BeliefMachinery() {
  vt::Rng rng(kSeed + 6);
  Tally t;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int players = std::uniform_int_distribution<int>(2, 3)(rng);
    std::vector<int> counts;
    for (int p = 0; p < players; ++p) {
      counts.push_back(std::uniform_int_distribution<int>(2, 3)(rng));
    }
    auto space = std::make_shared<const vs::TypeSpace>(vs::TypeSpace::FromCounts(counts));
    std::vector<double> w = vt::RandomSimplexPoint(rng, space->num_profiles());
    if (k % 4 == 0) w[0] = 0.0;
    const auto base = vs::InformationStructure::Normalized(space, w);
    const int ns = std::uniform_int_distribution<int>(2, 4)(rng);
    const vs::SignalingDevice dev = vt::RandomDevice(rng, space, ns);
    const vs::PosteriorLottery lot = vs::DeviceToLottery(base, dev);
    const std::string tag = "device " + std::to_string(k);
    const double gap = vt::PlausibilityGap(lot, base);
    worst = std::max(worst, gap);
    t.Expect(gap <= 1e-9, tag + " lottery does not average to the base");
    t.Expect(vs::CheckBayesPlausible(lot, base).ok, tag + " rejected as implausible");
    // Each atom must be the Bayes posterior of the signals it merges.
    const auto split = vt::SplitByDevice(base, dev);
    double mass = 0.0;
    for (const auto& [pw, post] : split) mass += pw;
    t.Expect(std::abs(mass - 1.0) <= 1e-9, tag + " signal probabilities");
    for (const auto& a : lot.atoms) {
      bool found = false;
      for (const auto& [pw, post] : split) {
        double d = 0.0;
        for (size_t c = 0; c < post.size(); ++c) {
          d = std::max(d, std::abs(post[c] - a.posterior.mass(static_cast<int>(c))));
        }
        found = found || d <= 1e-9;
      }
      t.Expect(found, tag + " atom is no signal's posterior");
    }
    const vs::SignalingDevice back = vs::LotteryToDevice(lot, base);
    t.Expect(SameLottery(vs::DeviceToLottery(base, back), lot),
             tag + " round trip changed the lottery");
  }

  // Deviator opacity on punishment solutions: the tent, random piecewise
  // linear games, and random strategic games.
  std::vector<std::pair<vs::PunishmentSolution, vs::Player>> sols;
  const vs::Model tent = vt::LoadFixture("tent.json");
  sols.emplace_back(vs::Convexify(TentProblem(tent, 20)), 1);
  auto space = SubjectSpace();
  for (int k = 0; k < 30; ++k) {
    const double p0 = vt::Uniform(rng, 0.05, 0.95);
    sols.emplace_back(
        vs::Convexify({.game = PlGame(space, vt::RandomPiecewiseLinear(rng)),
                       .deviator = 1,
                       .base = vs::InformationStructure(space, {1 - p0, p0}),
                       .offpath_belief = {},
                       .weights = {},
                       .grid_resolution = 20}),
        1);
  }
  for (int k = 0; k < 10; ++k) {
    vt::RandomInstance ri = vt::RandomStrategicInstance(rng);
    const vs::Player dev = k % 2;
    sols.emplace_back(
        vs::Convexify({.game = ri.game,
                       .deviator = dev,
                       .base = ri.prior,
                       .offpath_belief = vt::RandomSimplexPoint(rng, 2),
                       .weights = {},
                       .grid_resolution = 10}),
        dev);
  }
  double opacity = 0.0;
  for (const auto& [sol, dev] : sols) {
    for (const auto& a : sol.lottery.atoms) {
      opacity = std::max(opacity, vt::OpacityGap(a.posterior, dev, sol.q));
    }
  }
  t.Expect(opacity <= 1e-12, "a punishment atom moves the deviator belief");
  std::ostringstream s;
  s << "devices=1000 max_gap=" << worst << " punishments=" << sols.size()
    << " opacity=" << opacity;
  return FromTally(t, s.str());
}

// --- 7 ---------------------------------------------------------------------
vs::StrategicBayesianGame MatrixGame(
    const std::vector<std::vector<double>>& u0,
    const std::vector<std::vector<double>>& u1) {
  auto space = std::make_shared<const vs::TypeSpace>(vs::TypeSpace::FromCounts({1, 1}));
  vs::StrategicBayesianGame g;
  g.space = space;
  g.outcomes = vs::OutcomeSpace::FromCount(4);
  g.actions = {{"a0", "a1"}, {"b0", "b1"}};
  g.utilities = vs::UtilityTable(2, 4, 1);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      std::vector<double> row(4, 0.0);
      row[2 * a + b] = 1.0;
      g.outcome_map.push_back(row);
      g.utilities.at(0, 2 * a + b, 0) = u0[a][b];
      g.utilities.at(1, 2 * a + b, 0) = u1[a][b];
    }
  }
  return g;
}

Outcome BneSolver() {
  vt::Rng rng(kSeed + 7);
  Tally t;
  double worst = 0.0;
  long profiles = 0;
  for (int k = 0; k < 100; ++k) {
    vt::RandomInstance ri = vt::RandomStrategicInstance(rng);
    const auto eqs = vs::EnumerateBne(ri.game, ri.prior);
    t.Expect(!eqs.empty(), "game " + std::to_string(k) + " has no equilibrium");
    for (const auto& b : eqs) {
      const double gap = vt::BestResponseGap(ri.game, ri.prior, b);
      worst = std::max(worst, gap);
      ++profiles;
      t.Expect(gap <= 1e-8, "game " + std::to_string(k) + " accepted a non-equilibrium");
    }
  }
  // Prisoner's dilemma: the dominant action a1/b1 is the unique answer.
  const auto pd = MatrixGame({{3, 0}, {5, 1}}, {{3, 5}, {0, 1}});
  const auto pd_eqs =
      vs::EnumerateBne(pd, vs::InformationStructure::Uniform(pd.space));
  t.Expect(pd_eqs.size() == 1 && pd_eqs[0].strategy[0][0][1] == 1.0 &&
               pd_eqs[0].strategy[1][0][1] == 1.0,
           "dominance fixture");
  // Matching pennies: unique equilibrium mixes one half on each action.
  const auto mp = MatrixGame({{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
  const auto mp_eqs =
      vs::EnumerateBne(mp, vs::InformationStructure::Uniform(mp.space));
  bool half = mp_eqs.size() == 1;
  for (const auto& b : mp_eqs) {
    for (int p = 0; p < 2; ++p) {
      half = half && std::abs(b.strategy[p][0][0] - 0.5) <= 1e-12;
    }
  }
  t.Expect(half, "matching pennies fixture");
  std::ostringstream s;
  s << "games=100 profiles=" << profiles << " max_gap=" << worst;
  return FromTally(t, s.str());
}

// --- 8 ---------------------------------------------------------------------
Outcome MechanismMonotonicity() {
  vt::Rng rng(kSeed + 8);
  Tally t;
  int feasible = 0;
  for (int k = 0; k < 20; ++k) {
    auto space = std::make_shared<const vs::TypeSpace>(vs::TypeSpace::FromCounts({2, 2}));
    const int nz = std::uniform_int_distribution<int>(2, 3)(rng);
    vs::UtilityTable u(2, nz, space->num_profiles());
    for (int i = 0; i < 2; ++i) {
      for (int z = 0; z < nz; ++z) {
        for (int p = 0; p < space->num_profiles(); ++p) u.at(i, z, p) = vt::Uniform(rng);
      }
    }
    const auto prior = vs::InformationStructure::Product(
        space, {vt::RandomSimplexPoint(rng, 2), vt::RandomSimplexPoint(rng, 2)});
    vs::DecisionRule witness(space->num_profiles(), nz);
    for (int p = 0; p < space->num_profiles(); ++p) {
      const auto row = vt::RandomSimplexPoint(rng, nz);
      for (int z = 0; z < nz; ++z) witness.at(p, z) = row[z];
    }
    vs::MechanismLpSpec spec{.space = space,
                             .outcomes = vs::OutcomeSpace::FromCount(nz),
                             .objective = {},
                             .impose_ic = true,
                             .participation = {}};
    for (int p = 0; p < space->num_profiles(); ++p) {
      std::vector<double> row(nz);
      for (double& x : row) x = vt::Uniform(rng);
      spec.objective.push_back(row);
    }
    for (int i = 0; i < 2; ++i) {
      spec.participation.emplace_back();
      for (int ty = 0; ty < 2; ++ty) {
        spec.participation[i].push_back(
            vs::InterimUtility(witness, prior, u, i, ty) - vt::Uniform(rng, 0.0, 0.1));
      }
    }
    const vs::MechanismSolution base = vs::SolveOptimalMechanism(spec, prior, u);
    if (base.feasible) ++feasible;
    for (int i = 0; i < 2; ++i) {
      for (int ty = 0; ty < 2; ++ty) {
        vs::MechanismLpSpec lower = spec;
        lower.participation[i][ty] -= vt::Uniform(rng, 0.05, 0.3);
        const vs::MechanismSolution s = vs::SolveOptimalMechanism(lower, prior, u);
        const std::string tag = "LP " + std::to_string(k);
        if (base.feasible) {
          t.Expect(s.feasible && s.value >= base.value - 1e-9,
                   tag + " optimum fell when a bound was lowered");
        } else {
          t.Expect(s.feasible || s.relaxation <= base.relaxation + 1e-9,
                   tag + " relaxation grew when a bound was lowered");
        }
      }
    }
  }

  // Tent mechanism: unpunished bound (outside option at the prior) against
  // the punished bound from the payoff-minimizing signal.
  const vs::Model m = vt::LoadFixture("lp.json");
  const vs::InformationStructure& prior = vs::RequirePrior(m);
  const vs::UtilityTable& u = vs::RequireUtilities(m);
  const vs::json doc = vs::ReadJsonFile(vt::FixturePath("lp.json"));
  vs::MechanismLpSpec spec{.space = m.space,
                           .outcomes = m.outcomes,
                           .objective = std::vector<std::vector<double>>(
                               m.space->num_profiles()),
                           .impose_ic = true,
                           .participation = {{vs::kNoBound, vs::kNoBound},
                                             {vs::kNoBound}}};
  for (const auto& row : doc.at("mechanism").at("objective")) {
    spec.objective[vs::ParseProfile(row.at("profile"), *m.space)] =
        vs::ParseVector(row.at("values"));
  }
  const double unpunished = vs::OutsideOptionValue(
      vs::RequireGame(m), prior, 1, 0, vs::SelectionPolicy::DeviatorWorst(1));
  const double punished =
      vs::PunishedParticipationBound(vs::RequireGame(m), 1, prior, {1.0}, 20)[0];
  t.Expect(std::abs(unpunished - 0.5) <= 1e-9, "tent outside option is not 0.5");
  t.Expect(std::abs(punished) <= 1e-9, "tent punished bound is not 0");
  spec.participation[1][0] = unpunished;
  const vs::MechanismSolution hi = vs::SolveOptimalMechanism(spec, prior, u);
  spec.participation[1][0] = punished;
  const vs::MechanismSolution lo = vs::SolveOptimalMechanism(spec, prior, u);
  t.Expect(lo.value >= hi.value - 1e-9, "punished LP value is lower");
  const bool bound_binds = hi.multipliers[1][0] > 1e-9;
  t.Expect(bound_binds, "tent LP is not participation-bound");
  t.Expect(!bound_binds || lo.value > hi.value + 1e-9,
           "binding fixture gains nothing from punishment");
  std::ostringstream s;
  s << "lps=20 feasible=" << feasible << " tent: " << hi.value << " -> "
    << lo.value;
  return FromTally(t, s.str());
}

// --- 9 ---------------------------------------------------------------------
vs::InformationStructure ConditionOnProposal(
    const vs::InformationStructure& prior,
    const std::vector<std::vector<double>>& probs, int k, double* total) {
  std::vector<double> w(prior.space().num_profiles());
  *total = 0.0;
  for (int p = 0; p < prior.space().num_profiles(); ++p) {
    w[p] = prior.mass(p) * probs[prior.space().TypeOf(p, 0)][k];
    *total += w[p];
  }
  if (*total <= 0.0) return prior;
  return vs::InformationStructure::Normalized(prior.space_ptr(), w);
}

Outcome InformedPrincipal() {
  // Random picks come from the first equilibria in grid order.
  constexpr long kPerInstance = 25;
  vt::Rng rng(kSeed + 9);
  Tally t;
  int fixtures = 0, separating = 0, collapses = 0;
  double worst = 0.0;
  auto pick = [&](const std::vector<vs::VetoEquilibrium>& v) {
    return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
  };
  for (int attempt = 0; attempt < 60 && fixtures < 12; ++attempt) {
    vt::RandomInstance ri = vt::RandomStrategicInstance(rng);
    std::vector<std::vector<double>> probs;
    if (attempt % 2 == 0) {
      probs = {{1.0, 0.0}, {0.0, 1.0}};
    } else {
      for (int ty = 0; ty < 2; ++ty) {
        const double a = std::uniform_int_distribution<int>(0, 4)(rng) / 4.0;
        probs.push_back({a, 1.0 - a});
      }
    }
    std::vector<vs::Proposal> proposals;
    bool ok = true;
    for (int k = 0; k < 2 && ok; ++k) {
      double total = 0.0;
      const auto cond = ConditionOnProposal(ri.prior, probs, k, &total);
      vt::RandomInstance rk = vt::RandomStrategicInstance(rng);
      vs::GrandGameInstance inst = vs::StrategicInstance(ri.game, cond, rk.rule);
      inst.max_results = kPerInstance;
      const auto found = vs::EnumerateVetoEquilibria(inst);
      if (found.empty()) {
        ok = false;
        break;
      }
      proposals.push_back({"p" + std::to_string(k), pick(found)});
    }
    if (!ok) continue;
    ++fixtures;
    if (probs[0][0] == 1.0 && probs[1][1] == 1.0) ++separating;
    const std::string tag = "fixture " + std::to_string(fixtures);
    const vs::Pooling pool = vs::PoolInformedPrincipal(
        ri.prior, probs, proposals, ri.game, ri.game.utilities,
        vs::SelectionPolicy::Lexicographic());
    // Separate-and-veto outcome, mixed over proposals per principal type.
    std::vector<std::vector<double>> source(ri.prior.space().num_profiles(),
                                            std::vector<double>(2, 0.0));
    for (int k = 0; k < 2; ++k) {
      const auto out = vt::VetoOutcome(proposals[k].veq);
      for (int p = 0; p < ri.prior.space().num_profiles(); ++p) {
        const double w = probs[ri.prior.space().TypeOf(p, 0)][k];
        for (int z = 0; z < 2; ++z) source[p][z] += w * out[p][z];
      }
    }
    const double tv = vt::MaxTv(source, pool.rule, ri.prior);
    worst = std::max(worst, tv);
    t.Expect(tv <= 1e-9, tag + " pooled outcome differs from the source");
    t.Expect(pool.no_veto.ok, tag + " pooled mechanism invites a veto");

    // Every principal type pools on one proposal.
    vs::GrandGameInstance whole =
        vs::StrategicInstance(ri.game, ri.prior, ri.rule);
    whole.max_results = kPerInstance;
    const auto found = vs::EnumerateVetoEquilibria(whole);
    if (found.empty()) continue;
    const vs::VetoEquilibrium veq = pick(found);
    const vs::Pooling all = vs::PoolInformedPrincipal(
        ri.prior, {{1.0}, {1.0}}, {{"only", veq}}, ri.game, ri.game.utilities,
        vs::SelectionPolicy::Lexicographic());
    const vs::Construction c = vs::ConstructFullParticipation(
        veq, ri.game, ri.game.utilities, vs::SelectionPolicy::Lexicographic());
    ++collapses;
    double diff = 0.0;
    for (int p = 0; p < ri.prior.space().num_profiles(); ++p) {
      for (int z = 0; z < 2; ++z) {
        diff = std::max(diff, std::abs(all.rule(p, z) - c.rule(p, z)));
      }
    }
    t.Expect(all.collapsed, tag + " pooling did not collapse");
    t.Expect(diff <= 1e-12 && all.device.rows() == c.device.rows(),
             tag + " collapse differs from the direct construction");
  }
  t.Expect(fixtures >= 10, "too few separate-and-veto fixtures");
  std::ostringstream s;
  s << "fixtures=" << fixtures << " separating=" << separating
    << " collapses=" << collapses << " max_tv=" << worst;
  return FromTally(t, s.str());
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // <= 0: no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "tent punishment value and revealing lottery", 1.0, TentPunishment},
      {2, "babbling baseline value", 1.0, BabblingBaseline},
      {3, "opportunism on the tent example", 30.0, TentOpportunism},
      {4, "full-participation replication suite", 300.0, ReplicationSuite},
      {5, "concavification against two-point oracle", 60.0, ConcavificationOracle},
      {6, "belief machinery", 0.0, BeliefMachinery},
      {7, "equilibrium solver", 0.0, BneSolver},
      {8, "mechanism LP monotonicity", 0.0, MechanismMonotonicity},
      {9, "informed-principal pooling", 60.0, InformedPrincipal},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      out.pass = false;
      out.detail += "; over the " + Fmt("%.0f", c.limit_seconds) + " s budget";
    }
    if (!out.pass) ++failures;
    std::printf("criterion %d %s  %s (%s) [%.2fs]\n", c.id,
                out.pass ? "PASS" : "FAIL", c.title, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
