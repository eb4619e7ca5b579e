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

#include <cmath>

#include "doctest.h"
#include "support.h"
#include "vetoshield/error.h"
#include "vetoshield/punishment.h"

namespace vs = vetoshield;
namespace vt = vetoshield::testing;

namespace {

long Binomial(int n, int k) {
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

vs::PunishmentProblem Tent(const vs::Model& m) {
  return {.game = vs::RequireGame(m),
          .deviator = 1,
          .base = vs::RequirePrior(m),
          .offpath_belief = {},
          .weights = {},
          .grid_resolution = 20};
}

}  // namespace

TEST_CASE("simplex grid size and order") {
  for (int dim = 1; dim <= 4; ++dim) {
    for (int r : {2, 5, 10}) {
      const auto grid = vs::SimplexGrid(dim, r);
      CHECK(static_cast<long>(grid.size()) == Binomial(r + dim - 1, dim - 1));
      for (const auto& pt : grid) {
        double s = 0.0;
        for (double x : pt) s += x;
        CHECK(s == doctest::Approx(1.0));
      }
    }
  }
  const auto g = vs::SimplexGrid(2, 4);
  CHECK(g.front()[0] == 1.0);
  CHECK(g.back()[1] == 1.0);
}

TEST_CASE("Caratheodory reduction keeps the mean") {
  vt::Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    std::vector<std::vector<double>> pts;
    for (int j = 0; j < 8; ++j) pts.push_back(vt::RandomSimplexPoint(rng, 3));
    const auto w = vt::RandomSimplexPoint(rng, 8);
    const auto r = vs::ReduceSupport(pts, w);
    int support = 0;
    for (double x : r) support += x > 0.0;
    CHECK(support <= 3);
    for (int c = 0; c < 3; ++c) {
      double a = 0.0, b = 0.0;
      for (int j = 0; j < 8; ++j) {
        a += w[j] * pts[j][c];
        b += r[j] * pts[j][c];
      }
      CHECK(b == doctest::Approx(a).epsilon(1e-10));
    }
  }
}

TEST_CASE("tent punishment fully reveals the subject") {
  const vs::Model m = vt::LoadFixture("tent.json");
  const auto sol = vs::Convexify(Tent(m));
  CHECK(std::abs(sol.value) < 1e-12);
  CHECK(sol.unsplit_value == doctest::Approx(0.5));
  CHECK(sol.lottery.atoms.size() == 2);
  CHECK(sol.device.domain() == std::vector<vs::Player>{0});
  CHECK(vs::PunishedParticipationBound(vs::RequireGame(m), 1,
                                       vs::RequirePrior(m), {1.0}, 20)[0] ==
        doctest::Approx(0.0));
}

TEST_CASE("a convex value function gains nothing from splitting") {
  auto space = std::make_shared<const vs::TypeSpace>(
      std::vector<std::vector<vs::TypeLabel>>{{{"l", 0}, {"r", 1}}, {{"s", 0}}});
  vs::ReducedFormGame rf;
  rf.space = space;
  rf.subject = 0;
  rf.subject_type = 1;
  const vs::PiecewiseLinear zero({{0, 0}, {1, 0}});
  rf.values = {{0, 0, zero},
               {0, 1, zero},
               {1, 0, vs::PiecewiseLinear({{0, 1}, {0.4, 0.2}, {1, 0.8}})}};
  const auto sol = vs::Convexify({.game = rf,
                                  .deviator = 1,
                                  .base = vs::InformationStructure(space, {0.7, 0.3}),
                                  .offpath_belief = {},
                                  .weights = {},
                                  .grid_resolution = 20});
  CHECK(sol.value == doctest::Approx(sol.unsplit_value));
  CHECK(sol.lottery.atoms.size() == 1);
}

TEST_CASE("off-path belief scan keeps the first minimizer") {
  vt::Rng rng(10);
  vt::RandomInstance ri = vt::RandomStrategicInstance(rng);
  vs::PunishmentProblem prob{.game = ri.game,
                             .deviator = 0,
                             .base = ri.prior,
                             .offpath_belief = {},
                             .weights = {},
                             .grid_resolution = 10};
  const auto opt = vs::OptimizeOffPathBelief(prob, 0.25);
  REQUIRE(opt.scan.size() == 5);
  double best = opt.scan.front().second;
  for (const auto& [q, v] : opt.scan) best = std::min(best, v);
  CHECK(opt.solution.value == doctest::Approx(best));
  for (const auto& [q, v] : opt.scan) {
    if (q == opt.q) break;
    CHECK(v > best + 1e-10);
  }
  for (const auto& a : opt.solution.lottery.atoms) {
    CHECK(vt::OpacityGap(a.posterior, 0, opt.q) < 1e-12);
  }
}

TEST_CASE("invalid inputs") {
  const vs::Model m = vt::LoadFixture("tent.json");
  auto prob = Tent(m);
  prob.weights = {-1.0};
  CHECK_THROWS_AS(vs::Convexify(prob), vs::Error);
  prob = Tent(m);
  prob.grid_resolution = 0;
  CHECK_THROWS_AS(vs::Convexify(prob), vs::Error);
}
