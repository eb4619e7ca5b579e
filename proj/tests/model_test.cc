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
#include "vetoshield/model.h"

namespace vs = vetoshield;
namespace vt = vetoshield::testing;

namespace {

std::shared_ptr<const vs::TypeSpace> Space(std::vector<int> counts) {
  return std::make_shared<const vs::TypeSpace>(vs::TypeSpace::FromCounts(counts));
}

}  // namespace

TEST_CASE("profiles use mixed radix with player 0 most significant") {
  auto space = Space({2, 3, 2});
  CHECK(space->num_profiles() == 12);
  const std::vector<int> radix = {2, 3, 2};
  for (int p = 0; p < 12; ++p) {
    CHECK(space->Decode(p) == vt::Digits(p, radix));
    CHECK(space->Encode(vt::Digits(p, radix)) == p);
  }
  // Co-profile of player 1 drops the middle digit.
  const int p = space->Encode(std::vector<int>{1, 2, 0});
  CHECK(space->CoProfileOf(p, 1) == 2);
  CHECK(space->Splice(1, 2, 2) == p);
  CHECK(space->FindType(1, "t2") == 2);
  CHECK(space->FindType(1, "nope") == -1);
}

TEST_CASE("marginals agree with brute-force sums") {
  vt::Rng rng(1);
  auto space = Space({2, 3});
  const auto info = vs::InformationStructure::Normalized(
      space, vt::RandomSimplexPoint(rng, space->num_profiles()));
  std::vector<double> m0(2, 0.0), m1(3, 0.0);
  for (int p = 0; p < 6; ++p) {
    const auto d = vt::Digits(p, {2, 3});
    m0[d[0]] += info.mass(p);
    m1[d[1]] += info.mass(p);
  }
  for (int t = 0; t < 2; ++t) CHECK(info.Marginal(0)[t] == doctest::Approx(m0[t]));
  for (int t = 0; t < 3; ++t) CHECK(info.CoMarginal(0)[t] == doctest::Approx(m1[t]));
}

TEST_CASE("validation reports mass that does not sum to one") {
  auto space = Space({2, 1});
  const vs::InformationStructure bad(space, {0.5, 0.4});
  CHECK_FALSE(bad.Validate().empty());
  const vs::InformationStructure good(space, {0.5, 0.5});
  CHECK(good.Validate().empty());
  CHECK_THROWS_AS(vs::InformationStructure(space, {0.5}), vs::Error);
}

TEST_CASE("a candidate may not put mass outside the prior's support") {
  auto space = Space({2, 1});
  const vs::InformationStructure prior(space, {1.0, 0.0});
  const vs::InformationStructure cand(space, {0.5, 0.5});
  CHECK_FALSE(vs::ValidateInformationStructure(cand, prior).ok);
  CHECK(vs::ValidateInformationStructure(prior, prior).ok);
}

TEST_CASE("product structure multiplies marginals") {
  auto space = Space({2, 2});
  const auto info =
      vs::InformationStructure::Product(space, {{0.3, 0.7}, {0.6, 0.4}});
  CHECK(info.mass(space->Encode(std::vector<int>{1, 0})) == doctest::Approx(0.42));
}

TEST_CASE("mixing rules row by row") {
  const vs::DecisionRule a = vs::DecisionRule::Constant(2, 2, 0);
  const vs::DecisionRule b = vs::DecisionRule::Constant(2, 2, 1);
  const std::vector<vs::DecisionRule> rules = {a, b};
  const auto mix = vs::MixDecisionRules(rules, {{0.25, 0.75}, {1.0, 0.0}});
  CHECK(mix(0, 0) == doctest::Approx(0.25));
  CHECK(mix(1, 0) == doctest::Approx(1.0));
  CHECK(mix.Validate().empty());
}

TEST_CASE("interim utility of a misreport matches direct summation") {
  vt::Rng rng(2);
  vt::RandomInstance ri = vt::RandomStrategicInstance(rng);
  const auto& u = ri.game.utilities;
  for (int i = 0; i < 2; ++i) {
    for (int t = 0; t < 2; ++t) {
      for (int r = 0; r < 2; ++r) {
        double num = 0.0, den = 0.0;
        for (int p = 0; p < 4; ++p) {
          auto d = vt::Digits(p, {2, 2});
          if (d[i] != t) continue;
          den += ri.prior.mass(p);
          d[i] = r;
          const int q = vt::Index(d, {2, 2});
          for (int z = 0; z < 2; ++z) num += ri.prior.mass(p) * ri.rule(q, z) * u(i, z, p);
        }
        CHECK(vs::ExpectedUtility(ri.rule, u, ri.prior, i, t, r) ==
              doctest::Approx(num / den));
      }
    }
  }
}
