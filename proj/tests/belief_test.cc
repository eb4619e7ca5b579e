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
#include "vetoshield/belief.h"
#include "vetoshield/error.h"

namespace vs = vetoshield;
namespace vt = vetoshield::testing;

namespace {

std::shared_ptr<const vs::TypeSpace> Space(std::vector<int> counts) {
  return std::make_shared<const vs::TypeSpace>(vs::TypeSpace::FromCounts(counts));
}

}  // namespace

TEST_CASE("conditioning on a type") {
  auto space = Space({2, 2});
  const vs::InformationStructure info(space, {0.1, 0.3, 0.2, 0.4});
  const auto c = vs::ConditionOnType(info, 0, 1);
  CHECK(c[0] == doctest::Approx(1.0 / 3));
  CHECK(c[1] == doctest::Approx(2.0 / 3));
}

TEST_CASE("post-veto structure pastes q onto the co-marginal") {
  auto space = Space({2, 3});
  vt::Rng rng(4);
  const auto prior = vs::InformationStructure::Normalized(
      space, vt::RandomSimplexPoint(rng, 6));
  const std::vector<double> q = {0.2, 0.8};
  const auto post = vs::PostVetoStructure(prior, {0, q});
  CHECK(vt::OpacityGap(post, 0, q) < 1e-15);
  const auto m = prior.CoMarginal(0);
  for (int t = 0; t < 3; ++t) CHECK(post.CoMarginal(0)[t] == doctest::Approx(m[t]));
}

TEST_CASE("updating on a signal is Bayes' rule") {
  vt::Rng rng(5);
  auto space = Space({2, 3});
  for (int k = 0; k < 20; ++k) {
    const auto base = vs::InformationStructure::Normalized(
        space, vt::RandomSimplexPoint(rng, 6));
    const auto dev = vt::RandomDevice(rng, space, 3);
    const auto split = vt::SplitByDevice(base, dev);
    size_t next = 0;
    for (int s = 0; s < dev.num_signals(); ++s) {
      const double pr = vs::SignalProbability(base, dev, s);
      if (pr <= 0.0) {
        CHECK_THROWS_AS(vs::UpdateOnSignal(base, dev, s), vs::Error);
        continue;
      }
      REQUIRE(next < split.size());
      CHECK(pr == doctest::Approx(split[next].first));
      const auto post = vs::UpdateOnSignal(base, dev, s);
      for (int p = 0; p < 6; ++p) {
        CHECK(post.mass(p) == doctest::Approx(split[next].second[p]));
      }
      ++next;
    }
  }
}

TEST_CASE("fully revealing device splits into point beliefs") {
  auto space = Space({3, 1});
  const vs::InformationStructure base(space, {0.2, 0.3, 0.5});
  const auto lot =
      vs::DeviceToLottery(base, vs::SignalingDevice::FullyRevealing(space, 0));
  REQUIRE(lot.atoms.size() == 3);
  for (const auto& a : lot.atoms) {
    const auto m = a.posterior.Marginal(0);
    CHECK(*std::max_element(m.begin(), m.end()) == doctest::Approx(1.0));
  }
  CHECK(vs::CheckBayesPlausible(lot, base).ok);
}

TEST_CASE("an implausible lottery is rejected") {
  auto space = Space({2, 1});
  const vs::InformationStructure base(space, {0.5, 0.5});
  vs::PosteriorLottery lot;
  lot.atoms.push_back({1.0, vs::InformationStructure(space, {1.0, 0.0}), {}});
  const auto rep = vs::CheckBayesPlausible(lot, base);
  CHECK_FALSE(rep.ok);
  CHECK(rep.max_deviation == doctest::Approx(0.5));
}

TEST_CASE("ignoring the deviator's channel averages over its reports") {
  auto space = Space({2, 2});
  vs::SignalChannel c0{0, {"a", "b"}, {{1.0, 0.0}, {0.0, 1.0}}};
  vs::SignalChannel c1{1, {"x", "y"}, {{0.9, 0.1}, {0.3, 0.7}}};
  const auto dev = vs::SignalingDevice::Product(space, {c0, c1});
  // Signal (a, y) at profile (t0, t1) with player 0 ignored: 0.5 * 1 * 0.7.
  const int s = 1;  // "a|y" is the second realization
  const int prof = space->Encode(std::vector<int>{0, 1});
  CHECK(dev.Likelihood(s, prof) == doctest::Approx(0.7));
  CHECK(dev.LikelihoodIgnoring(s, prof, 0) == doctest::Approx(0.35));
}

TEST_CASE("canonical lotteries merge equal posteriors") {
  auto space = Space({2, 1});
  const vs::InformationStructure a(space, {1.0, 0.0});
  vs::PosteriorLottery lot;
  lot.atoms.push_back({0.25, a, {0}});
  lot.atoms.push_back({0.25, a, {1}});
  lot.atoms.push_back({0.5, vs::InformationStructure(space, {0.0, 1.0}), {2}});
  lot.atoms.push_back({0.0, vs::InformationStructure(space, {0.5, 0.5}), {3}});
  const auto c = vs::CanonicalLottery(lot);
  CHECK(c.atoms.size() == 2);
  double w = 0.0;
  for (const auto& atom : c.atoms) w += atom.weight;
  CHECK(w == doctest::Approx(1.0));
}

TEST_CASE("lottery to device and back") {
  vt::Rng rng(6);
  auto space = Space({2, 2});
  const auto base = vs::InformationStructure::Normalized(
      space, vt::RandomSimplexPoint(rng, 4));
  const auto dev = vt::RandomDevice(rng, space, 3);
  const auto lot = vs::DeviceToLottery(base, dev);
  const auto back = vs::DeviceToLottery(base, vs::LotteryToDevice(lot, base));
  CHECK(vt::PlausibilityGap(back, base) < 1e-12);
  CHECK(vs::CanonicalLottery(back, 1e-9).atoms.size() ==
        vs::CanonicalLottery(lot, 1e-9).atoms.size());
}
