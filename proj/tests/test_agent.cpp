// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "uavir/agent.hpp"

using namespace uavir;

namespace {

Scene scene() {
  Rng rng = make_rng(2024, 0);
  return make_crossing_scene(CrossingLayout{}, rng);
}

FeatureEncoder encoder(const Scene& s) {
  FeatureEncoder e;
  e.bs_position = s.bs_position;
  return e;
}

AgentParams params(double eps) {
  AgentParams p;
  p.explore_initial = eps;
  p.explore_floor = eps;
  p.explore_decay = 1.0;
  return p;
}

}  // namespace

TEST_CASE("reward examples") {
  CHECK(reward(0.0, 5e8, 0.1) == doctest::Approx(5e7));
  CHECK(reward(3.0, 5e8, 0.1) == 0.0);
  CHECK(reward(0.0, 0.0, 0.1) == 0.0);
}

TEST_CASE("greedy policy sits above the latest UE position") {
  UeState ue;
  ue.position = {10, 5, 1.5};
  CHECK(greedy_policy(ue, 40) == Vec3{10, 5, 40});
  CHECK(greedy_policy(ue, 40) == greedy_policy(ue, 40));
  ue.position = {10.25, 4.5, 1.5};
  CHECK(greedy_policy(ue, 40) == Vec3{10.25, 4.5, 40});
}

TEST_CASE("candidate grid") {
  const Scene s = scene();
  Agent open(params(0.0), std::make_unique<TabularValueModel>(1.0), encoder(s), s);
  const auto c = open.candidates({0, 0});
  CHECK(c.size() == 81);
  for (const auto& p : c) CHECK(p.z == 40.0);
  CHECK(c.front() == Vec3{-8, -8, 40});
  CHECK(c.back() == Vec3{8, 8, 40});

  // Below the roofline some points fall inside buildings and are dropped.
  AgentParams low = params(0.0);
  low.altitude = 10;
  Agent lowa(low, std::make_unique<TabularValueModel>(1.0), encoder(s), s);
  const auto cl = lowa.candidates({7, 7});
  CHECK(cl.size() < 81);
  for (const auto& p : cl) CHECK_FALSE(s.inside_obstacle(p));

  // Far outside the scene every grid point is rejected; the fallback is the
  // clamped point above μ.
  const auto far = open.candidates({1000, 0});
  REQUIRE(far.size() == 1);
  CHECK(far[0].x == s.bounds_hi.x);
  CHECK(far[0].y == 0.0);
}

TEST_CASE("full tie goes to the nearest candidate") {
  const Scene s = scene();
  Agent agent(params(0.0), std::make_unique<TabularValueModel>(1.0), encoder(s), s);
  const auto c = agent.candidates({0, 0});
  const std::vector<double> values(c.size(), 0.0);
  Rng rng(1);
  const Vec3 current{3.1, -1.8, 40};
  const std::size_t k = agent.select_action(values, c, current, rng);
  CHECK(c[k] == Vec3{4, -2, 40});

  // Equidistant: lexicographically smaller wins.
  const std::size_t m = agent.select_action(values, c, {1, 0, 40}, rng);
  CHECK(c[m] == Vec3{0, 0, 40});
}

TEST_CASE("a single better value wins at zero exploration") {
  const Scene s = scene();
  Agent agent(params(0.0), std::make_unique<TabularValueModel>(1.0), encoder(s), s);
  const auto c = agent.candidates({0, 0});
  std::vector<double> values(c.size(), 0.0);
  values[17] = 1.0;
  Rng rng(2);
  bool explored = true;
  CHECK(agent.select_action(values, c, {0, 0, 40}, rng, &explored) == 17);
  CHECK_FALSE(explored);
}

TEST_CASE("full exploration is uniform over candidates") {
  const Scene s = scene();
  Agent agent(params(1.0), std::make_unique<TabularValueModel>(1.0), encoder(s), s);
  const auto c = agent.candidates({0, 0});
  const std::vector<double> values(c.size(), 0.0);
  std::vector<int> hits(c.size(), 0);
  Rng rng(3);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) ++hits[agent.select_action(values, c, {0, 0, 40}, rng)];
  const double expect = static_cast<double>(draws) / static_cast<double>(c.size());
  double chi2 = 0;
  for (int h : hits) chi2 += (h - expect) * (h - expect) / expect;
  // 80 degrees of freedom; 124.8 is the 0.999 quantile.
  CHECK(chi2 < 124.8);
}

TEST_CASE("exploration decays geometrically to its floor") {
  const Scene s = scene();
  AgentParams p;
  Agent agent(p, std::make_unique<TabularValueModel>(1.0), encoder(s), s);
  const auto c = agent.candidates({0, 0});
  const std::vector<double> values(c.size(), 0.0);
  Rng rng(4);
  CHECK(agent.exploration() == 0.3);
  for (int i = 0; i < 100; ++i) agent.select_action(values, c, {0, 0, 40}, rng);
  CHECK(agent.exploration() == doctest::Approx(0.3 * std::pow(0.999, 100)).epsilon(1e-12));
  for (int i = 0; i < 10000; ++i) agent.select_action(values, c, {0, 0, 40}, rng);
  CHECK(agent.exploration() == 0.01);
  CHECK(agent.decisions() == 10100);
}

TEST_CASE("scripted three-slot trace with a table and gamma zero") {
  const Scene s = scene();
  AgentParams p = params(0.0);
  p.gamma = 0.0;
  auto table = std::make_unique<TabularValueModel>(1.0);
  const TabularValueModel* q = table.get();
  const FeatureEncoder enc = encoder(s);
  Agent agent(p, std::move(table), enc, s);
  Rng rng(5);

  Eigen::RowVectorXcd strong = Eigen::RowVectorXcd::Constant(16, {1e-4, 0});
  Eigen::RowVectorXcd weak = Eigen::RowVectorXcd::Constant(16, {1e-9, 0});

  SlotObservation o1;
  o1.h = strong;
  o1.los = true;
  o1.uav_position = {0, 0, 40};
  o1.ue.position = {1, 0, 1.5};
  o1.predicted = {1, 0};
  o1.reward_bits = 4e7;
  o1.decoded = true;
  const Decision d1 = agent.on_communication_slot(o1, rng);
  CHECK_FALSE(d1.target);
  CHECK_FALSE(agent.has_pending());
  const Features f1 = enc.encode(o1.h, true, false, o1.uav_position, {1, 0}, 0.0, {1, 0});
  CHECK(q->value(f1) == 4e7);

  SlotObservation o2 = o1;
  o2.h = weak;
  o2.los = false;
  o2.reward_bits = 0.0;
  o2.decoded = false;
  o2.ue.position = {1.1, 0, 1.5};
  o2.predicted = {2.1, 0};
  const Decision d2 = agent.on_communication_slot(o2, rng);
  REQUIRE(d2.target);
  CHECK(agent.has_pending());
  const Features f2 = enc.encode(o2.h, false, false, *d2.target, {1.1, 0}, 0.0, {2.1, 0});
  CHECK(q->value(f2) == 0.0);

  SlotObservation o3 = o1;
  o3.uav_position = *d2.target;
  o3.ue.position = {1.3, 0, 1.5};
  o3.predicted = {2.3, 0};
  o3.reward_bits = 3e7;
  const Decision d3 = agent.on_communication_slot(o3, rng);
  CHECK_FALSE(d3.target);
  CHECK_FALSE(agent.has_pending());
  // The move is now judged by the first reward after arrival.
  CHECK(q->value(f2) == 3e7);
  const Features f3 = enc.encode(o3.h, true, false, o3.uav_position, {1.3, 0}, 0.0, {2.3, 0});
  CHECK(q->value(f3) == 3e7);
  CHECK(q->value(f1) == 4e7);
}

TEST_CASE("terminal slot fits r alone and never relocates") {
  const Scene s = scene();
  AgentParams p = params(0.0);
  p.gamma = 0.5;
  auto table = std::make_unique<TabularValueModel>(1.0);
  const TabularValueModel* q = table.get();
  const FeatureEncoder enc = encoder(s);
  Agent agent(p, std::move(table), enc, s);
  Rng rng(6);

  SlotObservation o;
  o.h = Eigen::RowVectorXcd::Constant(16, {1e-9, 0});
  o.uav_position = {5, 5, 40};
  o.ue.position = {0, 0, 1.5};
  o.reward_bits = 0.0;
  o.decoded = false;
  const Decision d = agent.on_communication_slot(o, rng);
  REQUIRE(d.target);
  CHECK(*d.target == Vec3{4, 4, 40});
  REQUIRE(agent.has_pending());

  SlotObservation t = o;
  t.uav_position = *d.target;
  t.reward_bits = 2.0;
  t.decoded = false;
  t.terminal = true;
  const Decision dt = agent.on_communication_slot(t, rng);
  CHECK_FALSE(dt.target);
  CHECK_FALSE(agent.has_pending());
  const Features ft = enc.encode(t.h, false, false, t.uav_position, {0, 0}, 0.0, {0, 0});
  CHECK(q->value(ft) == 2.0);
}

TEST_CASE("arrival-only bootstrap defers the fit until arrival") {
  const Scene s = scene();
  AgentParams p = params(0.0);
  p.bootstrap = Bootstrap::arrival_only;
  auto table = std::make_unique<TabularValueModel>(1.0);
  const TabularValueModel* q = table.get();
  Agent agent(p, std::move(table), encoder(s), s);
  Rng rng(7);
  SlotObservation o;
  o.h = Eigen::RowVectorXcd::Constant(16, {1e-9, 0});
  o.uav_position = {5, 5, 40};
  o.ue.position = {0, 0, 1.5};
  const Decision d = agent.on_communication_slot(o, rng);
  CHECK(d.target);
  CHECK(q->size() == 0);
}

TEST_CASE("rewards are scaled before they reach the model") {
  const Scene s = scene();
  AgentParams p = params(0.0);
  p.reward_scale = 1e7;
  auto table = std::make_unique<TabularValueModel>(1.0);
  const TabularValueModel* q = table.get();
  const FeatureEncoder enc = encoder(s);
  Agent agent(p, std::move(table), enc, s);
  Rng rng(8);
  SlotObservation o;
  o.h = Eigen::RowVectorXcd::Constant(16, {1e-4, 0});
  o.los = true;
  o.uav_position = {0, 0, 40};
  o.reward_bits = 5e7;
  o.decoded = true;
  agent.on_communication_slot(o, rng);
  CHECK(q->value(enc.encode(o.h, true, false, o.uav_position, {0, 0}, 0.0, {0, 0})) == 5.0);
}

TEST_CASE("same observations and seed give the same decisions") {
  const Scene s = scene();
  const FeatureEncoder enc = encoder(s);
  Rng init(9);
  const ValueNetwork net(ValueNetwork::Layout{}, init);
  std::vector<Vec3> a, b;
  for (auto* out : {&a, &b}) {
    Agent agent(params(0.0), std::make_unique<NeuralValueModel>(net), enc, s);
    Rng rng(10);
    for (int i = 0; i < 20; ++i) {
      SlotObservation o;
      o.h = Eigen::RowVectorXcd::Constant(16, {1e-9 * (i + 1), 0});
      o.uav_position = {0, 0, 40};
      o.ue.position = {0.1 * i, 0, 1.5};
      o.predicted = {0.1 * i + 1, 0};
      const Decision d = agent.on_communication_slot(o, rng);
      out->push_back(d.target.value_or(o.uav_position));
    }
  }
  CHECK(a == b);
}
