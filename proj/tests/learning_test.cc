// Copyright 2026 The sigbsg Authors.
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

#include "sigbsg/learning.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <vector>

#include "sigbsg/game_io.hpp"
#include "test_util.hpp"

namespace sigbsg {
namespace {

TEST(CounterRng, StreamsAreIndependentOfDrawOrder) {
  CounterRng a(42, CounterRng::kNature), b(42, CounterRng::kLeader);
  const std::uint64_t a0 = a.NextU64();
  CounterRng b2(42, CounterRng::kLeader);
  for (int i = 0; i < 10; ++i) b2.NextU64();  // advancing one stream
  CounterRng a2(42, CounterRng::kNature);
  EXPECT_EQ(a2.NextU64(), a0);  // leaves the other untouched
  EXPECT_NE(a0, b.NextU64());
  CounterRng c(43, CounterRng::kNature);
  EXPECT_NE(a0, c.NextU64());
}

TEST(CounterRng, UniformsAreInUnitInterval) {
  CounterRng r(1, CounterRng::kHedge);
  double total = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.NextUniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    total += u;
  }
  EXPECT_NEAR(total / 100000, 0.5, 0.01);
}

TEST(EmpiricalDistribution, Counting) {
  EXPECT_EQ(EmpiricalDistribution(std::vector<int>{}, 3, 0), Eigen::Vector3d::Constant(1.0 / 3));
  const Eigen::VectorXd mu = EmpiricalDistribution(std::vector<int>{0, 0, 1}, 2, 3);
  EXPECT_NEAR(mu(0), 2.0 / 3, 1e-15);
  EXPECT_NEAR(mu(1), 1.0 / 3, 1e-15);
  EXPECT_EQ(EmpiricalDistribution(std::vector<int>{0, 0, 0, 0}, 3, 4), Eigen::Vector3d(1, 0, 0));
}

TEST(SimulateFtlIc, FirstRoundUsesTheUniformPrior) {
  const Game g = RunningExampleGame();
  SimulationConfig c;
  c.horizon = 1;
  c.seed = 3;
  const SimulationTrace trace = SimulateFtlIc(g, g.prior, c);
  ASSERT_EQ(trace.rounds.size(), 1u);
  const Commitment sigma = SolveSigLp(g, Eigen::Vector2d(0.5, 0.5)).commitment;
  const RoundRecord& r = trace.rounds[0];
  EXPECT_NEAR(r.expected_reward, IcValue(g, sigma, r.true_type), 1e-15);
  EXPECT_GT(sigma.correlation[r.true_type](r.leader_action, r.signal), 0.0);
}

TEST(SimulateFtlIc, RoundsAreTruthfulObedientAndConsistent) {
  const Game g = RunningExampleGame();
  SimulationConfig c;
  c.horizon = 300;
  c.seed = 12;
  const SimulationTrace trace = SimulateFtlIc(g, g.prior, c);
  EXPECT_LE(trace.max_ic_violation, 1e-7);
  EXPECT_LE(trace.max_obedience_violation, 1e-7);
  EXPECT_EQ(trace.lp_solves, 300);
  for (const auto& r : trace.rounds) {
    EXPECT_EQ(r.reported_type, r.true_type);
    EXPECT_EQ(r.follower_action, r.signal);
    EXPECT_EQ(r.payoff, g.leader_payoff(r.leader_action, r.follower_action));
  }
}

TEST(SimulateFtlIc, DegeneratePriorFreezesTheCommitment) {
  const Game g = RunningExampleGame();
  SimulationConfig c;
  c.horizon = 50;
  c.seed = 1;
  const SimulationTrace trace = SimulateFtlIc(g, Eigen::Vector2d(1.0, 0.0), c);
  std::set<double> rewards;
  for (const auto& r : trace.rounds) {
    EXPECT_EQ(r.true_type, 0);
    if (r.t >= 2) rewards.insert(r.expected_reward);
  }
  EXPECT_EQ(rewards.size(), 1u);
}

TEST(SimulateFtlIc, ResolvePeriodLimitsSolves) {
  const Game g = RunningExampleGame();
  SimulationConfig c;
  c.horizon = 100;
  c.resolve_period = 25;
  EXPECT_EQ(SimulateFtlIc(g, g.prior, c).lp_solves, 4);
  c.resolve_period = 0;
  EXPECT_THROW(SimulateFtlIc(g, g.prior, c), ValidationError);
}

TEST(BuildArmSet, ArmsAreConsistentAndSelfReporting) {
  const Game g = RunningExampleGame();
  const ArmSet arms = BuildArmSet(g);
  ASSERT_GT(arms.arms.size(), 1u);
  for (std::size_t a = 0; a < arms.arms.size(); ++a) {
    EXPECT_LE(ConsistencyResidual(arms.arms[a]), 1e-9);
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(arms.reward(static_cast<int>(a), k),
                  LeaderReportValue(g, arms.arms[a],
                                    OptimalReport(g, arms.arms[a], k), k),
                  1e-15);
    }
  }
}

TEST(BuildArmSet, ConstantLeaderPayoffMeansEqualRewards) {
  Game g = RunningExampleGame();
  g.leader_payoff.setConstant(0.3);
  const ArmSet arms = BuildArmSet(g);
  EXPECT_NEAR(arms.reward.maxCoeff(), 0.3, 1e-12);
  EXPECT_NEAR(arms.reward.minCoeff(), 0.3, 1e-12);
}

TEST(SimulateHedge, SingleArmHasNoRegret) {
  const Game g = RunningExampleGame();
  ArmSet full = BuildArmSet(g);
  ArmSet one;
  one.atlas = full.atlas;
  one.arms = {full.arms[0]};
  one.vectors = {full.vectors[0]};
  one.reward = full.reward.topRows(1);
  SimulationConfig c;
  c.algorithm = Algorithm::kHedge;
  c.horizon = 200;
  const SimulationTrace trace = SimulateHedge(g, g.prior, c, one);
  const Metrics m = ComputeMetrics(trace, 0.5, one.reward);
  for (double r : m.cum_regret) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(SimulateHedge, WeightsStayNormalized) {
  const Game g = RunningExampleGame();
  SimulationConfig c;
  c.algorithm = Algorithm::kHedge;
  c.horizon = 2000;
  c.eta = 5.0;  // aggressive, to stress the log-domain bookkeeping
  const SimulationTrace trace = SimulateHedge(g, g.prior, c);
  for (double e : trace.hedge_mass_error) ASSERT_LE(e, 1e-12);
}

TEST(SimulateHedge, AlternatingTypesBypassThePrior) {
  const Game g = RunningExampleGame();
  SimulationConfig c;
  c.algorithm = Algorithm::kHedge;
  c.horizon = 10;
  c.types = TypeSequence::kAlternating;
  const SimulationTrace trace = SimulateHedge(g, Eigen::Vector2d(1.0, 0.0), c);
  for (const auto& r : trace.rounds) EXPECT_EQ(r.true_type, (r.t - 1) % 2);
}

TEST(ComputeMetrics, EmptyTrace) {
  const Metrics m = ComputeMetrics(SimulationTrace{}, 0.7, Eigen::MatrixXd::Ones(3, 2));
  EXPECT_EQ(m.gap, 0.0);
  EXPECT_EQ(m.regret, 0.0);
  EXPECT_TRUE(m.cum_gap.empty());
}

TEST(ComputeMetrics, BestFixedArmHasZeroRegret) {
  Eigen::MatrixXd reward(2, 2);
  reward << 0.2, 0.9,
            0.6, 0.5;
  SimulationTrace trace;
  for (int t = 1; t <= 4; ++t) {
    RoundRecord r;
    r.t = t;
    r.true_type = t % 2;
    r.expected_reward = reward(0, r.true_type);
    r.payoff = 1.0;
    trace.rounds.push_back(r);
  }
  const Metrics m = ComputeMetrics(trace, 0.75, reward);
  EXPECT_NEAR(m.regret, 0.0, 1e-15);  // arm 0 totals 2.2 against arm 1's 2.2
  EXPECT_NEAR(m.gap, 0.75 * 4 - 4.0, 1e-15);
  for (double r : m.cum_regret) EXPECT_NEAR(r, 0.0, 1e-15);
}

TEST(WriteTraceCsv, HeaderAndRowCount) {
  const Game g = RunningExampleGame();
  SimulationConfig c;
  c.horizon = 5;
  const SimulationTrace trace = SimulateFtlIc(g, g.prior, c);
  std::ostringstream os;
  WriteTraceCsv(os, trace, ComputeMetrics(trace, 0.7, Eigen::MatrixXd::Zero(1, 2)));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line,
            "t,true_type,reported_type,leader_action,signal,follower_action,payoff,"
            "cum_payoff,cum_gap,cum_regret");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

}  // namespace
}  // namespace sigbsg
