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

#include "sigbsg/equilibrium.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <limits>
#include <random>

#include "sigbsg/game_io.hpp"
#include "sigbsg/io.hpp"
#include "test_util.hpp"

namespace sigbsg {
namespace {

// Leader value of committing to x without signaling, each type best
// responding to the prior-free belief x.
double NoSignalValue(const Game& g, const Eigen::VectorXd& x) {
  double total = 0.0;
  for (int k = 0; k < g.num_types(); ++k) {
    total += g.prior(k) * LeaderBeliefValue(g, k, Belief(x));
  }
  return total;
}

// Grid search over the leader simplex with the given resolution.
double GridBse(const Game& g, int resolution) {
  double best = -std::numeric_limits<double>::infinity();
  const int m = g.num_leader_actions();
  std::vector<int> c(m, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == m - 1) {
      c[i] = left;
      Eigen::VectorXd x(m);
      for (int a = 0; a < m; ++a) x(a) = static_cast<double>(c[a]) / resolution;
      best = std::max(best, NoSignalValue(g, x));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, resolution);
  return best;
}

TEST(SolveBse, MarketEntryValue) {
  const Game g = RunningExampleGame();
  const SolveResult r = SolveBse(g);
  EXPECT_NEAR(r.value, 0.55, 1e-9);
  EXPECT_NEAR(NoSignalValue(g, r.commitment.x), r.value, 1e-9);
  EXPECT_NEAR(GridBse(g, 60), 0.55, 1e-12);
}

TEST(SolveBse, NeverBeatenByGridSearch) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = testing::RandomGame(rng, 3, 3, 2);
    const SolveResult r = SolveBse(g);
    EXPECT_GE(r.value, GridBse(g, 30) - 1e-9);
    // The committed strategy delivers the value under leader-favoring ties,
    // up to vertex degeneracy at the LP tolerance.
    EXPECT_NEAR(NoSignalValue(g, r.commitment.x), r.value, 1e-6);
  }
}

TEST(SolveSigLp, CommitmentIsObedientAndTruthful) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = testing::RandomGame(rng, 3, 3, 3);
    const SolveResult r = SolveSigLp(g);
    EXPECT_NO_THROW(r.commitment.Validate(g));
    EXPECT_LE(ObedienceViolation(g, r.commitment), 1e-7);
    EXPECT_LE(IcViolation(g, r.commitment), 1e-7);
    double value = 0.0;
    for (int k = 0; k < 3; ++k) value += g.prior(k) * IcValue(g, r.commitment, k);
    EXPECT_NEAR(value, r.value, 1e-9);
    EXPECT_GE(r.value, SolveBse(g).value - 1e-7);
  }
}

TEST(SolveSigLp, RejectsMalformedPrior) {
  const Game g = RunningExampleGame();
  EXPECT_THROW(SolveSigLp(g, Eigen::Vector2d(0.7, 0.7)), ValidationError);
}

TEST(SolveSigLp, SingleTypeIsPlainPersuasion) {
  // theta1 alone leaves under certainty of low cost, so committing to i1
  // earns the leader 1 in every round.
  Game single = RunningExampleGame();
  single.follower_payoff.resize(1);
  single.type_names.resize(1);
  single.prior = Eigen::VectorXd::Ones(1);
  EXPECT_NEAR(SolveSigLp(single).value, 1.0, 1e-9);
  EXPECT_NEAR(SolveEpsSigBse(single, 1e-6).value, 1.0, 1e-6);
}

TEST(SolveEpsSigBse, AttainsTheSupremumWithinEpsilon) {
  const Game g = RunningExampleGame();
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const SolveResult r = SolveEpsSigBse(g, eps);
    const double sup = r.diagnostics.counters.at("sup_estimate");
    EXPECT_GE(r.value, sup - eps - 1e-9) << eps;
    EXPECT_LE(r.value, sup + 1e-9);
    ASSERT_TRUE(r.distribution.has_value());
    EXPECT_NEAR(LeaderObjective(g, *r.distribution), r.value, 1e-9);
    // The commitment reproduces the distribution's value.
    EXPECT_NEAR(LeaderObjective(g, CommitmentToBeliefs(g, r.commitment)), r.value,
                1e-9);
  }
}

TEST(SolveEpsSigBse, SupremumMatchesTheIcLpOnMarketEntry) {
  const Game g = RunningExampleGame();
  const SolveResult r = SolveEpsSigBse(g, 1e-6);
  EXPECT_NEAR(r.diagnostics.counters.at("sup_estimate"), SolveSigLp(g).value, 1e-9);
}

TEST(SolveEpsSigBse, BothRoutesAgree) {
  std::mt19937_64 rng(44);
  EpsOptions enumerate;
  enumerate.method = EpsMethod::kCandidateSet;
  for (int trial = 0; trial < 8; ++trial) {
    const Game g = testing::RandomGame(rng, 2, 2, 2);
    const SolveResult a = SolveEpsSigBse(g, 1e-4);
    const SolveResult b = SolveEpsSigBse(g, 1e-4, enumerate);
    EXPECT_NEAR(a.diagnostics.counters.at("sup_estimate"),
                b.diagnostics.counters.at("sup_estimate"), 1e-9);
    EXPECT_NEAR(a.value, b.value, 1e-4);
  }
}

TEST(SolveEpsSigBse, RejectsNonPositiveEpsilon) {
  const Game g = RunningExampleGame();
  EXPECT_THROW(SolveEpsSigBse(g, 0.0), ValidationError);
  EXPECT_THROW(SolveEpsSigBse(g, -1.0), ValidationError);
}

TEST(CandidateSet, MembersLieInTheirPieces) {
  const Game g = RunningExampleGame();
  const BeliefAtlas atlas = BuildBeliefAtlas(g);
  const CandidateSet set = BuildCandidateSet(g, atlas, 1e-3);
  ASSERT_FALSE(set.members.empty());
  for (const auto& cand : set.members) {
    EXPECT_TRUE(PartitionPolytope(g, atlas, cand.gamma).Contains(cand.pi));
    EXPECT_LE((cand.pi - cand.vertex).norm(), set.delta + 1e-12);
  }
}

TEST(BruteForceOracle, StaysBelowTheSolver) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const Game g = testing::RandomGame(rng, 2, 2, 2);
    const OracleResult o = BruteForceOracle(g, 0.25);
    EXPECT_LE(o.value, SolveEpsSigBse(g, 1e-4).value + 1e-4);
    EXPECT_NEAR(LeaderObjective(g, CommitmentToBeliefs(g, o.commitment)), o.value,
                1e-9);
  }
  EXPECT_THROW(BruteForceOracle(RunningExampleGame(), 0.3), ValidationError);
}

}  // namespace
}  // namespace sigbsg
