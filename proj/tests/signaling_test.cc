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

#include "sigbsg/signaling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "sigbsg/game_io.hpp"
#include "sigbsg/io.hpp"
#include "test_util.hpp"

namespace sigbsg {
namespace {

// Independent evaluation straight from the correlation matrices: a type
// reporting r sees signal j with unnormalized weights C^r(., j), picks the
// follower-best action (leader-best among ties, then lowest index) and the
// leader collects the matching column sum.
struct Outcome {
  double follower;
  double leader;
};

Outcome Evaluate(const Game& g, const Commitment& sigma, int reported, int truth) {
  Outcome out{0.0, 0.0};
  const Eigen::MatrixXd& c = sigma.correlation[reported];
  for (int j = 0; j < c.cols(); ++j) {
    const double nu = c.col(j).sum();
    if (nu <= 1e-12) continue;
    double best_f = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < g.num_follower_actions(); ++a) {
      best_f = std::max(best_f, c.col(j).dot(g.follower(truth).col(a)) / nu);
    }
    double best_l = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < g.num_follower_actions(); ++a) {
      if (c.col(j).dot(g.follower(truth).col(a)) / nu >= best_f - 1e-9) {
        best_l = std::max(best_l, c.col(j).dot(g.leader_payoff.col(a)));
      }
    }
    out.follower += best_f * nu;
    out.leader += best_l;
  }
  return out;
}

double EnumeratedObjective(const Game& g, const Commitment& sigma) {
  double total = 0.0;
  for (int k = 0; k < g.num_types(); ++k) {
    int best = 0;
    for (int r = 1; r < g.num_types(); ++r) {
      if (Evaluate(g, sigma, r, k).follower >
          Evaluate(g, sigma, best, k).follower + 1e-9) {
        best = r;
      }
    }
    total += g.prior(k) * Evaluate(g, sigma, best, k).leader;
  }
  return total;
}

TEST(CommitmentToBeliefs, MarketEntryPosteriors) {
  const Game g = RunningExampleGame();
  const BeliefDistribution pi = CommitmentToBeliefs(g, RunningExampleCommitment());
  ASSERT_EQ(pi.support(0).size(), 2u);
  EXPECT_NEAR(pi.support(0)[0].weight, 0.75, 1e-15);
  EXPECT_NEAR(pi.support(0)[0].belief(1), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(pi.support(0)[1].weight, 0.25, 1e-15);
  EXPECT_NEAR(pi.support(0)[1].belief(2), 1.0, 1e-15);
  // The second type's unused signal is dropped.
  ASSERT_EQ(pi.support(1).size(), 1u);
  EXPECT_NEAR(pi.support(1)[0].belief(1), 0.5, 1e-15);
  EXPECT_LE(ConsistencyResidual(pi), 1e-15);
}

TEST(Reports, MarketEntryValues) {
  const Game g = RunningExampleGame();
  const BeliefDistribution pi = CommitmentToBeliefs(g, RunningExampleCommitment());
  EXPECT_NEAR(ReportValue(g, pi, 0, 0), 0.5, 1e-15);
  EXPECT_NEAR(ReportValue(g, pi, 1, 0), 0.5, 1e-15);
  EXPECT_NEAR(ReportValue(g, pi, 1, 1), 0.0, 1e-15);
  EXPECT_NEAR(ReportValue(g, pi, 0, 1), 0.25, 1e-15);
  EXPECT_EQ(OptimalReport(g, pi, 0), 0);  // tie, smallest index
  EXPECT_EQ(OptimalReport(g, pi, 1), 0);  // the misreport
  EXPECT_NEAR(TruthfulLeaderObjective(g, pi), 0.8625, 1e-12);
  EXPECT_NEAR(LeaderObjective(g, pi), 0.525, 1e-12);
}

TEST(LeaderObjective, MatchesSignalEnumerationOnRandomCommitments) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Game g = testing::RandomGame(rng, 3, 3, 2);
    const Commitment sigma = testing::RandomCommitment(rng, g, 3);
    const BeliefDistribution pi = CommitmentToBeliefs(g, sigma);
    EXPECT_NEAR(LeaderObjective(g, pi), EnumeratedObjective(g, sigma), 1e-9);
  }
  const Game g = RunningExampleGame();
  EXPECT_NEAR(EnumeratedObjective(g, RunningExampleCommitment()), 0.525, 1e-12);
}

TEST(BeliefsToCommitment, RoundTripPreservesValues) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Game g = testing::RandomGame(rng, 3, 2, 3);
    const BeliefDistribution pi =
        CommitmentToBeliefs(g, testing::RandomCommitment(rng, g, 4));
    const Commitment sigma = BeliefsToCommitment(g, pi);
    EXPECT_NO_THROW(sigma.Validate(g));
    const BeliefDistribution back = CommitmentToBeliefs(g, sigma);
    for (int k = 0; k < 3; ++k) {
      for (int r = 0; r < 3; ++r) {
        EXPECT_NEAR(ReportValue(g, back, r, k), ReportValue(g, pi, r, k), 1e-12);
        EXPECT_NEAR(LeaderReportValue(g, back, r, k),
                    LeaderReportValue(g, pi, r, k), 1e-12);
      }
    }
  }
}

TEST(BeliefsToCommitment, RejectsInconsistentDistributions) {
  const Game g = RunningExampleGame();
  BeliefDistribution pi;
  pi.per_type = {{{Belief{1.0, 0.0, 0.0}, 1.0}}, {{Belief{0.0, 1.0, 0.0}, 1.0}}};
  EXPECT_THROW(BeliefsToCommitment(g, pi), ValidationError);
}

TEST(ConvexDecompose, ReconstructsTheBelief) {
  const Game g = RunningExampleGame();
  const Polytope region = BrRegion(g, 0, 0);
  const auto vertices = EnumerateVertices(region);
  const Belief b{0.1, 0.8, 0.1};
  const auto w = ConvexDecompose(b, region, vertices);
  Eigen::VectorXd rebuilt = Eigen::VectorXd::Zero(3);
  double total = 0.0;
  for (std::size_t v = 0; v < w.size(); ++v) {
    EXPECT_GE(w[v], -1e-12);
    rebuilt += w[v] * vertices[v];
    total += w[v];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_LE((rebuilt - b.coords()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(ConvexDecompose(Belief{0, 0, 1}, region, vertices), ValidationError);
}

// Moving posteriors to region vertices keeps every follower utility, hence
// the reports; the leader can only gain, because at a vertex the follower's
// ties are broken in her favor.
TEST(ReduceToAtlas, KeepsFollowerUtilitiesAndReports) {
  const Game g = RunningExampleGame();
  const BeliefAtlas atlas = BuildBeliefAtlas(g);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const BeliefDistribution pi =
        CommitmentToBeliefs(g, testing::RandomCommitment(rng, g, 3));
    const BeliefDistribution hat = ReduceToAtlas(g, pi, atlas);
    EXPECT_LE(ConsistencyResidual(hat, atlas), 1e-9);
    for (int t = 0; t < 2; ++t) {
      EXPECT_LE((hat.Marginal(t) - pi.Marginal(t)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_EQ(OptimalReport(g, hat, t), OptimalReport(g, pi, t));
      for (int r = 0; r < 2; ++r) {
        EXPECT_NEAR(ReportValue(g, hat, r, t), ReportValue(g, pi, r, t), 1e-9);
        EXPECT_GE(LeaderReportValue(g, hat, r, t),
                  LeaderReportValue(g, pi, r, t) - 1e-9);
      }
    }
  }
}

TEST(ReduceToAtlas, AtlasSupportedInputIsUnchanged) {
  const Game g = RunningExampleGame();
  const BeliefAtlas atlas = BuildBeliefAtlas(g);
  const BeliefDistribution pi = CommitmentToBeliefs(g, RunningExampleCommitment());
  const BeliefDistribution hat = ReduceToAtlas(g, pi, atlas);
  EXPECT_LE((ToAtlasVector(hat, atlas) - ToAtlasVector(pi, atlas)).cwiseAbs().maxCoeff(),
            1e-12);
  EXPECT_NEAR(LeaderObjective(g, hat), 0.525, 1e-12);
}

}  // namespace
}  // namespace sigbsg
