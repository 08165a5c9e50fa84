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

// Expected-utility functionals over belief distributions, the conversions
// between (x, C) and per-type posterior distributions, and the reduction of
// an arbitrary consistent distribution onto the belief atlas.

#ifndef SIGBSG_SIGNALING_HPP_
#define SIGBSG_SIGNALING_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "sigbsg/distribution.hpp"
#include "sigbsg/errors.hpp"
#include "sigbsg/game.hpp"
#include "sigbsg/geometry.hpp"
#include "sigbsg/lp.hpp"

namespace sigbsg {

inline constexpr double kSignalDropThreshold = 1e-12;
inline constexpr double kPosteriorMergeTolerance = 1e-9;

// Posterior b_s = C(., s) / nu_s for every signal with nu_s > 1e-12; equal
// posteriors are merged, in order of first appearance.
inline BeliefDistribution CommitmentToBeliefs(const Game& game,
                                              const Commitment& sigma) {
  sigma.Validate(game);
  BeliefDistribution pi;
  pi.per_type.resize(sigma.num_types());
  for (int t = 0; t < sigma.num_types(); ++t) {
    const Eigen::MatrixXd& c = sigma.correlation[t];
    auto& support = pi.per_type[t];
    for (int s = 0; s < c.cols(); ++s) {
      Eigen::VectorXd column = c.col(s).cwiseMax(0.0);
      const double nu = column.sum();
      if (nu <= kSignalDropThreshold) continue;
      const Belief posterior(column / nu);
      bool merged = false;
      for (auto& existing : support) {
        if (internal::Near(existing.belief.coords(), posterior.coords(),
                           kPosteriorMergeTolerance)) {
          existing.weight += nu;
          merged = true;
          break;
        }
      }
      if (!merged) support.push_back({posterior, nu});
    }
  }
  return pi;
}

// One signal per support point: C[t](i, s) = pi_t(b_s) * b_s(i).
inline Commitment BeliefsToCommitment(const Game& game,
                                      const BeliefDistribution& pi) {
  pi.Validate(game.num_leader_actions());
  if (pi.num_types() != game.num_types()) {
    throw ValidationError("distribution type count differs from the game");
  }
  if (ConsistencyResidual(pi) > 1e-9) {
    throw ValidationError("distribution is not consistent across types");
  }
  Commitment sigma;
  sigma.x = pi.Marginal(0);
  for (int t = 0; t < pi.num_types(); ++t) {
    const auto& support = pi.support(t);
    Eigen::MatrixXd c(game.num_leader_actions(), support.size());
    for (std::size_t s = 0; s < support.size(); ++s) {
      c.col(s) = support[s].weight * support[s].belief.coords();
    }
    sigma.correlation.push_back(std::move(c));
  }
  return sigma;
}

// U(pi, (reported; truth)): follower utility of `truth` reporting `reported`.
inline double ReportValue(const Game& game, const BeliefDistribution& pi,
                          int reported, int truth) {
  game.CheckType(reported);
  game.CheckType(truth);
  double total = 0.0;
  for (const auto& sp : pi.support(reported)) {
    total += sp.weight * FollowerValue(game, truth, sp.belief);
  }
  return total;
}

// psi_truth(pi): the utility-maximizing report, smallest index on ties.
inline int OptimalReport(const Game& game, const BeliefDistribution& pi,
                         int truth) {
  std::vector<double> u(game.num_types());
  for (int r = 0; r < game.num_types(); ++r) {
    u[r] = ReportValue(game, pi, r, truth);
  }
  const double top = *std::max_element(u.begin(), u.end());
  for (int r = 0; r < game.num_types(); ++r) {
    if (u[r] >= top - kPayoffTolerance) return r;
  }
  return 0;
}

// V(pi, (reported; truth)).
inline double LeaderReportValue(const Game& game, const BeliefDistribution& pi,
                                int reported, int truth) {
  game.CheckType(reported);
  game.CheckType(truth);
  double total = 0.0;
  for (const auto& sp : pi.support(reported)) {
    total += sp.weight * LeaderBeliefValue(game, truth, sp.belief);
  }
  return total;
}

// V^mu(pi) with every type reporting optimally.
inline double LeaderObjective(const Game& game, const BeliefDistribution& pi,
                              const Eigen::VectorXd& prior) {
  double total = 0.0;
  for (int t = 0; t < game.num_types(); ++t) {
    if (prior(t) == 0.0) continue;
    total += prior(t) *
             LeaderReportValue(game, pi, OptimalReport(game, pi, t), t);
  }
  return total;
}

inline double LeaderObjective(const Game& game, const BeliefDistribution& pi) {
  return LeaderObjective(game, pi, game.prior);
}

// Diagnostic variant: every type is assumed to report truthfully.
inline double TruthfulLeaderObjective(const Game& game,
                                      const BeliefDistribution& pi) {
  double total = 0.0;
  for (int t = 0; t < game.num_types(); ++t) {
    total += game.prior(t) * LeaderReportValue(game, pi, t, t);
  }
  return total;
}

// Convex weights over `vertices` reproducing b. Among all decompositions the
// one with the smallest support is returned, ties going to the
// lexicographically first vertex subset.
inline std::vector<double> ConvexDecompose(
    const Belief& b, const Polytope& region,
    const std::vector<Eigen::VectorXd>& vertices) {
  if (!region.Closure().Contains(b.coords())) {
    throw ValidationError("convex decomposition: belief lies outside the region");
  }
  const int nv = static_cast<int>(vertices.size());
  const int dim = static_cast<int>(b.size());
  if (nv == 0) throw SolverError("convex decomposition: region has no vertices");

  const int max_support = std::min(nv, dim);
  if (internal::SaturatingBinomial(nv, max_support) <= 200'000) {
    for (int size = 1; size <= max_support; ++size) {
      std::vector<int> pick(size);
      for (int i = 0; i < size; ++i) pick[i] = i;
      while (true) {
        Eigen::MatrixXd system(dim + 1, size);
        for (int i = 0; i < size; ++i) {
          system.col(i).head(dim) = vertices[pick[i]];
          system(dim, i) = 1.0;
        }
        Eigen::VectorXd target(dim + 1);
        target << b.coords(), 1.0;
        const Eigen::VectorXd w = system.colPivHouseholderQr().solve(target);
        if (w.allFinite() && w.minCoeff() >= -1e-12 &&
            (system * w - target).cwiseAbs().maxCoeff() <= 1e-10) {
          std::vector<double> weights(nv, 0.0);
          double total = 0.0;
          for (int i = 0; i < size; ++i) {
            weights[pick[i]] = std::max(0.0, w(i));
            total += weights[pick[i]];
          }
          for (double& x : weights) x /= total;
          return weights;
        }
        int i = size - 1;
        while (i >= 0 && pick[i] == nv - size + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int k = i + 1; k < size; ++k) pick[k] = pick[k - 1] + 1;
      }
    }
  }

  // Feasibility LP over all vertices.
  lp::LinearProgram program(nv);
  for (int i = 0; i < dim; ++i) {
    Eigen::RowVectorXd row(nv);
    for (int v = 0; v < nv; ++v) row(v) = vertices[v](i);
    program.AddRow(row, lp::Relation::kEqual, b(i));
  }
  program.AddRow(Eigen::RowVectorXd::Ones(nv), lp::Relation::kEqual, 1.0);
  const lp::Solution sol = lp::Maximize(program);
  if (!sol.optimal()) {
    throw SolverError("convex decomposition LP is infeasible; vertex set is incomplete");
  }
  std::vector<double> weights(nv);
  for (int v = 0; v < nv; ++v) weights[v] = std::max(0.0, sol.x(v));
  return weights;
}

// Pushes every posterior onto the vertices of the joint best-response region
// that contains it, producing an atlas-supported distribution with the same
// per-type marginals.
inline BeliefDistribution ReduceToAtlas(const Game& game,
                                        const BeliefDistribution& pi,
                                        const BeliefAtlas& atlas) {
  if (pi.num_types() != game.num_types()) {
    throw ValidationError("distribution type count differs from the game");
  }
  if (ConsistencyResidual(pi) > 1e-9) {
    throw ValidationError("distribution is not consistent across types");
  }
  std::map<std::vector<int>, std::vector<Eigen::VectorXd>> vertex_cache;
  const int a = atlas.size();
  Eigen::VectorXd reduced = Eigen::VectorXd::Zero(game.num_types() * a);
  for (int t = 0; t < pi.num_types(); ++t) {
    for (const auto& sp : pi.support(t)) {
      std::vector<int> tuple(game.num_types());
      for (int k = 0; k < game.num_types(); ++k) {
        tuple[k] = BestResponse(game, k, sp.belief);
      }
      auto it = vertex_cache.find(tuple);
      if (it == vertex_cache.end()) {
        it = vertex_cache
                 .emplace(tuple, EnumerateVertices(JointRegion(game, tuple)))
                 .first;
      }
      const std::vector<double> w =
          ConvexDecompose(sp.belief, JointRegion(game, tuple), it->second);
      for (std::size_t v = 0; v < w.size(); ++v) {
        if (w[v] == 0.0) continue;
        const auto hit = atlas.Find(it->second[v]);
        if (!hit) {
          throw SolverError("region vertex missing from the atlas");
        }
        reduced(t * a + *hit) += sp.weight * w[v];
      }
    }
  }
  return FromAtlasVector(reduced, atlas);
}

}  // namespace sigbsg

#endif  // SIGBSG_SIGNALING_HPP_
