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

// The two interchangeable descriptions of a signaling commitment: the
// correlation form (x, C) and the per-type distribution over posteriors.

#ifndef SIGBSG_DISTRIBUTION_HPP_
#define SIGBSG_DISTRIBUTION_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "sigbsg/errors.hpp"
#include "sigbsg/game.hpp"

namespace sigbsg {

// sigma = (x, C). C[type](i, s) is the joint probability that the leader
// plays i and sends signal s when `type` is reported, so every row of C[type]
// sums to x(i). Direct schemes use one signal per follower action (the signal
// is a recommendation); schemes rebuilt from a distribution use one signal per
// support point.
struct Commitment {
  Eigen::VectorXd x;
  std::vector<Eigen::MatrixXd> correlation;

  int num_types() const { return static_cast<int>(correlation.size()); }

  // Probability of signal j under report `type`.
  double SignalProbability(int type, int j) const {
    return correlation.at(type).col(j).sum();
  }

  void Validate(const Game& game, double tol = 1e-9) const {
    const int m = game.num_leader_actions();
    if (x.size() != m) throw ValidationError("commitment: x has wrong length");
    if (num_types() != game.num_types()) {
      throw ValidationError("commitment: one correlation matrix per type expected");
    }
    if (!x.allFinite() || x.minCoeff() < -tol ||
        std::abs(x.sum() - 1.0) > tol) {
      throw ValidationError("commitment: x is not a probability vector");
    }
    for (const auto& c : correlation) {
      if (c.rows() != m || c.cols() < 1) {
        throw ValidationError("commitment: correlation matrix has wrong shape");
      }
      if (!c.allFinite() || c.minCoeff() < -tol) {
        throw ValidationError("commitment: negative correlation entry");
      }
      if ((c.rowwise().sum() - x).cwiseAbs().maxCoeff() > tol) {
        throw ValidationError("commitment: row marginals differ from x");
      }
    }
  }
};

struct SupportPoint {
  Belief belief;
  double weight = 0.0;
};

// Per reported type, a finitely supported measure over posteriors.
struct BeliefDistribution {
  std::vector<std::vector<SupportPoint>> per_type;

  int num_types() const { return static_cast<int>(per_type.size()); }
  const std::vector<SupportPoint>& support(int type) const {
    return per_type.at(type);
  }

  // Expected posterior of one type's measure.
  Eigen::VectorXd Marginal(int type) const {
    const auto& s = support(type);
    if (s.empty()) throw ValidationError("distribution: empty support");
    Eigen::VectorXd m = Eigen::VectorXd::Zero(s.front().belief.size());
    for (const auto& p : s) m += p.weight * p.belief.coords();
    return m;
  }

  void Validate(int num_leader_actions, double tol = 1e-9) const {
    if (per_type.empty()) throw ValidationError("distribution: no types");
    for (const auto& s : per_type) {
      if (s.empty()) throw ValidationError("distribution: empty support");
      double total = 0.0;
      for (const auto& p : s) {
        if (p.belief.size() != num_leader_actions) {
          throw ValidationError("distribution: belief has wrong dimension");
        }
        if (!std::isfinite(p.weight) || p.weight < 0.0) {
          throw ValidationError("distribution: negative weight");
        }
        total += p.weight;
      }
      if (std::abs(total - 1.0) > tol) {
        throw ValidationError("distribution: weights do not sum to 1");
      }
    }
  }
};

// Largest disagreement between two types' expected posteriors.
inline double ConsistencyResidual(const BeliefDistribution& pi) {
  double worst = 0.0;
  if (pi.num_types() < 2) return worst;
  std::vector<Eigen::VectorXd> marginals;
  for (int t = 0; t < pi.num_types(); ++t) marginals.push_back(pi.Marginal(t));
  for (std::size_t a = 0; a < marginals.size(); ++a) {
    for (std::size_t b = a + 1; b < marginals.size(); ++b) {
      worst = std::max(worst,
                       (marginals[a] - marginals[b]).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace sigbsg

#endif  // SIGBSG_DISTRIBUTION_HPP_
