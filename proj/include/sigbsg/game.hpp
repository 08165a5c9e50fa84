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

// Game data model: one leader type, K follower types, finite actions.

#ifndef SIGBSG_GAME_HPP_
#define SIGBSG_GAME_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "sigbsg/errors.hpp"

namespace sigbsg {

// Absolute tolerance used for every payoff comparison.
inline constexpr double kPayoffTolerance = 1e-9;

struct Game {
  std::vector<std::string> leader_actions;    // size M
  std::vector<std::string> follower_actions;  // size N
  std::vector<std::string> type_names;        // size K
  Eigen::MatrixXd leader_payoff;              // M x N, shared by all types
  std::vector<Eigen::MatrixXd> follower_payoff;  // K matrices, M x N
  Eigen::VectorXd prior;                      // size K

  int num_leader_actions() const {
    return static_cast<int>(leader_payoff.rows());
  }
  int num_follower_actions() const {
    return static_cast<int>(leader_payoff.cols());
  }
  int num_types() const { return static_cast<int>(follower_payoff.size()); }

  const Eigen::MatrixXd& follower(int type) const {
    return follower_payoff.at(type);
  }

  // Throws ValidationError unless every invariant holds.
  void Validate() const {
    const int m = num_leader_actions();
    const int n = num_follower_actions();
    const int k = num_types();
    if (m < 1 || n < 1 || k < 1) {
      throw ValidationError("game needs at least one action per side and one type");
    }
    if (!leader_payoff.allFinite()) {
      throw ValidationError("leader payoff has non-finite entries");
    }
    for (const auto& f : follower_payoff) {
      if (f.rows() != m || f.cols() != n) {
        throw ValidationError("follower payoff shape differs from leader payoff");
      }
      if (!f.allFinite()) {
        throw ValidationError("follower payoff has non-finite entries");
      }
    }
    if (prior.size() != k) {
      throw ValidationError("prior length differs from type count");
    }
    if (prior.minCoeff() < 0.0) throw ValidationError("negative prior");
    if (std::abs(prior.sum() - 1.0) > 1e-12) {
      throw ValidationError("prior does not sum to 1");
    }
    if (static_cast<int>(leader_actions.size()) != m ||
        static_cast<int>(follower_actions.size()) != n ||
        static_cast<int>(type_names.size()) != k) {
      throw ValidationError("action or type labels do not match payoff shapes");
    }
  }

  void CheckType(int type) const {
    if (type < 0 || type >= num_types()) {
      throw ValidationError("type index out of range: " + std::to_string(type));
    }
  }
};

// A point of the belief simplex over leader actions.
class Belief {
 public:
  Belief() = default;

  // Entries in [-1e-12, 0) are clamped to zero; the sum must be 1 within 1e-9.
  explicit Belief(Eigen::VectorXd coords) : coords_(std::move(coords)) {
    if (coords_.size() < 1) throw ValidationError("empty belief");
    for (Eigen::Index i = 0; i < coords_.size(); ++i) {
      if (!std::isfinite(coords_(i)) || coords_(i) < -1e-12) {
        throw ValidationError("belief has a negative or non-finite entry");
      }
      if (coords_(i) < 0.0) coords_(i) = 0.0;
    }
    if (std::abs(coords_.sum() - 1.0) > 1e-9) {
      throw ValidationError("belief does not sum to 1");
    }
  }

  Belief(std::initializer_list<double> values)
      : Belief(Eigen::Map<const Eigen::VectorXd>(
            values.begin(), static_cast<Eigen::Index>(values.size()))) {}

  const Eigen::VectorXd& coords() const { return coords_; }
  double operator()(Eigen::Index i) const { return coords_(i); }
  Eigen::Index size() const { return coords_.size(); }

  static Belief Vertex(int dim, int i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(i) = 1.0;
    return Belief(std::move(v));
  }

 private:
  Eigen::VectorXd coords_;
};

namespace internal {

inline int BestResponse(const Game& game, int type,
                        const Eigen::Ref<const Eigen::VectorXd>& b) {
  const Eigen::RowVectorXd follower = b.transpose() * game.follower(type);
  const Eigen::RowVectorXd leader = b.transpose() * game.leader_payoff;
  const double top = follower.maxCoeff();
  int best = -1;
  for (int j = 0; j < follower.size(); ++j) {
    if (follower(j) < top - kPayoffTolerance) continue;
    if (best < 0 || leader(j) > leader(best) + kPayoffTolerance) best = j;
  }
  return best;
}

}  // namespace internal

// Follower's pure best response; ties favour the leader, then the lowest index.
inline int BestResponse(const Game& game, int type, const Belief& b) {
  game.CheckType(type);
  return internal::BestResponse(game, type, b.coords());
}

// Follower's expected utility when best-responding to b.
inline double FollowerValue(const Game& game, int type, const Belief& b) {
  const int j = BestResponse(game, type, b);
  return b.coords().dot(game.follower(type).col(j));
}

// Leader's expected utility when the follower of `type` holds belief b.
inline double LeaderBeliefValue(const Game& game, int type, const Belief& b) {
  const int j = BestResponse(game, type, b);
  return b.coords().dot(game.leader_payoff.col(j));
}

}  // namespace sigbsg

#endif  // SIGBSG_GAME_HPP_
