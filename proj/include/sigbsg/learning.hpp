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

// Repeated play: nature draws follower types, the leader commits each round,
// and the trace records payoffs with gap and regret accounting.
//
// Two learners are provided. FTL-IC re-solves the incentive-compatible LP
// under the empirical type distribution. Hedge runs multiplicative weights
// over a finite arm set of consistent belief distributions, updating every
// arm each round since the true type is revealed after play.

#ifndef SIGBSG_LEARNING_HPP_
#define SIGBSG_LEARNING_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "sigbsg/distribution.hpp"
#include "sigbsg/equilibrium.hpp"
#include "sigbsg/errors.hpp"
#include "sigbsg/game.hpp"
#include "sigbsg/geometry.hpp"
#include "sigbsg/signaling.hpp"

namespace sigbsg {

// Counter-based generator: draw n of stream s under seed k is
// Mix(Mix(k ^ Mix(s)) + n * golden), with Mix the splitmix64 finalizer.
// Streams never share state, so the order in which components draw cannot
// shift anyone else's numbers.
class CounterRng {
 public:
  enum Stream : std::uint64_t { kNature = 1, kLeader = 2, kHedge = 3 };

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(Mix(seed ^ Mix(stream))) {}

  static std::uint64_t Mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t NextU64() { return Mix(key_ + 0x9e3779b97f4a7c15ULL * counter_++); }

  // Uniform on [0, 1) with 53 random bits.
  double NextUniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  // Index drawn from nonnegative weights (need not be normalized).
  template <typename Weights>
  int Categorical(const Weights& w, int size) {
    double total = 0.0;
    for (int i = 0; i < size; ++i) total += w[i];
    const double u = NextUniform() * total;
    double acc = 0.0;
    int last = -1;
    for (int i = 0; i < size; ++i) {
      if (w[i] <= 0.0) continue;
      acc += w[i];
      last = i;
      if (u < acc) return i;
    }
    if (last < 0) throw SolverError("categorical draw over zero weights");
    return last;
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class Algorithm { kFtlIc, kHedge };

enum class TypeSequence {
  kIid,          // nature samples from mu*
  kAlternating,  // types 0, 1, ..., K-1, 0, ... regardless of mu*
};

struct SimulationConfig {
  int horizon = 1000;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kFtlIc;
  double eta = 0.0;  // hedge only; 0 selects sqrt(8 ln A / T)
  int resolve_period = 1;
  TypeSequence types = TypeSequence::kIid;

  void Validate() const {
    if (horizon < 1) throw ValidationError("horizon must be at least 1");
    if (resolve_period < 1) throw ValidationError("resolve_period must be at least 1");
    if (eta < 0.0 || !std::isfinite(eta)) {
      throw ValidationError("eta must be a positive finite number");
    }
  }
};

struct RoundRecord {
  int t = 0;  // 1-based
  int true_type = 0;
  int reported_type = 0;
  int leader_action = 0;
  int signal = 0;
  int follower_action = 0;
  double payoff = 0.0;           // L(i_t, j_t)
  double expected_reward = 0.0;  // leader expectation given commitment and type
  int arm = -1;                  // hedge only
};

struct SimulationTrace {
  std::vector<RoundRecord> rounds;
  std::vector<double> hedge_mass_error;  // | sum of weights - 1 | per round
  double max_ic_violation = 0.0;
  double max_obedience_violation = 0.0;
  int lp_solves = 0;
  int num_arms = 0;
};

// Type frequencies among the first t rounds; uniform when t = 0.
inline Eigen::VectorXd EmpiricalDistribution(const std::vector<int>& types,
                                             int num_types, int t) {
  if (t == 0) return Eigen::VectorXd::Constant(num_types, 1.0 / num_types);
  if (t < 0 || t > static_cast<int>(types.size())) {
    throw ValidationError("empirical distribution: t out of range");
  }
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(num_types);
  for (int s = 0; s < t; ++s) mu(types[s]) += 1.0;
  return mu / t;
}

inline Eigen::VectorXd EmpiricalDistribution(const SimulationTrace& trace,
                                             int num_types, int t) {
  std::vector<int> types;
  for (const auto& r : trace.rounds) types.push_back(r.true_type);
  return EmpiricalDistribution(types, num_types, t);
}

namespace internal {

inline void CheckPrior(const Game& game, const Eigen::VectorXd& mu_star) {
  if (mu_star.size() != game.num_types() || mu_star.minCoeff() < 0.0 ||
      std::abs(mu_star.sum() - 1.0) > 1e-9) {
    throw ValidationError("mu* is not a distribution over follower types");
  }
}

class TypeSource {
 public:
  TypeSource(const SimulationConfig& config, const Eigen::VectorXd& mu_star)
      : mode_(config.types), mu_(mu_star),
        rng_(config.seed, CounterRng::kNature) {}

  int Draw(int t) {
    if (mode_ == TypeSequence::kAlternating) {
      return (t - 1) % static_cast<int>(mu_.size());
    }
    return rng_.Categorical(mu_, static_cast<int>(mu_.size()));
  }

 private:
  TypeSequence mode_;
  Eigen::VectorXd mu_;
  CounterRng rng_;
};

constexpr double kLearningCheckTolerance = 1e-7;

}  // namespace internal

// Follow-the-leader over IC commitments. Round t plays the sigLP optimum
// under the empirical distribution of the first t-1 types (uniform at t=1);
// the follower reports truthfully and obeys. Both properties are checked
// every round and a violation above 1e-7 aborts the run.
inline SimulationTrace SimulateFtlIc(const Game& game,
                                     const Eigen::VectorXd& mu_star,
                                     const SimulationConfig& config) {
  config.Validate();
  if (config.algorithm != Algorithm::kFtlIc) {
    throw ValidationError("SimulateFtlIc needs algorithm ftl-ic");
  }
  internal::CheckPrior(game, mu_star);
  const int k_types = game.num_types();
  internal::TypeSource nature(config, mu_star);
  CounterRng leader(config.seed, CounterRng::kLeader);

  SimulationTrace trace;
  std::vector<int> counts(k_types, 0);
  Commitment sigma;
  for (int t = 1; t <= config.horizon; ++t) {
    if ((t - 1) % config.resolve_period == 0) {
      Eigen::VectorXd mu(k_types);
      for (int k = 0; k < k_types; ++k) {
        mu(k) = t == 1 ? 1.0 / k_types : static_cast<double>(counts[k]) / (t - 1);
      }
      sigma = SolveSigLp(game, mu).commitment;
      ++trace.lp_solves;
      const double ic = IcViolation(game, sigma);
      const double ob = ObedienceViolation(game, sigma);
      trace.max_ic_violation = std::max(trace.max_ic_violation, ic);
      trace.max_obedience_violation = std::max(trace.max_obedience_violation, ob);
      if (ic > internal::kLearningCheckTolerance ||
          ob > internal::kLearningCheckTolerance) {
        throw SolverError("FTL-IC: commitment violates IC or obedience beyond 1e-7");
      }
    }
    RoundRecord rec;
    rec.t = t;
    rec.true_type = nature.Draw(t);
    rec.reported_type = rec.true_type;
    const Eigen::MatrixXd& c = sigma.correlation[rec.true_type];
    rec.leader_action = leader.Categorical(sigma.x, static_cast<int>(sigma.x.size()));
    const Eigen::RowVectorXd row = c.row(rec.leader_action);
    rec.signal = leader.Categorical(row, static_cast<int>(row.size()));
    rec.follower_action = rec.signal;
    rec.payoff = game.leader_payoff(rec.leader_action, rec.follower_action);
    rec.expected_reward = IcValue(game, sigma, rec.true_type);
    trace.rounds.push_back(rec);
    ++counts[rec.true_type];
  }
  return trace;
}

struct ArmSet {
  std::vector<BeliefDistribution> arms;
  std::vector<Eigen::VectorXd> vectors;  // atlas coordinates
  BeliefAtlas atlas;
  // reward(a, k): leader value of arm a against true type k reporting
  // optimally.
  Eigen::MatrixXd reward;
};

// Candidate set at epsilon 1e-6, with exact duplicates (the same point
// reached from two pieces) dropped. Order follows the candidate set.
inline ArmSet BuildArmSet(const Game& game,
                          std::uint64_t cap = kDefaultEnumerationCap) {
  ArmSet set;
  set.atlas = BuildBeliefAtlas(game, cap);
  const CandidateSet candidates = BuildCandidateSet(game, set.atlas, 1e-6, cap);
  for (const auto& cand : candidates.members) {
    bool seen = false;
    for (const auto& v : set.vectors) {
      if ((v - cand.pi).cwiseAbs().maxCoeff() <= 1e-12) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    set.vectors.push_back(cand.pi);
    set.arms.push_back(FromAtlasVector(cand.pi, set.atlas));
  }
  if (set.arms.empty()) throw SolverError("arm set is empty");
  const int k_types = game.num_types();
  set.reward.resize(static_cast<int>(set.arms.size()), k_types);
  for (int a = 0; a < static_cast<int>(set.arms.size()); ++a) {
    for (int k = 0; k < k_types; ++k) {
      set.reward(a, k) = LeaderReportValue(game, set.arms[a],
                                           OptimalReport(game, set.arms[a], k), k);
    }
  }
  return set;
}

// Multiplicative weights over the arm set with full-information updates.
inline SimulationTrace SimulateHedge(const Game& game,
                                     const Eigen::VectorXd& mu_star,
                                     const SimulationConfig& config,
                                     const ArmSet& arms) {
  config.Validate();
  if (config.algorithm != Algorithm::kHedge) {
    throw ValidationError("SimulateHedge needs algorithm hedge");
  }
  internal::CheckPrior(game, mu_star);
  const int num_arms = static_cast<int>(arms.arms.size());
  if (num_arms == 0) throw SolverError("arm set is empty");
  const double eta = config.eta > 0.0
                         ? config.eta
                         : std::sqrt(8.0 * std::log(static_cast<double>(num_arms)) /
                                     config.horizon);
  const double l_min = game.leader_payoff.minCoeff();
  const double l_max = game.leader_payoff.maxCoeff();
  const double span = l_max > l_min ? l_max - l_min : 1.0;

  internal::TypeSource nature(config, mu_star);
  CounterRng leader(config.seed, CounterRng::kLeader);
  CounterRng hedge(config.seed, CounterRng::kHedge);

  SimulationTrace trace;
  trace.num_arms = num_arms;
  Eigen::VectorXd log_w = Eigen::VectorXd::Constant(num_arms, -std::log(num_arms));
  Eigen::VectorXd p(num_arms);
  for (int t = 1; t <= config.horizon; ++t) {
    const double top = log_w.maxCoeff();
    p = (log_w.array() - top).exp();
    p /= p.sum();
    trace.hedge_mass_error.push_back(std::abs(p.sum() - 1.0));

    RoundRecord rec;
    rec.t = t;
    rec.arm = hedge.Categorical(p, num_arms);
    rec.true_type = nature.Draw(t);
    const BeliefDistribution& pi = arms.arms[rec.arm];
    rec.reported_type = OptimalReport(game, pi, rec.true_type);
    const auto& support = pi.support(rec.reported_type);
    std::vector<double> weights;
    for (const auto& sp : support) weights.push_back(sp.weight);
    rec.signal = leader.Categorical(weights, static_cast<int>(weights.size()));
    const Belief& b = support[rec.signal].belief;
    rec.leader_action = leader.Categorical(b.coords(), b.size());
    rec.follower_action = BestResponse(game, rec.true_type, b);
    rec.payoff = game.leader_payoff(rec.leader_action, rec.follower_action);
    rec.expected_reward = arms.reward(rec.arm, rec.true_type);
    trace.rounds.push_back(rec);

    log_w += (eta / span) *
             (arms.reward.col(rec.true_type).array() - l_min).matrix();
    const double m = log_w.maxCoeff();
    log_w.array() -= m + std::log((log_w.array() - m).exp().sum());
  }
  return trace;
}

inline SimulationTrace SimulateHedge(const Game& game,
                                     const Eigen::VectorXd& mu_star,
                                     const SimulationConfig& config) {
  return SimulateHedge(game, mu_star, config, BuildArmSet(game));
}

inline SimulationTrace Simulate(const Game& game, const Eigen::VectorXd& mu_star,
                                const SimulationConfig& config) {
  return config.algorithm == Algorithm::kFtlIc
             ? SimulateFtlIc(game, mu_star, config)
             : SimulateHedge(game, mu_star, config);
}

struct Metrics {
  std::vector<double> cum_payoff;
  std::vector<double> cum_gap;
  std::vector<double> cum_regret;
  double gap = 0.0;
  double regret = 0.0;
  double average_payoff = 0.0;
  int best_arm = -1;
};

// Gap_t = opt * t - cumulative realized payoff. Regret_t = best fixed arm's
// cumulative expected reward on the realized types minus the learner's
// cumulative expected reward.
inline Metrics ComputeMetrics(const SimulationTrace& trace, double opt_value,
                              const Eigen::MatrixXd& arm_reward) {
  Metrics out;
  const int arms = static_cast<int>(arm_reward.rows());
  Eigen::VectorXd per_arm = Eigen::VectorXd::Zero(arms);
  double payoff = 0.0;
  double learner = 0.0;
  for (const auto& r : trace.rounds) {
    payoff += r.payoff;
    learner += r.expected_reward;
    if (arms > 0) per_arm += arm_reward.col(r.true_type);
    const double best = arms > 0 ? per_arm.maxCoeff() : learner;
    out.cum_payoff.push_back(payoff);
    out.cum_gap.push_back(opt_value * r.t - payoff);
    out.cum_regret.push_back(best - learner);
  }
  if (!trace.rounds.empty()) {
    out.gap = out.cum_gap.back();
    out.regret = out.cum_regret.back();
    out.average_payoff = payoff / static_cast<double>(trace.rounds.size());
    if (arms > 0) per_arm.maxCoeff(&out.best_arm);
  }
  return out;
}

namespace internal {

inline std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace internal

inline void WriteTraceCsv(std::ostream& os, const SimulationTrace& trace,
                          const Metrics& metrics) {
  os << "t,true_type,reported_type,leader_action,signal,follower_action,"
        "payoff,cum_payoff,cum_gap,cum_regret\n";
  for (std::size_t s = 0; s < trace.rounds.size(); ++s) {
    const RoundRecord& r = trace.rounds[s];
    os << r.t << ',' << r.true_type << ',' << r.reported_type << ','
       << r.leader_action << ',' << r.signal << ',' << r.follower_action << ','
       << internal::FormatDouble(r.payoff) << ','
       << internal::FormatDouble(metrics.cum_payoff[s]) << ','
       << internal::FormatDouble(metrics.cum_gap[s]) << ','
       << internal::FormatDouble(metrics.cum_regret[s]) << '\n';
  }
}

}  // namespace sigbsg

#endif  // SIGBSG_LEARNING_HPP_
