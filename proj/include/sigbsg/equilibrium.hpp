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

// Equilibrium solvers.
//
//  * SolveBse: baseline Bayesian Stackelberg equilibrium, one LP per follower
//    response tuple.
//  * SolveSigLp: the incentive-compatible signaling LP (obedience + truthful
//    reporting), optimal over direct schemes.
//  * BuildCandidateSet / SolveEpsSigBse: epsilon-optimal signaling under
//    optimal misreporting, searched over the partition pieces of the
//    consistent atlas distributions.
//  * BruteForceOracle: grid search over commitments, used as an independent
//    lower bound.

#ifndef SIGBSG_EQUILIBRIUM_HPP_
#define SIGBSG_EQUILIBRIUM_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigbsg/distribution.hpp"
#include "sigbsg/errors.hpp"
#include "sigbsg/game.hpp"
#include "sigbsg/geometry.hpp"
#include "sigbsg/lp.hpp"
#include "sigbsg/signaling.hpp"

namespace sigbsg {

struct Diagnostics {
  std::map<std::string, double> counters;
  std::vector<std::string> notes;

  void Count(const std::string& key, double amount = 1.0) {
    counters[key] += amount;
  }
};

struct Certificate {
  // reports[k]: type reported by true type k.
  std::vector<int> reports;
  // responses[k][s]: action of true type k after signal s of its report.
  std::vector<std::vector<int>> responses;
};

struct SolveResult {
  std::string mode;  // "bse", "iclp" or "eps"
  double value = 0.0;
  double epsilon = 0.0;
  Commitment commitment;
  std::optional<BeliefDistribution> distribution;
  Certificate certificate;
  Diagnostics diagnostics;
};

namespace internal {

// Leader objective of an atlas vector; fills the optimal reports.
inline double AtlasObjective(const AtlasPayoffs& payoffs,
                             const Eigen::VectorXd& prior,
                             const Eigen::VectorXd& pi,
                             std::vector<int>* reports = nullptr) {
  const int k_types = static_cast<int>(payoffs.follower.rows());
  const int a = static_cast<int>(payoffs.follower.cols());
  double total = 0.0;
  if (reports) reports->assign(k_types, 0);
  for (int k = 0; k < k_types; ++k) {
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> u(k_types);
    for (int r = 0; r < k_types; ++r) {
      u[r] = payoffs.follower.row(k).dot(pi.segment(r * a, a));
      top = std::max(top, u[r]);
    }
    int report = 0;
    while (u[report] < top - kPayoffTolerance) ++report;
    if (reports) (*reports)[k] = report;
    total += prior(k) * payoffs.leader.row(k).dot(pi.segment(report * a, a));
  }
  return total;
}

// Linear form of the leader objective on the piece where type k reports
// gamma[k].
inline Eigen::VectorXd PieceObjective(const AtlasPayoffs& payoffs,
                                      const Eigen::VectorXd& prior,
                                      const PartitionMap& gamma) {
  const int k_types = static_cast<int>(payoffs.leader.rows());
  const int a = static_cast<int>(payoffs.leader.cols());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(k_types * a);
  for (int k = 0; k < k_types; ++k) {
    g.segment(gamma[k] * a, a) += prior(k) * payoffs.leader.row(k).transpose();
  }
  return g;
}

inline Certificate DistributionCertificate(const Game& game,
                                           const BeliefDistribution& pi) {
  Certificate cert;
  for (int k = 0; k < game.num_types(); ++k) {
    const int r = OptimalReport(game, pi, k);
    cert.reports.push_back(r);
    std::vector<int> responses;
    for (const auto& sp : pi.support(r)) {
      responses.push_back(BestResponse(game, k, sp.belief));
    }
    cert.responses.push_back(responses);
  }
  return cert;
}

}  // namespace internal

// Baseline BSE by the multiple-LP method. Tuples are scanned in
// lexicographic order and a later tuple replaces the incumbent only when it
// is better by more than 1e-12.
inline SolveResult SolveBse(const Game& game) {
  const int m = game.num_leader_actions();
  const int n = game.num_follower_actions();
  const int k_types = game.num_types();
  SolveResult best;
  best.mode = "bse";
  bool found = false;
  int infeasible = 0;
  for (const auto& tuple : AllTuples(n, k_types)) {
    lp::LinearProgram program(m);
    program.AddRow(Eigen::RowVectorXd::Ones(m), lp::Relation::kEqual, 1.0);
    for (int k = 0; k < k_types; ++k) {
      const Eigen::MatrixXd& f = game.follower(k);
      program.objective() += game.prior(k) * game.leader_payoff.col(tuple[k]);
      for (int other = 0; other < n; ++other) {
        if (other == tuple[k]) continue;
        program.AddRow((f.col(tuple[k]) - f.col(other)).transpose(),
                       lp::Relation::kGreaterEqual, 0.0);
      }
    }
    const lp::Solution sol = lp::Maximize(program);
    if (sol.status == lp::Status::kInfeasible) {
      ++infeasible;
      continue;
    }
    if (!sol.optimal()) {
      throw SolverError("BSE LP failed: " + lp::ToString(sol.status));
    }
    if (found && sol.objective <= best.value + 1e-12) continue;
    found = true;
    best.value = sol.objective;
    best.commitment.x = sol.x;
    best.commitment.correlation.clear();
    best.certificate = {};
    for (int k = 0; k < k_types; ++k) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, n);
      c.col(tuple[k]) = sol.x;
      best.commitment.correlation.push_back(c);
      best.certificate.reports.push_back(k);
      best.certificate.responses.push_back({tuple[k]});
    }
  }
  if (!found) throw SolverError("BSE: every response tuple is infeasible");
  best.diagnostics.Count("infeasible_tuples", infeasible);
  best.diagnostics.Count("tuples", std::pow(n, k_types));
  return best;
}

// V(sigma, type) for an obedient, truthful follower: sum_ij C_ij L_ij.
inline double IcValue(const Game& game, const Commitment& sigma, int type) {
  return sigma.correlation.at(type).cwiseProduct(game.leader_payoff).sum();
}

// Largest violation of the obedience rows of a direct scheme.
inline double ObedienceViolation(const Game& game, const Commitment& sigma) {
  double worst = 0.0;
  for (int k = 0; k < game.num_types(); ++k) {
    const Eigen::MatrixXd& c = sigma.correlation.at(k);
    const Eigen::MatrixXd& f = game.follower(k);
    for (int j = 0; j < c.cols(); ++j) {
      const double own = c.col(j).dot(f.col(j));
      for (int other = 0; other < f.cols(); ++other) {
        worst = std::max(worst, c.col(j).dot(f.col(other)) - own);
      }
    }
  }
  return worst;
}

// Largest gain any type gets from misreporting under a direct scheme:
// max over (truth, report) of sum_j max_j' sum_i C^report_ij F^truth_ij'
// minus the truthful, obedient utility.
inline double IcViolation(const Game& game, const Commitment& sigma) {
  double worst = 0.0;
  for (int k = 0; k < game.num_types(); ++k) {
    const Eigen::MatrixXd& f = game.follower(k);
    const double truthful = sigma.correlation.at(k).cwiseProduct(f).sum();
    for (int r = 0; r < game.num_types(); ++r) {
      if (r == k) continue;
      const Eigen::MatrixXd gains = sigma.correlation.at(r).transpose() * f;
      worst = std::max(worst, gains.rowwise().maxCoeff().sum() - truthful);
    }
  }
  return worst;
}

namespace internal {

// Columns: x (M), C^k_ij (K*M*N), then for every ordered pair (k, r != k)
// and signal j an upper bound z^{kr}_j on sum_i C^r_ij F^k_ij', split into
// positive and negative parts since it may be negative.
inline lp::LinearProgram BuildSigLp(const Game& game, const Eigen::VectorXd& prior) {
  const int m = game.num_leader_actions();
  const int n = game.num_follower_actions();
  const int k_types = game.num_types();
  if (prior.size() != k_types || prior.minCoeff() < 0.0 ||
      std::abs(prior.sum() - 1.0) > 1e-9) {
    throw ValidationError("sigLP: prior is not a distribution over types");
  }
  auto x_col = [](int i) { return i; };
  auto c_col = [&](int k, int i, int j) { return m + (k * m + i) * n + j; };
  const int z_base = m + k_types * m * n;
  int num_pairs = 0;
  std::map<std::pair<int, int>, int> pair_index;
  for (int k = 0; k < k_types; ++k) {
    for (int r = 0; r < k_types; ++r) {
      if (r != k) pair_index[{k, r}] = num_pairs++;
    }
  }
  auto z_pos = [&](int k, int r, int j) {
    return z_base + (pair_index.at({k, r}) * n + j) * 2;
  };
  lp::LinearProgram program(z_base + num_pairs * n * 2);

  std::vector<std::pair<int, double>> terms;
  for (int i = 0; i < m; ++i) terms.push_back({x_col(i), 1.0});
  program.AddRow(terms, lp::Relation::kEqual, 1.0);
  for (int k = 0; k < k_types; ++k) {
    for (int i = 0; i < m; ++i) {
      terms.assign({{x_col(i), -1.0}});
      for (int j = 0; j < n; ++j) terms.push_back({c_col(k, i, j), 1.0});
      program.AddRow(terms, lp::Relation::kEqual, 0.0);
    }
  }
  for (int k = 0; k < k_types; ++k) {
    const Eigen::MatrixXd& f = game.follower(k);
    for (int j = 0; j < n; ++j) {
      for (int other = 0; other < n; ++other) {
        if (other == j) continue;
        terms.clear();
        for (int i = 0; i < m; ++i) {
          terms.push_back({c_col(k, i, j), f(i, j) - f(i, other)});
        }
        program.AddRow(terms, lp::Relation::kGreaterEqual, 0.0);
      }
    }
  }
  for (int k = 0; k < k_types; ++k) {
    const Eigen::MatrixXd& f = game.follower(k);
    for (int r = 0; r < k_types; ++r) {
      if (r == k) continue;
      for (int j = 0; j < n; ++j) {
        for (int other = 0; other < n; ++other) {
          terms.assign({{z_pos(k, r, j), 1.0}, {z_pos(k, r, j) + 1, -1.0}});
          for (int i = 0; i < m; ++i) {
            terms.push_back({c_col(r, i, j), -f(i, other)});
          }
          program.AddRow(terms, lp::Relation::kGreaterEqual, 0.0);
        }
      }
      terms.clear();
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) terms.push_back({c_col(k, i, j), f(i, j)});
      }
      for (int j = 0; j < n; ++j) {
        terms.push_back({z_pos(k, r, j), -1.0});
        terms.push_back({z_pos(k, r, j) + 1, 1.0});
      }
      program.AddRow(terms, lp::Relation::kGreaterEqual, 0.0);
    }
  }
  for (int k = 0; k < k_types; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        program.objective()(c_col(k, i, j)) = prior(k) * game.leader_payoff(i, j);
      }
    }
  }
  return program;
}

// Column of C^k_ij in the sigLP.
inline int SigLpColumn(const Game& game, int k, int i, int j) {
  const int m = game.num_leader_actions();
  return m + (k * m + i) * game.num_follower_actions() + j;
}

}  // namespace internal

// The incentive-compatible signaling LP under `prior`.
inline SolveResult SolveSigLp(const Game& game, const Eigen::VectorXd& prior) {
  const int m = game.num_leader_actions();
  const int n = game.num_follower_actions();
  const int k_types = game.num_types();
  const lp::LinearProgram program = internal::BuildSigLp(game, prior);
  auto c_col = [&](int k, int i, int j) {
    return internal::SigLpColumn(game, k, i, j);
  };
  const lp::Solution sol = lp::Maximize(program);
  if (!sol.optimal()) {
    throw SolverError("sigLP failed: " + lp::ToString(sol.status));
  }
  SolveResult result;
  result.mode = "iclp";
  result.value = sol.objective;
  result.commitment.x = sol.x.head(m);
  for (int k = 0; k < k_types; ++k) {
    Eigen::MatrixXd c(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) c(i, j) = sol.x(c_col(k, i, j));
    }
    result.commitment.correlation.push_back(c);
    result.certificate.reports.push_back(k);
    std::vector<int> recommended(n);
    for (int j = 0; j < n; ++j) recommended[j] = j;
    result.certificate.responses.push_back(recommended);
  }
  result.diagnostics.Count("lp_iterations", sol.iterations);
  result.diagnostics.counters["max_row_violation"] = program.MaxViolation(sol.x);
  return result;
}

inline SolveResult SolveSigLp(const Game& game) {
  return SolveSigLp(game, game.prior);
}

struct Candidate {
  Eigen::VectorXd pi;         // atlas vector
  PartitionMap gamma;
  bool perturbed = false;     // moved off a closure vertex
  Eigen::VectorXd vertex;     // the closure vertex it came from
};

struct CandidateSet {
  std::vector<Candidate> members;
  double delta = 0.0;
  Diagnostics diagnostics;
};

namespace internal {

inline double PerturbationRadius(const AtlasPayoffs& payoffs, double epsilon) {
  double norm = 0.0;
  for (int k = 0; k < payoffs.leader.rows(); ++k) {
    norm = std::max(norm, payoffs.leader.row(k).norm());
  }
  return norm > 0.0 ? epsilon / norm : std::numeric_limits<double>::infinity();
}

// Moves a closure vertex at most `delta` towards the strict point so that the
// strict rows hold; nullopt when the moved point still fails membership.
inline std::optional<Eigen::VectorXd> PullInside(const Polytope& piece,
                                                 const Eigen::VectorXd& vertex,
                                                 const Eigen::VectorXd& center,
                                                 double delta) {
  const Eigen::VectorXd dir = center - vertex;
  // Every point of the half-open segment (vertex, center] is in the piece by
  // convexity, so the full distance is the reach.
  const double reach = dir.norm();
  if (reach == 0.0) return std::nullopt;
  const double step = std::min(delta, reach);
  Eigen::VectorXd moved = vertex + (step / reach) * dir;
  if (!piece.Contains(moved)) return std::nullopt;
  return moved;
}

inline void ValidateEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("epsilon must be a positive finite number");
  }
}

}  // namespace internal

// Every closure vertex of every nonempty piece, pulled inside its piece when
// it violates a strict row.
inline CandidateSet BuildCandidateSet(const Game& game,
                                      const BeliefAtlas& atlas, double epsilon,
                                      std::uint64_t cap = kDefaultEnumerationCap) {
  internal::ValidateEpsilon(epsilon);
  const AtlasPayoffs payoffs = ComputeAtlasPayoffs(game, atlas);
  CandidateSet set;
  set.delta = internal::PerturbationRadius(payoffs, epsilon);
  for (const auto& gamma : AllPartitionMaps(game.num_types())) {
    const Polytope piece = PartitionPolytope(game, atlas, gamma, payoffs);
    const auto center = StrictFeasiblePoint(piece);
    if (!center) {
      set.diagnostics.Count("empty_pieces");
      continue;
    }
    set.diagnostics.Count("nonempty_pieces");
    for (const auto& v : EnumerateVertices(piece, cap)) {
      Candidate cand;
      cand.gamma = gamma;
      cand.vertex = v;
      if (piece.Contains(v)) {
        cand.pi = v;
      } else if (auto moved =
                     internal::PullInside(piece, v, center->x, set.delta)) {
        cand.pi = *moved;
        cand.perturbed = true;
        set.diagnostics.Count("perturbed");
      } else {
        set.diagnostics.Count("unreachable_vertices");
        continue;
      }
      set.members.push_back(std::move(cand));
    }
  }
  set.diagnostics.Count("candidates", static_cast<double>(set.members.size()));
  return set;
}

enum class EpsMethod {
  kPieceLp,       // one LP per piece over its closure, then the delta step
  kCandidateSet,  // full vertex enumeration of every piece
};

struct EpsOptions {
  EpsMethod method = EpsMethod::kPieceLp;
  std::uint64_t cap = kDefaultEnumerationCap;
};

namespace internal {

inline SolveResult FinishEpsResult(const Game& game, const BeliefAtlas& atlas,
                                   const Eigen::VectorXd& pi, double value,
                                   double epsilon, Diagnostics diagnostics) {
  SolveResult result;
  result.mode = "eps";
  result.value = value;
  result.epsilon = epsilon;
  result.distribution = FromAtlasVector(pi, atlas);
  result.commitment = BeliefsToCommitment(game, *result.distribution);
  result.certificate = DistributionCertificate(game, *result.distribution);
  result.diagnostics = std::move(diagnostics);
  result.diagnostics.counters["atlas_size"] = atlas.size();
  return result;
}

}  // namespace internal

// epsilon-optimal signaling commitment against optimally misreporting
// followers. diagnostics.counters["sup_estimate"] holds the largest value of
// the piecewise-linear objective over the piece closures.
inline SolveResult SolveEpsSigBse(const Game& game, double epsilon,
                                  const EpsOptions& options = {}) {
  internal::ValidateEpsilon(epsilon);
  const BeliefAtlas atlas = BuildBeliefAtlas(game, options.cap);
  const AtlasPayoffs payoffs = ComputeAtlasPayoffs(game, atlas);
  Diagnostics diag;
  double sup_estimate = -std::numeric_limits<double>::infinity();
  double best_value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_pi;

  auto consider = [&](const Eigen::VectorXd& pi) {
    const double value = internal::AtlasObjective(payoffs, game.prior, pi);
    if (value > best_value + 1e-12) {
      best_value = value;
      best_pi = pi;
    }
  };

  if (options.method == EpsMethod::kCandidateSet) {
    const CandidateSet set = BuildCandidateSet(game, atlas, epsilon, options.cap);
    diag = set.diagnostics;
    diag.counters["delta"] = set.delta;
    for (const auto& cand : set.members) {
      const Eigen::VectorXd g =
          internal::PieceObjective(payoffs, game.prior, cand.gamma);
      sup_estimate = std::max(sup_estimate, g.dot(cand.vertex));
      consider(cand.pi);
    }
  } else {
    const double delta = internal::PerturbationRadius(payoffs, epsilon);
    diag.counters["delta"] = delta;
    for (const auto& gamma : AllPartitionMaps(game.num_types())) {
      const Polytope piece = PartitionPolytope(game, atlas, gamma, payoffs);
      const auto center = StrictFeasiblePoint(piece);
      if (!center) {
        diag.Count("empty_pieces");
        continue;
      }
      diag.Count("nonempty_pieces");
      const Eigen::VectorXd g = internal::PieceObjective(payoffs, game.prior, gamma);
      const auto vertex = MaximizeOver(piece.Closure(), g);
      if (!vertex) {
        diag.Count("empty_pieces");
        continue;
      }
      sup_estimate = std::max(sup_estimate, g.dot(*vertex));
      if (piece.Contains(*vertex)) {
        consider(*vertex);
      } else if (auto moved =
                     internal::PullInside(piece, *vertex, center->x, delta)) {
        diag.Count("perturbed");
        consider(*moved);
      } else {
        diag.Count("unreachable_vertices");
        diag.notes.push_back("piece optimum could not be pulled inside its piece");
        consider(center->x);
      }
    }
  }
  if (best_pi.size() == 0) {
    throw SolverError("eps-sigBSE: no piece produced a candidate");
  }
  diag.counters["sup_estimate"] = sup_estimate;
  return internal::FinishEpsResult(game, atlas, best_pi, best_value, epsilon,
                                   std::move(diag));
}

struct OracleOptions {
  int max_signals = 0;  // 0: use N
  std::uint64_t cap = 2'000'000'000ULL;
};

struct OracleResult {
  double value = -std::numeric_limits<double>::infinity();
  Commitment commitment;
  std::uint64_t evaluated = 0;
};

namespace internal {

// All compositions of `total` into `parts` nonnegative integers,
// lexicographic.
inline std::vector<std::vector<int>> Compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == parts - 1) {
      cur[idx] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[idx] = v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, total);
  return out;
}

}  // namespace internal

// Grid search: x on the simplex grid of the given step; per type and leader
// action, the signal split phi(.|i, type) on the same grid over a signal menu
// of at most N signals. Every commitment is scored by the leader objective
// under optimal reporting. Returns the best score found (a lower bound on the
// supremum).
inline OracleResult BruteForceOracle(const Game& game, double step,
                                     const OracleOptions& options = {}) {
  const int resolution = static_cast<int>(std::lround(1.0 / step));
  if (!(step > 0.0) || resolution < 1 ||
      std::abs(resolution * step - 1.0) > 1e-9) {
    throw ValidationError("oracle step must be 1/r for a positive integer r");
  }
  const int m = game.num_leader_actions();
  const int n = game.num_follower_actions();
  const int k_types = game.num_types();
  const int signals = options.max_signals > 0 ? std::min(options.max_signals, n) : n;

  const auto x_grid = internal::Compositions(resolution, m);
  const auto splits = internal::Compositions(resolution, signals);

  // Cap check on the number of scored (x, scheme-per-type) combinations.
  long double combos = 0.0L;
  for (const auto& xs : x_grid) {
    long double schemes = 1.0L;
    for (int i = 0; i < m; ++i) {
      if (xs[i] > 0) schemes *= static_cast<long double>(splits.size());
    }
    combos += std::pow(schemes, k_types);
  }
  if (combos > static_cast<long double>(options.cap)) {
    throw SolverError("brute-force oracle: combination count exceeds the cap");
  }

  OracleResult best;
  Eigen::VectorXd x(m);
  for (const auto& xs : x_grid) {
    for (int i = 0; i < m; ++i) x(i) = static_cast<double>(xs[i]) / resolution;
    std::vector<int> active;
    for (int i = 0; i < m; ++i) {
      if (xs[i] > 0) active.push_back(i);
    }
    // Schemes: one split index per active leader action.
    std::vector<std::vector<int>> schemes;
    std::vector<int> choice(active.size(), 0);
    while (true) {
      schemes.push_back(choice);
      int p = static_cast<int>(active.size()) - 1;
      while (p >= 0 && choice[p] == static_cast<int>(splits.size()) - 1) {
        choice[p--] = 0;
      }
      if (p < 0) break;
      ++choice[p];
    }
    const int ns = static_cast<int>(schemes.size());
    // Per scheme: correlation matrix and U/V against every true type.
    std::vector<Eigen::MatrixXd> corr(ns);
    Eigen::MatrixXd u(ns, k_types), v(ns, k_types);
    for (int s = 0; s < ns; ++s) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, n);
      for (std::size_t p = 0; p < active.size(); ++p) {
        const auto& split = splits[schemes[s][p]];
        for (int j = 0; j < signals; ++j) {
          c(active[p], j) = x(active[p]) * split[j] / resolution;
        }
      }
      for (int k = 0; k < k_types; ++k) {
        double uf = 0.0, vl = 0.0;
        for (int j = 0; j < signals; ++j) {
          const double nu = c.col(j).sum();
          if (nu <= kSignalDropThreshold) continue;
          const Eigen::VectorXd b = c.col(j) / nu;
          const int br = internal::BestResponse(game, k, b);
          uf += nu * b.dot(game.follower(k).col(br));
          vl += nu * b.dot(game.leader_payoff.col(br));
        }
        u(s, k) = uf;
        v(s, k) = vl;
      }
      corr[s] = std::move(c);
    }
    // Every assignment of schemes to reported types.
    std::vector<int> assign(k_types, 0);
    while (true) {
      double value = 0.0;
      for (int k = 0; k < k_types; ++k) {
        double top = -std::numeric_limits<double>::infinity();
        for (int r = 0; r < k_types; ++r) top = std::max(top, u(assign[r], k));
        int report = 0;
        while (u(assign[report], k) < top - kPayoffTolerance) ++report;
        value += game.prior(k) * v(assign[report], k);
      }
      ++best.evaluated;
      if (value > best.value + 1e-12) {
        best.value = value;
        best.commitment.x = x;
        best.commitment.correlation.clear();
        for (int r = 0; r < k_types; ++r) {
          best.commitment.correlation.push_back(corr[assign[r]]);
        }
      }
      int p = k_types - 1;
      while (p >= 0 && assign[p] == ns - 1) assign[p--] = 0;
      if (p < 0) break;
      ++assign[p];
    }
  }
  return best;
}

}  // namespace sigbsg

#endif  // SIGBSG_EQUILIBRIUM_HPP_
