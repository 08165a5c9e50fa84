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

// Dense two-phase primal simplex with deterministic pivoting.
//
// Problems are stated as
//
//   maximize    c^T x
//   subject to  a_r^T x (<=, >=, =) b_r   for every row r
//               x >= 0
//
// Pricing starts with Dantzig's rule (largest reduced cost, lowest column on
// ties) and switches permanently to Bland's rule once a streak of degenerate
// pivots is seen, so the pivot sequence is a pure function of the input.
// The ratio test always breaks ties on the lowest basic variable index.
//
// After the final basis is found the basic solution is recomputed from the
// original data with an LU solve, which keeps primal residuals near machine
// precision even after long pivot sequences.

#ifndef SIGBSG_LP_HPP_
#define SIGBSG_LP_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sigbsg/errors.hpp"

namespace sigbsg::lp {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

inline std::string ToString(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
    case Status::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

struct Options {
  double pivot_tolerance = 1e-9;
  double cost_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  int degenerate_streak_for_bland = 50;
  int refactor_period = 32;  // pivots between re-inversions of the basis
  // Inequality right-hand sides are loosened by this relative amount while
  // pivoting, which breaks ties in degenerate vertices; the exact rhs is
  // restored before the final basis is reported.
  double rhs_perturbation = 1e-7;
  int max_iterations = 100000;
};

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
  int iterations = 0;

  bool optimal() const { return status == Status::kOptimal; }
};

class LinearProgram {
 public:
  explicit LinearProgram(int num_vars)
      : num_vars_(num_vars), objective_(Eigen::VectorXd::Zero(num_vars)) {}

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(rhs_.size()); }

  Eigen::VectorXd& objective() { return objective_; }
  const Eigen::VectorXd& objective() const { return objective_; }

  void AddRow(const Eigen::RowVectorXd& coeffs, Relation relation,
              double rhs) {
    if (coeffs.size() != num_vars_) {
      throw SolverError("lp: row width does not match variable count");
    }
    rows_.push_back(coeffs);
    relations_.push_back(relation);
    rhs_.push_back(rhs);
  }

  // Sparse convenience: (column, coefficient) terms; repeated columns add up.
  void AddRow(const std::vector<std::pair<int, double>>& terms,
              Relation relation, double rhs) {
    Eigen::RowVectorXd coeffs = Eigen::RowVectorXd::Zero(num_vars_);
    for (const auto& [col, value] : terms) coeffs(col) += value;
    AddRow(coeffs, relation, rhs);
  }

  const Eigen::RowVectorXd& row(int r) const { return rows_[r]; }
  Relation relation(int r) const { return relations_[r]; }
  double rhs(int r) const { return rhs_[r]; }

  // Largest violation of any row or bound at x.
  double MaxViolation(const Eigen::VectorXd& x) const {
    double worst = std::max(0.0, -x.minCoeff());
    for (int r = 0; r < num_rows(); ++r) {
      const double lhs = rows_[r].dot(x);
      double v = 0.0;
      switch (relations_[r]) {
        case Relation::kLessEqual:
          v = lhs - rhs_[r];
          break;
        case Relation::kGreaterEqual:
          v = rhs_[r] - lhs;
          break;
        case Relation::kEqual:
          v = std::abs(lhs - rhs_[r]);
          break;
      }
      worst = std::max(worst, v);
    }
    return worst;
  }

 private:
  int num_vars_;
  Eigen::VectorXd objective_;
  std::vector<Eigen::RowVectorXd> rows_;
  std::vector<Relation> relations_;
  std::vector<double> rhs_;
};

namespace internal {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const Options& options)
      : options_(options), num_structural_(lp.num_vars()) {
    const int m = lp.num_rows();
    int num_slack = 0;
    int num_artificial = 0;
    std::vector<Relation> rel(m);
    std::vector<double> sign(m, 1.0);
    std::vector<double> shifted(m);
    for (int r = 0; r < m; ++r) {
      rel[r] = lp.relation(r);
      shifted[r] = lp.rhs(r);
      if (rel[r] != Relation::kEqual) {
        const double loosen = options_.rhs_perturbation *
                              (1.0 + std::abs(lp.rhs(r))) * (1.0 + Jitter(r));
        shifted[r] += rel[r] == Relation::kLessEqual ? loosen : -loosen;
      }
      if (shifted[r] < 0.0) {
        sign[r] = -1.0;
        if (rel[r] == Relation::kLessEqual) {
          rel[r] = Relation::kGreaterEqual;
        } else if (rel[r] == Relation::kGreaterEqual) {
          rel[r] = Relation::kLessEqual;
        }
      }
      if (rel[r] != Relation::kEqual) ++num_slack;
      if (rel[r] != Relation::kLessEqual) ++num_artificial;
    }
    first_artificial_ = num_structural_ + num_slack;
    num_cols_ = first_artificial_ + num_artificial;

    // Columns [0, n) structural, then slacks, then artificials; the last
    // column holds the right-hand side.
    original_ = Eigen::MatrixXd::Zero(m, num_cols_ + 1);
    exact_rhs_ = Eigen::VectorXd::Zero(m);
    basis_.assign(m, -1);
    int next_slack = num_structural_;
    int next_artificial = first_artificial_;
    for (int r = 0; r < m; ++r) {
      original_.row(r).head(num_structural_) = sign[r] * lp.row(r);
      original_(r, num_cols_) = sign[r] * shifted[r];
      exact_rhs_(r) = sign[r] * lp.rhs(r);
      switch (rel[r]) {
        case Relation::kLessEqual:
          original_(r, next_slack) = 1.0;
          basis_[r] = next_slack++;
          break;
        case Relation::kGreaterEqual:
          original_(r, next_slack++) = -1.0;
          original_(r, next_artificial) = 1.0;
          basis_[r] = next_artificial++;
          break;
        case Relation::kEqual:
          original_(r, next_artificial) = 1.0;
          basis_[r] = next_artificial++;
          break;
      }
    }
    body_ = original_;
    rows_alive_.assign(m, true);
  }

  Solution Solve(const Eigen::VectorXd& objective) {
    Solution solution;
    // Phase 1: maximize -sum(artificials).
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(num_cols_);
    for (int c = first_artificial_; c < num_cols_; ++c) phase1(c) = -1.0;
    Status status = Optimize(phase1, num_cols_, &solution.iterations);
    if (status == Status::kIterationLimit) {
      solution.status = status;
      return solution;
    }
    double infeasibility = 0.0;
    for (int r = 0; r < Rows(); ++r) {
      if (rows_alive_[r] && basis_[r] >= first_artificial_) {
        infeasibility += body_(r, num_cols_);
      }
    }
    if (infeasibility > options_.feasibility_tolerance) {
      solution.status = Status::kInfeasible;
      return solution;
    }
    DriveOutArtificials();

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(num_cols_);
    phase2.head(num_structural_) = objective;
    status = Optimize(phase2, first_artificial_, &solution.iterations);
    solution.status = status;
    if (status != Status::kOptimal) return solution;

    // Put the exact rhs back; the basis stays dual feasible, so a few dual
    // pivots restore primal feasibility.
    original_.col(num_cols_) = exact_rhs_;
    Reinvert();
    status = DualCleanup(phase2, &solution.iterations);
    solution.status = status;
    if (status != Status::kOptimal) return solution;

    solution.x = Refine();
    solution.objective = objective.dot(solution.x);
    return solution;
  }

 private:
  int Rows() const { return static_cast<int>(basis_.size()); }

  // Reduced costs d_j = c_j - c_B^T B^{-1} a_j for the current tableau body.
  Eigen::VectorXd ReducedCosts(const Eigen::VectorXd& cost) const {
    Eigen::VectorXd d = cost;
    for (int r = 0; r < Rows(); ++r) {
      if (!rows_alive_[r]) continue;
      const double cb = cost(basis_[r]);
      if (cb != 0.0) d -= cb * body_.row(r).head(num_cols_).transpose();
    }
    return d;
  }

  Status Optimize(const Eigen::VectorXd& cost, int enterable_cols,
                  int* iterations) {
    bool bland = false;
    int degenerate_streak = 0;
    int since_refactor = 0;
    std::vector<bool> is_basic(num_cols_, false);
    for (int r = 0; r < Rows(); ++r) {
      if (rows_alive_[r]) is_basic[basis_[r]] = true;
    }
    while (true) {
      if (*iterations >= options_.max_iterations) {
        return Status::kIterationLimit;
      }
      if (since_refactor >= options_.refactor_period) {
        Reinvert();
        since_refactor = 0;
      }
      const Eigen::VectorXd d = ReducedCosts(cost);
      int entering = -1;
      double best = options_.cost_tolerance;
      for (int c = 0; c < enterable_cols; ++c) {
        if (is_basic[c] || d(c) <= options_.cost_tolerance) continue;
        if (bland) {
          entering = c;
          break;
        }
        if (d(c) > best) {
          best = d(c);
          entering = c;
        }
      }
      if (entering < 0) return Status::kOptimal;

      // Ratio test. Near-ties go to the largest pivot element for stability,
      // or to the lowest basic index once Bland's rule is active.
      int leaving_row = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < Rows(); ++r) {
        if (!rows_alive_[r]) continue;
        const double a = body_(r, entering);
        if (a <= options_.pivot_tolerance) continue;
        const double ratio = std::max(0.0, body_(r, num_cols_)) / a;
        bool take = ratio < best_ratio - 1e-12;
        if (!take && leaving_row >= 0 && ratio <= best_ratio + 1e-12) {
          take = bland ? basis_[r] < basis_[leaving_row]
                       : a > body_(leaving_row, entering);
        }
        if (take) {
          best_ratio = std::min(best_ratio, ratio);
          leaving_row = r;
        }
      }
      if (leaving_row < 0) return Status::kUnbounded;

      if (best_ratio <= 1e-12) {
        if (++degenerate_streak >= options_.degenerate_streak_for_bland) {
          bland = true;
        }
      } else {
        degenerate_streak = 0;
      }
      is_basic[basis_[leaving_row]] = false;
      is_basic[entering] = true;
      Pivot(leaving_row, entering);
      ++since_refactor;
      ++*iterations;
    }
  }

  // Rebuilds the tableau body as B^{-1} times the original rows, discarding
  // accumulated rounding error.
  void Reinvert() {
    std::vector<int> live;
    for (int r = 0; r < Rows(); ++r) {
      if (rows_alive_[r]) live.push_back(r);
    }
    const int k = static_cast<int>(live.size());
    if (k == 0) return;
    Eigen::MatrixXd basis_matrix(k, k);
    Eigen::MatrixXd rows(k, num_cols_ + 1);
    for (int i = 0; i < k; ++i) {
      rows.row(i) = original_.row(live[i]);
      for (int j = 0; j < k; ++j) {
        basis_matrix(i, j) = original_(live[i], basis_[live[j]]);
      }
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    const Eigen::MatrixXd fresh = lu.solve(rows);
    if (!fresh.allFinite()) return;
    for (int i = 0; i < k; ++i) body_.row(live[i]) = fresh.row(i);
  }

  // Deterministic value in [0, 1) per row.
  static double Jitter(int r) {
    std::uint64_t z = 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  Status DualCleanup(const Eigen::VectorXd& cost, int* iterations) {
    std::vector<bool> is_basic(num_cols_, false);
    for (int r = 0; r < Rows(); ++r) {
      if (rows_alive_[r]) is_basic[basis_[r]] = true;
    }
    int since_refactor = 0;
    while (true) {
      int row = -1;
      double worst = -1e-12;
      for (int r = 0; r < Rows(); ++r) {
        if (rows_alive_[r] && body_(r, num_cols_) < worst) {
          worst = body_(r, num_cols_);
          row = r;
        }
      }
      if (row < 0) return Status::kOptimal;
      if (*iterations >= options_.max_iterations) {
        return Status::kIterationLimit;
      }
      const Eigen::VectorXd d = ReducedCosts(cost);
      int entering = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int c = 0; c < first_artificial_; ++c) {
        if (is_basic[c]) continue;
        const double a = body_(row, c);
        if (a >= -options_.pivot_tolerance) continue;
        const double ratio = std::max(0.0, -d(c)) / -a;
        if (ratio < best_ratio - 1e-12 ||
            (entering >= 0 && ratio <= best_ratio + 1e-12 &&
             a < body_(row, entering))) {
          best_ratio = std::min(best_ratio, ratio);
          entering = c;
        }
      }
      if (entering < 0) {
        return worst < -options_.feasibility_tolerance ? Status::kInfeasible
                                                       : Status::kOptimal;
      }
      is_basic[basis_[row]] = false;
      is_basic[entering] = true;
      Pivot(row, entering);
      ++*iterations;
      if (++since_refactor >= options_.refactor_period) {
        Reinvert();
        since_refactor = 0;
      }
    }
  }

  void Pivot(int row, int col) {
    body_.row(row) /= body_(row, col);
    for (int r = 0; r < Rows(); ++r) {
      if (r == row || !rows_alive_[r]) continue;
      const double factor = body_(r, col);
      if (factor != 0.0) body_.row(r) -= factor * body_.row(row);
    }
    basis_[row] = col;
  }

  void DriveOutArtificials() {
    for (int r = 0; r < Rows(); ++r) {
      if (!rows_alive_[r] || basis_[r] < first_artificial_) continue;
      int col = -1;
      double best = 1e-9;
      for (int c = 0; c < first_artificial_; ++c) {
        if (std::abs(body_(r, c)) > best) {
          best = std::abs(body_(r, c));
          col = c;
        }
      }
      if (col >= 0) {
        Pivot(r, col);
      } else {
        rows_alive_[r] = false;  // redundant row
      }
    }
  }

  // Recompute the basic solution from the original rows.
  Eigen::VectorXd Refine() const {
    std::vector<int> live_rows;
    std::vector<int> cols;
    for (int r = 0; r < Rows(); ++r) {
      if (!rows_alive_[r]) continue;
      live_rows.push_back(r);
      cols.push_back(basis_[r]);
    }
    Eigen::VectorXd full = Eigen::VectorXd::Zero(num_cols_);
    for (int r = 0; r < Rows(); ++r) {
      if (rows_alive_[r]) full(basis_[r]) = body_(r, num_cols_);
    }
    const int k = static_cast<int>(live_rows.size());
    if (k > 0) {
      Eigen::MatrixXd basis_matrix(k, k);
      Eigen::VectorXd rhs(k);
      for (int i = 0; i < k; ++i) {
        rhs(i) = original_(live_rows[i], num_cols_);
        for (int j = 0; j < k; ++j) {
          basis_matrix(i, j) = original_(live_rows[i], cols[j]);
        }
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
      Eigen::VectorXd xb = lu.solve(rhs);
      if (xb.allFinite() && (basis_matrix * xb - rhs).cwiseAbs().maxCoeff() <
                                1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff())) {
        for (int j = 0; j < k; ++j) full(cols[j]) = xb(j);
      }
    }
    Eigen::VectorXd x = full.head(num_structural_);
    for (int j = 0; j < x.size(); ++j) {
      if (x(j) < 0.0 && x(j) > -options_.feasibility_tolerance) x(j) = 0.0;
    }
    return x;
  }

  Options options_;
  int num_structural_;
  int first_artificial_ = 0;
  int num_cols_ = 0;
  Eigen::MatrixXd original_;
  Eigen::VectorXd exact_rhs_;
  Eigen::MatrixXd body_;
  std::vector<int> basis_;
  std::vector<bool> rows_alive_;
};

}  // namespace internal

inline Solution Maximize(const LinearProgram& lp, const Options& options = {}) {
  internal::Tableau tableau(lp, options);
  return tableau.Solve(lp.objective());
}

inline Solution Minimize(const LinearProgram& lp, const Options& options = {}) {
  LinearProgram negated = lp;
  negated.objective() = -lp.objective();
  Solution solution = Maximize(negated, options);
  solution.objective = -solution.objective;
  return solution;
}

}  // namespace sigbsg::lp

#endif  // SIGBSG_LP_HPP_
