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

// Polytopes over the belief simplex and over distributions on the atlas.
//
// A Polytope is the set {x : A x >= c} where rows flagged strict must hold
// with A_i x > c_i. Membership tests use an absolute tolerance of 1e-9: weak
// rows accept A_i x >= c_i - 1e-9, strict rows require A_i x >= c_i + 1e-9.
//
// Vectors over the atlas use the layout index(type, point) =
// type * atlas.size() + point.

#ifndef SIGBSG_GEOMETRY_HPP_
#define SIGBSG_GEOMETRY_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sigbsg/distribution.hpp"
#include "sigbsg/errors.hpp"
#include "sigbsg/game.hpp"
#include "sigbsg/lp.hpp"

namespace sigbsg {

inline constexpr double kMembershipTolerance = 1e-9;
inline constexpr double kVertexIdentityTolerance = 1e-7;
inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000;

class Polytope {
 public:
  Polytope() = default;
  explicit Polytope(int dim) : a_(0, dim), c_(0) {}

  int dim() const { return static_cast<int>(a_.cols()); }
  int num_rows() const { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXd& A() const { return a_; }
  const Eigen::VectorXd& c() const { return c_; }
  const std::vector<bool>& strict() const { return strict_; }
  bool is_strict(int row) const { return strict_[row]; }
  bool has_strict_rows() const {
    return std::find(strict_.begin(), strict_.end(), true) != strict_.end();
  }

  void AddRow(const Eigen::RowVectorXd& a, double c, bool strict = false) {
    if (a.size() != dim()) throw SolverError("polytope: row width mismatch");
    a_.conservativeResize(a_.rows() + 1, Eigen::NoChange);
    a_.row(a_.rows() - 1) = a;
    c_.conservativeResize(c_.size() + 1);
    c_(c_.size() - 1) = c;
    strict_.push_back(strict);
  }

  // a x = c, stored as the weak pair a x >= c and -a x >= -c.
  void AddEquality(const Eigen::RowVectorXd& a, double c) {
    AddRow(a, c);
    AddRow(-a, -c);
  }

  void Append(const Polytope& other) {
    if (other.dim() != dim()) throw SolverError("polytope: dimension mismatch");
    for (int r = 0; r < other.num_rows(); ++r) {
      AddRow(other.a_.row(r), other.c_(r), other.strict_[r]);
    }
  }

  Polytope Closure() const {
    Polytope p = *this;
    std::fill(p.strict_.begin(), p.strict_.end(), false);
    return p;
  }

  double Slack(int row, const Eigen::VectorXd& x) const {
    return a_.row(row).dot(x) - c_(row);
  }

  bool Contains(const Eigen::VectorXd& x,
                double tol = kMembershipTolerance) const {
    if (x.size() != dim()) return false;
    for (int r = 0; r < num_rows(); ++r) {
      const double s = Slack(r, x);
      if (strict_[r] ? s < tol : s < -tol) return false;
    }
    return true;
  }

  // Rows that come in exact weak +/- pairs; returns, for each row, the index
  // of its partner or -1.
  std::vector<int> EqualityPartners() const {
    std::vector<int> partner(num_rows(), -1);
    for (int r = 0; r < num_rows(); ++r) {
      if (strict_[r] || partner[r] >= 0) continue;
      for (int q = r + 1; q < num_rows(); ++q) {
        if (strict_[q] || partner[q] >= 0) continue;
        if (std::abs(c_(r) + c_(q)) <= 1e-12 &&
            (a_.row(r) + a_.row(q)).cwiseAbs().maxCoeff() <= 1e-12) {
          partner[r] = q;
          partner[q] = r;
          break;
        }
      }
    }
    return partner;
  }

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd c_;
  std::vector<bool> strict_;
};

// Nonnegativity plus the two rows encoding sum(x) = 1.
inline Polytope SimplexPolytope(int dim) {
  Polytope p(dim);
  for (int i = 0; i < dim; ++i) {
    Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(dim);
    e(i) = 1.0;
    p.AddRow(e, 0.0);
  }
  p.AddEquality(Eigen::RowVectorXd::Ones(dim), 1.0);
  return p;
}

// Beliefs under which j is a best response of `type`.
inline Polytope BrRegion(const Game& game, int type, int j) {
  game.CheckType(type);
  const int n = game.num_follower_actions();
  if (j < 0 || j >= n) throw ValidationError("follower action out of range");
  Polytope p = SimplexPolytope(game.num_leader_actions());
  const Eigen::MatrixXd& f = game.follower(type);
  for (int other = 0; other < n; ++other) {
    if (other == j) continue;
    p.AddRow((f.col(j) - f.col(other)).transpose(), 0.0);
  }
  return p;
}

// Intersection of the per-type regions for one action tuple.
inline Polytope JointRegion(const Game& game, const std::vector<int>& tuple) {
  if (static_cast<int>(tuple.size()) != game.num_types()) {
    throw ValidationError("joint region: tuple length differs from type count");
  }
  Polytope p = BrRegion(game, 0, tuple[0]);
  for (int k = 1; k < game.num_types(); ++k) {
    const Polytope region = BrRegion(game, k, tuple[k]);
    // Skip the repeated simplex rows; keep only the response rows.
    for (int r = game.num_leader_actions() + 2; r < region.num_rows(); ++r) {
      p.AddRow(region.A().row(r), region.c()(r), region.is_strict(r));
    }
  }
  return p;
}

namespace internal {

inline std::uint64_t SaturatingBinomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (r > 1e18L) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r + 0.5L);
}

inline bool LexLess(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

inline bool Near(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                 double tol) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace internal

// Extreme points of closure(p) by exhaustive active-set solves. Equality
// pairs are always active; the remaining dim - rank(equalities) active rows
// are chosen among the other rows. Output is deduplicated at 1e-7 and sorted
// lexicographically.
inline std::vector<Eigen::VectorXd> EnumerateVertices(
    const Polytope& p, std::uint64_t cap = kDefaultEnumerationCap) {
  const int d = p.dim();
  const std::vector<int> partner = p.EqualityPartners();

  // Independent subset of the equality rows.
  std::vector<int> equalities;
  Eigen::MatrixXd stacked(0, d);
  for (int r = 0; r < p.num_rows(); ++r) {
    if (partner[r] < 0 || partner[r] < r) continue;
    Eigen::MatrixXd trial(stacked.rows() + 1, d);
    trial << stacked, p.A().row(r);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(trial);
    lu.setThreshold(1e-10);
    if (lu.rank() == trial.rows()) {
      stacked = trial;
      equalities.push_back(r);
    }
  }

  std::vector<int> candidates;
  for (int r = 0; r < p.num_rows(); ++r) {
    if (partner[r] >= 0) continue;
    if (p.A().row(r).cwiseAbs().maxCoeff() == 0.0) {
      if (p.c()(r) > kMembershipTolerance) return {};  // 0 >= c > 0
      continue;
    }
    candidates.push_back(r);
  }

  const int rank_e = static_cast<int>(equalities.size());
  const int need = d - rank_e;
  if (need > static_cast<int>(candidates.size())) return {};
  const std::uint64_t subsets =
      internal::SaturatingBinomial(candidates.size(), need);
  if (subsets > cap) {
    throw SolverError("vertex enumeration: " + std::to_string(subsets) +
                      " active sets exceed the cap of " + std::to_string(cap) +
                      "; instance too large");
  }

  const Polytope closure = p.Closure();
  std::vector<Eigen::VectorXd> found;
  Eigen::MatrixXd system(d, d);
  Eigen::VectorXd rhs(d);
  for (int i = 0; i < rank_e; ++i) {
    system.row(i) = p.A().row(equalities[i]);
    rhs(i) = p.c()(equalities[i]);
  }
  std::vector<int> pick(need);
  for (int i = 0; i < need; ++i) pick[i] = i;
  while (true) {
    for (int i = 0; i < need; ++i) {
      system.row(rank_e + i) = p.A().row(candidates[pick[i]]);
      rhs(rank_e + i) = p.c()(candidates[pick[i]]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    lu.setThreshold(1e-10);
    if (lu.rank() == d) {
      const Eigen::VectorXd x = lu.solve(rhs);
      if (x.allFinite() && closure.Contains(x)) {
        bool duplicate = false;
        for (const auto& v : found) {
          if (internal::Near(v, x, kVertexIdentityTolerance)) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) found.push_back(x);
      }
    }
    // Next combination in lexicographic order.
    int i = need - 1;
    while (i >= 0 &&
           pick[i] == static_cast<int>(candidates.size()) - need + i) {
      --i;
    }
    if (i < 0) break;
    ++pick[i];
    for (int k = i + 1; k < need; ++k) pick[k] = pick[k - 1] + 1;
  }
  std::sort(found.begin(), found.end(), internal::LexLess);
  return found;
}

namespace internal {

// closure(p) as an LP over nonnegative variables. Coordinates without an
// explicit x_i >= 0 row are split into positive and negative parts.
struct PolytopeLp {
  lp::LinearProgram program{0};
  std::vector<int> positive;  // LP column of x_i
  std::vector<int> negative;  // LP column of -x_i, or -1

  Eigen::VectorXd Recover(const Eigen::VectorXd& z) const {
    Eigen::VectorXd x(positive.size());
    for (std::size_t i = 0; i < positive.size(); ++i) {
      x(i) = z(positive[i]) - (negative[i] >= 0 ? z(negative[i]) : 0.0);
    }
    return x;
  }
};

inline std::vector<bool> NonnegativeCoordinates(const Polytope& p) {
  std::vector<bool> nonneg(p.dim(), false);
  for (int r = 0; r < p.num_rows(); ++r) {
    if (p.c()(r) != 0.0) continue;
    int hit = -1;
    bool unit = true;
    for (int i = 0; i < p.dim() && unit; ++i) {
      const double a = p.A()(r, i);
      if (a == 0.0) continue;
      if (a > 0.0 && hit < 0) {
        hit = i;
      } else {
        unit = false;
      }
    }
    if (unit && hit >= 0) nonneg[hit] = true;
  }
  return nonneg;
}

// Builds the LP skeleton with `extra` trailing columns reserved for callers.
inline PolytopeLp MakePolytopeLp(const Polytope& p, int extra) {
  const std::vector<bool> nonneg = NonnegativeCoordinates(p);
  PolytopeLp out;
  int cols = 0;
  out.positive.resize(p.dim());
  out.negative.assign(p.dim(), -1);
  for (int i = 0; i < p.dim(); ++i) {
    out.positive[i] = cols++;
    if (!nonneg[i]) out.negative[i] = cols++;
  }
  out.program = lp::LinearProgram(cols + extra);
  return out;
}

inline Eigen::RowVectorXd LiftRow(const PolytopeLp& lp_form,
                                  const Eigen::RowVectorXd& a) {
  Eigen::RowVectorXd row =
      Eigen::RowVectorXd::Zero(lp_form.program.num_vars());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    row(lp_form.positive[i]) += a(i);
    if (lp_form.negative[i] >= 0) row(lp_form.negative[i]) -= a(i);
  }
  return row;
}

}  // namespace internal

// Maximizes objective . x over closure(p). nullopt when closure(p) is empty.
inline std::optional<Eigen::VectorXd> MaximizeOver(
    const Polytope& p, const Eigen::VectorXd& objective) {
  internal::PolytopeLp form = internal::MakePolytopeLp(p, 0);
  for (int r = 0; r < p.num_rows(); ++r) {
    form.program.AddRow(internal::LiftRow(form, p.A().row(r)),
                        lp::Relation::kGreaterEqual, p.c()(r));
  }
  form.program.objective() = internal::LiftRow(form, objective.transpose())
                                 .transpose();
  const lp::Solution sol = lp::Maximize(form.program);
  if (sol.status == lp::Status::kInfeasible) return std::nullopt;
  if (!sol.optimal()) {
    throw SolverError("polytope LP failed: " + lp::ToString(sol.status));
  }
  return form.Recover(sol.x);
}

inline bool IsEmpty(const Polytope& p) {
  return !MaximizeOver(p.Closure(), Eigen::VectorXd::Zero(p.dim())).has_value();
}

struct StrictPoint {
  Eigen::VectorXd x;
  double slack = 0.0;  // min slack over the rows that were maximized
};

// A point maximizing the minimum slack of the strict rows (or, when there are
// none, of every row that is not half of an equality pair). nullopt when the
// closure is empty or the strict rows cannot all hold with slack > 1e-9.
inline std::optional<StrictPoint> StrictFeasiblePoint(const Polytope& p) {
  const std::vector<int> partner = p.EqualityPartners();
  const bool any_strict = p.has_strict_rows();
  internal::PolytopeLp form = internal::MakePolytopeLp(p, 1);
  const int s_col = form.program.num_vars() - 1;  // s + 1, in [0, 2]
  for (int r = 0; r < p.num_rows(); ++r) {
    Eigen::RowVectorXd row = internal::LiftRow(form, p.A().row(r));
    double rhs = p.c()(r);
    const bool target = any_strict ? p.is_strict(r) : partner[r] < 0;
    if (target) {
      row(s_col) = -1.0;  // a x - (s + 1) >= c - 1
      rhs -= 1.0;
    }
    form.program.AddRow(row, lp::Relation::kGreaterEqual, rhs);
  }
  Eigen::RowVectorXd cap = Eigen::RowVectorXd::Zero(form.program.num_vars());
  cap(s_col) = 1.0;
  form.program.AddRow(cap, lp::Relation::kLessEqual, 2.0);
  form.program.objective()(s_col) = 1.0;

  const lp::Solution sol = lp::Maximize(form.program);
  if (sol.status == lp::Status::kInfeasible) return std::nullopt;
  if (!sol.optimal()) {
    throw SolverError("strict-feasibility LP failed: " +
                      lp::ToString(sol.status));
  }
  StrictPoint out;
  out.x = form.Recover(sol.x);
  out.slack = sol.x(s_col) - 1.0;
  // The slack column relaxes the target rows, so a negative optimum means
  // the closure itself is empty.
  if (out.slack < -kMembershipTolerance) return std::nullopt;
  if (any_strict && out.slack <= kMembershipTolerance) return std::nullopt;
  return out;
}

// The finite belief set: union of the vertices of every joint region.
struct BeliefAtlas {
  std::vector<Belief> points;
  // origin[p] lists the action tuples whose region has points[p] as a vertex.
  std::vector<std::vector<std::vector<int>>> origin;

  int size() const { return static_cast<int>(points.size()); }

  std::optional<int> Find(const Eigen::VectorXd& b,
                          double tol = kVertexIdentityTolerance) const {
    for (int p = 0; p < size(); ++p) {
      if (b.size() == points[p].size() &&
          internal::Near(points[p].coords(), b, tol)) {
        return p;
      }
    }
    return std::nullopt;
  }
};

// All tuples in [n]^k in lexicographic order.
inline std::vector<std::vector<int>> AllTuples(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(k, 0);
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[i] == n - 1) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
  return out;
}

namespace internal {

// Snap a computed vertex back onto the simplex.
inline Belief ToBelief(Eigen::VectorXd x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) < 0.0) x(i) = 0.0;
  }
  x /= x.sum();
  return Belief(std::move(x));
}

}  // namespace internal

inline BeliefAtlas BuildBeliefAtlas(const Game& game,
                                    std::uint64_t cap = kDefaultEnumerationCap) {
  BeliefAtlas raw;
  for (const auto& tuple :
       AllTuples(game.num_follower_actions(), game.num_types())) {
    for (const auto& v : EnumerateVertices(JointRegion(game, tuple), cap)) {
      const Belief b = internal::ToBelief(v);
      if (auto hit = raw.Find(b.coords())) {
        raw.origin[*hit].push_back(tuple);
      } else {
        raw.points.push_back(b);
        raw.origin.push_back({tuple});
      }
    }
  }
  std::vector<int> order(raw.size());
  for (int i = 0; i < raw.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return internal::LexLess(raw.points[a].coords(), raw.points[b].coords());
  });
  BeliefAtlas atlas;
  for (int i : order) {
    atlas.points.push_back(raw.points[i]);
    atlas.origin.push_back(raw.origin[i]);
  }
  return atlas;
}

// Follower and leader values at every atlas point: rows are types.
struct AtlasPayoffs {
  Eigen::MatrixXd follower;  // K x |atlas|
  Eigen::MatrixXd leader;    // K x |atlas|
};

inline AtlasPayoffs ComputeAtlasPayoffs(const Game& game,
                                        const BeliefAtlas& atlas) {
  AtlasPayoffs out;
  out.follower.resize(game.num_types(), atlas.size());
  out.leader.resize(game.num_types(), atlas.size());
  for (int k = 0; k < game.num_types(); ++k) {
    for (int p = 0; p < atlas.size(); ++p) {
      out.follower(k, p) = FollowerValue(game, k, atlas.points[p]);
      out.leader(k, p) = LeaderBeliefValue(game, k, atlas.points[p]);
    }
  }
  return out;
}

// Dense vector form of an atlas-supported distribution.
inline Eigen::VectorXd ToAtlasVector(const BeliefDistribution& pi,
                                     const BeliefAtlas& atlas) {
  const int a = atlas.size();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(pi.num_types() * a);
  for (int t = 0; t < pi.num_types(); ++t) {
    for (const auto& sp : pi.support(t)) {
      const auto hit = atlas.Find(sp.belief.coords());
      if (!hit) {
        throw ValidationError("distribution support point is not in the atlas");
      }
      v(t * a + *hit) += sp.weight;
    }
  }
  return v;
}

// Inverse of ToAtlasVector; weights <= 1e-12 are dropped.
inline BeliefDistribution FromAtlasVector(const Eigen::VectorXd& v,
                                          const BeliefAtlas& atlas) {
  const int a = atlas.size();
  if (a == 0 || v.size() % a != 0) {
    throw ValidationError("atlas vector has the wrong length");
  }
  BeliefDistribution pi;
  pi.per_type.resize(v.size() / a);
  for (int t = 0; t < pi.num_types(); ++t) {
    for (int p = 0; p < a; ++p) {
      if (v(t * a + p) > 1e-12) {
        pi.per_type[t].push_back({atlas.points[p], v(t * a + p)});
      }
    }
  }
  return pi;
}

// Consistency residual of an atlas-supported distribution; throws when a
// support point is outside the atlas.
inline double ConsistencyResidual(const BeliefDistribution& pi,
                                  const BeliefAtlas& atlas) {
  for (int t = 0; t < pi.num_types(); ++t) {
    for (const auto& sp : pi.support(t)) {
      if (!atlas.Find(sp.belief.coords())) {
        throw ValidationError("distribution support point is not in the atlas");
      }
    }
  }
  return ConsistencyResidual(pi);
}

// gamma[k] is the type reported by true type k (0-based).
using PartitionMap = std::vector<int>;

// All k^k maps from types to reported types, lexicographic.
inline std::vector<PartitionMap> AllPartitionMaps(int num_types) {
  return AllTuples(num_types, num_types);
}

// The set of consistent atlas distributions under which every true type k
// reports gamma[k]. Reports tie-break towards the smallest index, so for
// gamma[k] = l the comparison against every q < l is strict and against every
// q > l is weak.
inline Polytope PartitionPolytope(const Game& game, const BeliefAtlas& atlas,
                                  const PartitionMap& gamma,
                                  const AtlasPayoffs& payoffs) {
  const int k_types = game.num_types();
  const int a = atlas.size();
  const int m = game.num_leader_actions();
  if (static_cast<int>(gamma.size()) != k_types) {
    throw ValidationError("partition map length differs from type count");
  }
  for (int g : gamma) {
    if (g < 0 || g >= k_types) throw ValidationError("partition map entry out of range");
  }
  const int d = k_types * a;
  Polytope p(d);
  for (int i = 0; i < d; ++i) {
    Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(d);
    e(i) = 1.0;
    p.AddRow(e, 0.0);
  }
  for (int t = 0; t < k_types; ++t) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(d);
    row.segment(t * a, a).setOnes();
    p.AddEquality(row, 1.0);
  }
  for (int t = 1; t < k_types; ++t) {
    for (int i = 0; i < m; ++i) {
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(d);
      for (int q = 0; q < a; ++q) {
        row(t * a + q) = atlas.points[q](i);
        row(q) = -atlas.points[q](i);
      }
      p.AddEquality(row, 0.0);
    }
  }
  for (int k = 0; k < k_types; ++k) {
    const int l = gamma[k];
    for (int q = 0; q < k_types; ++q) {
      if (q == l) continue;
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(d);
      row.segment(l * a, a) += payoffs.follower.row(k);
      row.segment(q * a, a) -= payoffs.follower.row(k);
      p.AddRow(row, 0.0, q < l);
    }
  }
  return p;
}

inline Polytope PartitionPolytope(const Game& game, const BeliefAtlas& atlas,
                                  const PartitionMap& gamma) {
  return PartitionPolytope(game, atlas, gamma,
                           ComputeAtlasPayoffs(game, atlas));
}

}  // namespace sigbsg

#endif  // SIGBSG_GEOMETRY_HPP_
