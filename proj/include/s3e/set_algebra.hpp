// Zonotope and constrained-zonotope algebra.
//
// A zonotope <c, G> is the affine image {c + G b : b in [-1,1]^xi} of a unit
// hypercube; a constrained zonotope <c, G, A, b> additionally restricts the
// hypercube factor to {A b_z = b}. Exact operations (linear map, Minkowski
// sum, Cartesian product, generalized intersection) are matrix assembly;
// queries (emptiness, membership, radius, interval hull, support) reduce to
// bounded-variable feasibility LPs solved by s3e::lp.
//
// All types are immutable value types and all operations return new values.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "s3e/lp.hpp"

namespace s3e {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Feasibility tolerance shared by all set queries.
inline constexpr double kFeasTol = lp::kFeasTol;

struct Zonotope {
  Vec center;      // dimension n
  Mat generators;  // n x xi, xi >= 0

  Zonotope() = default;
  Zonotope(Vec c, Mat g) : center(std::move(c)), generators(std::move(g)) {
    if (generators.size() == 0 && generators.rows() != center.size()) {
      generators.resize(center.size(), 0);
    }
    if (generators.rows() != center.size()) {
      throw std::invalid_argument("Zonotope: generator rows must match center dimension");
    }
  }

  /// Singleton {c}.
  static Zonotope singleton(Vec c) {
    const auto n = c.size();
    return Zonotope(std::move(c), Mat::Zero(n, 0));
  }

  Eigen::Index dim() const { return center.size(); }
  Eigen::Index num_generators() const { return generators.cols(); }
};

struct ConstrainedZonotope {
  Vec center;      // n
  Mat generators;  // n x xi
  Mat con_matrix;  // m x xi
  Vec con_vector;  // m

  ConstrainedZonotope() = default;

  ConstrainedZonotope(Vec c, Mat g, Mat a, Vec b)
      : center(std::move(c)),
        generators(std::move(g)),
        con_matrix(std::move(a)),
        con_vector(std::move(b)) {
    if (generators.size() == 0 && generators.rows() != center.size()) {
      generators.resize(center.size(), 0);
    }
    if (con_matrix.size() == 0 && con_matrix.cols() != generators.cols()) {
      con_matrix.resize(0, generators.cols());
    }
    if (generators.rows() != center.size() || con_matrix.cols() != generators.cols() ||
        con_vector.size() != con_matrix.rows()) {
      throw std::invalid_argument("ConstrainedZonotope: inconsistent dimensions");
    }
  }

  /// Unconstrained constrained-zonotope (m = 0).
  ConstrainedZonotope(Vec c, Mat g)
      : ConstrainedZonotope(std::move(c), std::move(g), Mat(), Vec()) {}

  explicit ConstrainedZonotope(const Zonotope& z)
      : ConstrainedZonotope(z.center, z.generators) {}

  static ConstrainedZonotope singleton(Vec c) {
    return ConstrainedZonotope(Zonotope::singleton(std::move(c)));
  }

  Eigen::Index dim() const { return center.size(); }
  Eigen::Index num_generators() const { return generators.cols(); }
  Eigen::Index num_constraints() const { return con_matrix.rows(); }
  bool is_unconstrained() const { return con_matrix.rows() == 0; }
};

/// Axis-aligned hypercube H(c, r) = <c, r * I>.
struct Hypercube {
  Vec center;
  double radius = 0.0;

  Hypercube() = default;
  Hypercube(Vec c, double r) : center(std::move(c)), radius(r) {
    if (r < 0.0) throw std::invalid_argument("Hypercube: negative radius");
  }

  Zonotope to_zonotope() const {
    return Zonotope(center, radius * Mat::Identity(center.size(), center.size()));
  }
};

/// Tight axis-aligned bounds, one interval per coordinate.
struct IntervalBox {
  Vec lower;
  Vec upper;

  Vec center() const { return 0.5 * (lower + upper); }
  Vec half_width() const { return 0.5 * (upper - lower); }

  Zonotope to_zonotope() const {
    return Zonotope(center(), Mat(half_width().asDiagonal()));
  }

  bool contains(const IntervalBox& other, double tol = kFeasTol) const {
    return (other.lower.array() >= lower.array() - tol).all() &&
           (other.upper.array() <= upper.array() + tol).all();
  }
};

/// Ordered list of constrained zonotopes representing a union-valued set.
struct SetCollection {
  std::vector<ConstrainedZonotope> members;

  SetCollection() = default;
  explicit SetCollection(std::vector<ConstrainedZonotope> m) : members(std::move(m)) {}

  Eigen::Index dim() const { return members.empty() ? 0 : members.front().dim(); }
  size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
};

// ---------------------------------------------------------------------------
// Exact operations
// ---------------------------------------------------------------------------

inline ConstrainedZonotope linear_map(const Mat& m, const ConstrainedZonotope& z) {
  if (m.cols() != z.dim()) {
    throw std::invalid_argument("linear_map: matrix columns must match set dimension");
  }
  return ConstrainedZonotope(m * z.center, m * z.generators, z.con_matrix, z.con_vector);
}

inline Zonotope linear_map(const Mat& m, const Zonotope& z) {
  if (m.cols() != z.dim()) {
    throw std::invalid_argument("linear_map: matrix columns must match set dimension");
  }
  return Zonotope(m * z.center, m * z.generators);
}

inline ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& z1,
                                         const ConstrainedZonotope& z2) {
  if (z1.dim() != z2.dim()) {
    throw std::invalid_argument("minkowski_sum: dimension mismatch");
  }
  const auto xi1 = z1.num_generators(), xi2 = z2.num_generators();
  const auto m1 = z1.num_constraints(), m2 = z2.num_constraints();
  Mat g(z1.dim(), xi1 + xi2);
  g << z1.generators, z2.generators;
  Mat a = Mat::Zero(m1 + m2, xi1 + xi2);
  a.topLeftCorner(m1, xi1) = z1.con_matrix;
  a.bottomRightCorner(m2, xi2) = z2.con_matrix;
  Vec b(m1 + m2);
  b << z1.con_vector, z2.con_vector;
  return ConstrainedZonotope(z1.center + z2.center, std::move(g), std::move(a), std::move(b));
}

inline Zonotope minkowski_sum(const Zonotope& z1, const Zonotope& z2) {
  if (z1.dim() != z2.dim()) {
    throw std::invalid_argument("minkowski_sum: dimension mismatch");
  }
  Mat g(z1.dim(), z1.num_generators() + z2.num_generators());
  g << z1.generators, z2.generators;
  return Zonotope(z1.center + z2.center, std::move(g));
}

inline Zonotope cartesian_product(const Zonotope& z1, const Zonotope& z2) {
  Vec c(z1.dim() + z2.dim());
  c << z1.center, z2.center;
  Mat g = Mat::Zero(z1.dim() + z2.dim(), z1.num_generators() + z2.num_generators());
  g.topLeftCorner(z1.dim(), z1.num_generators()) = z1.generators;
  g.bottomRightCorner(z2.dim(), z2.num_generators()) = z2.generators;
  return Zonotope(std::move(c), std::move(g));
}

/// Generalized intersection {z in Z : M z in Y}, computed exactly.
inline ConstrainedZonotope generalized_intersection(const ConstrainedZonotope& z,
                                                    const ConstrainedZonotope& y,
                                                    const Mat& m) {
  if (m.cols() != z.dim() || m.rows() != y.dim()) {
    throw std::invalid_argument("generalized_intersection: map dimension mismatch");
  }
  const auto xi_z = z.num_generators(), xi_y = y.num_generators();
  const auto m_z = z.num_constraints(), m_y = y.num_constraints();
  const auto n_y = y.dim();

  Mat g = Mat::Zero(z.dim(), xi_z + xi_y);
  g.leftCols(xi_z) = z.generators;

  Mat a = Mat::Zero(m_z + m_y + n_y, xi_z + xi_y);
  a.topLeftCorner(m_z, xi_z) = z.con_matrix;
  a.block(m_z, xi_z, m_y, xi_y) = y.con_matrix;
  a.block(m_z + m_y, 0, n_y, xi_z) = m * z.generators;
  a.bottomRightCorner(n_y, xi_y) = -y.generators;

  Vec b(m_z + m_y + n_y);
  b << z.con_vector, y.con_vector, y.center - m * z.center;

  return ConstrainedZonotope(z.center, std::move(g), std::move(a), std::move(b));
}

/// Plain intersection Z1 n Z2 (generalized intersection with the identity map).
inline ConstrainedZonotope intersect(const ConstrainedZonotope& z1,
                                     const ConstrainedZonotope& z2) {
  return generalized_intersection(z1, z2, Mat::Identity(z1.dim(), z1.dim()));
}

/// Drops generator columns that are zero in both the generator and the
/// constraint matrix; such columns do not affect the set.
inline ConstrainedZonotope normalized(const ConstrainedZonotope& z) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < z.num_generators(); ++j) {
    if (!z.generators.col(j).isZero(0.0) ||
        (z.num_constraints() > 0 && !z.con_matrix.col(j).isZero(0.0))) {
      keep.push_back(j);
    }
  }
  if (static_cast<Eigen::Index>(keep.size()) == z.num_generators()) return z;
  Mat g(z.dim(), keep.size());
  Mat a(z.num_constraints(), keep.size());
  for (size_t k = 0; k < keep.size(); ++k) {
    g.col(k) = z.generators.col(keep[k]);
    if (z.num_constraints() > 0) a.col(k) = z.con_matrix.col(keep[k]);
  }
  return ConstrainedZonotope(z.center, std::move(g), std::move(a), z.con_vector);
}

// ---------------------------------------------------------------------------
// LP-backed queries
// ---------------------------------------------------------------------------

namespace detail {

inline Vec unit_lower(Eigen::Index n) { return Vec::Constant(n, -1.0); }
inline Vec unit_upper(Eigen::Index n) { return Vec::Constant(n, 1.0); }

/// min/max of objective' beta over the constrained factor set of z.
inline double optimize_factor(const ConstrainedZonotope& z, const Vec& objective,
                              lp::Sense sense) {
  lp::LinearProgram prog;
  prog.objective = objective;
  prog.eq_matrix = z.con_matrix;
  prog.eq_vector = z.con_vector;
  prog.lower = unit_lower(z.num_generators());
  prog.upper = unit_upper(z.num_generators());
  prog.sense = sense;
  const auto sol = lp::solve(prog);
  if (sol.status != lp::LpStatus::kOptimal) {
    throw std::runtime_error("set query on an empty or degenerate set");
  }
  return sol.value;
}

}  // namespace detail

/// True iff the set is empty, decided by LP feasibility of the factor set.
inline bool is_empty(const ConstrainedZonotope& z) {
  if (z.is_unconstrained()) return false;
  return !lp::feasible(z.con_matrix, z.con_vector, detail::unit_lower(z.num_generators()),
                       detail::unit_upper(z.num_generators()));
}

/// True iff x is a member of z, within the feasibility tolerance.
inline bool contains_point(const ConstrainedZonotope& z, const Vec& x) {
  if (x.size() != z.dim()) {
    throw std::invalid_argument("contains_point: dimension mismatch");
  }
  const auto xi = z.num_generators();
  Mat eq(z.dim() + z.num_constraints(), xi);
  eq << z.generators, z.con_matrix;
  Vec rhs(z.dim() + z.num_constraints());
  rhs << x - z.center, z.con_vector;
  return lp::feasible(eq, rhs, detail::unit_lower(xi), detail::unit_upper(xi));
}

inline bool contains_point(const Zonotope& z, const Vec& x) {
  return contains_point(ConstrainedZonotope(z), x);
}

/// Support value h(d) = max_{p in Z} d' p.
inline double support_value(const ConstrainedZonotope& z, const Vec& d) {
  if (d.size() != z.dim()) {
    throw std::invalid_argument("support_value: dimension mismatch");
  }
  if (z.is_unconstrained()) {
    return d.dot(z.center) + (z.generators.transpose() * d).cwiseAbs().sum();
  }
  return d.dot(z.center) +
         detail::optimize_factor(z, z.generators.transpose() * d, lp::Sense::kMaximize);
}

/// Tight per-coordinate bounds; the resulting box contains Z.
inline IntervalBox interval_hull(const ConstrainedZonotope& z) {
  if (z.is_unconstrained()) {
    const Vec r = z.generators.cwiseAbs().rowwise().sum();
    return IntervalBox{z.center - r, z.center + r};
  }
  if (is_empty(z)) {
    throw std::runtime_error("interval_hull of empty set");
  }
  const auto n = z.dim();
  Vec lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec row = z.generators.row(i).transpose();
    lo[i] = z.center[i] + detail::optimize_factor(z, row, lp::Sense::kMinimize);
    hi[i] = z.center[i] + detail::optimize_factor(z, row, lp::Sense::kMaximize);
  }
  return IntervalBox{std::move(lo), std::move(hi)};
}

inline IntervalBox interval_hull(const Zonotope& z) {
  return interval_hull(ConstrainedZonotope(z));
}

/// rad(Z) = sup_{p in Z} ||c_z - p||_inf, anchored at the stored center.
inline double radius(const ConstrainedZonotope& z) {
  if (z.is_unconstrained()) {
    const auto r = z.generators.cwiseAbs().rowwise().sum();
    return (r.size() > 0) ? r.maxCoeff() : 0.0;
  }
  if (is_empty(z)) {
    throw std::runtime_error("radius of empty set");
  }
  double rad = 0.0;
  for (Eigen::Index i = 0; i < z.dim(); ++i) {
    const Vec row = z.generators.row(i).transpose();
    const double hi = detail::optimize_factor(z, row, lp::Sense::kMaximize);
    const double lo = detail::optimize_factor(z, row, lp::Sense::kMinimize);
    rad = std::max({rad, std::abs(hi), std::abs(lo)});
  }
  return rad;
}

inline double radius(const Zonotope& z) { return radius(ConstrainedZonotope(z)); }

/// Axis-aligned box zonotope containing every member of the collection.
inline Zonotope overbound_collection(const SetCollection& s) {
  if (s.empty()) {
    throw std::runtime_error("overbound_collection of empty collection");
  }
  IntervalBox box = interval_hull(s.members.front());
  for (size_t i = 1; i < s.members.size(); ++i) {
    const IntervalBox b = interval_hull(s.members[i]);
    box.lower = box.lower.cwiseMin(b.lower);
    box.upper = box.upper.cwiseMax(b.upper);
  }
  return box.to_zonotope();
}

/// Girard-style order reduction: keeps the largest generators and overbounds
/// the rest by an axis-aligned box. Returns a superset with at most
/// max_generators columns.
inline Zonotope reduce_order(const Zonotope& z, Eigen::Index max_generators) {
  const auto n = z.dim();
  if (max_generators < n) {
    throw std::invalid_argument("reduce_order: max_generators must be at least the dimension");
  }
  const auto xi = z.num_generators();
  if (xi <= max_generators) return z;

  const Eigen::Index n_keep = max_generators - n;
  std::vector<Eigen::Index> order(static_cast<size_t>(xi));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return z.generators.col(a).norm() > z.generators.col(b).norm();
  });

  Mat g(n, n_keep + n);
  Vec box = Vec::Zero(n);
  for (Eigen::Index k = 0; k < xi; ++k) {
    const Eigen::Index j = order[static_cast<size_t>(k)];
    if (k < n_keep) {
      g.col(k) = z.generators.col(j);
    } else {
      box += z.generators.col(j).cwiseAbs();
    }
  }
  g.rightCols(n) = box.asDiagonal();
  return Zonotope(z.center, std::move(g));
}

}  // namespace s3e
