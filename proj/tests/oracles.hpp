// Test-only oracles, independent of the implementation paths they check.
//
// - Brute-force vertex enumeration of {x : E x = d, l <= x <= u} decides
//   feasibility and linear optima for small instances.
// - Constructive samplers produce points guaranteed to lie inside a
//   constrained zonotope (a drawn feasible factor plus null-space moves).

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <random>
#include <vector>

#include "s3e/set_algebra.hpp"

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// All vertices of the polytope {x : eq x = rhs, lo <= x <= hi}. Assumes eq
/// has full row rank and the polytope is bounded (true for box bounds).
inline std::vector<Vec> enumerate_vertices(const Mat& eq, const Vec& rhs, const Vec& lo,
                                           const Vec& hi, double tol = 1e-9) {
  const Eigen::Index n = eq.cols();
  const Eigen::Index m = eq.rows();
  std::vector<Vec> vertices;

  if (m == 0) {
    // Box vertices.
    const auto count = Eigen::Index{1} << n;
    for (Eigen::Index mask = 0; mask < count; ++mask) {
      Vec v(n);
      for (Eigen::Index j = 0; j < n; ++j) v[j] = (mask >> j) & 1 ? hi[j] : lo[j];
      vertices.push_back(v);
    }
    return vertices;
  }

  if (m >= n) {
    // Square or overdetermined with full column rank: at most one solution.
    const Eigen::FullPivLU<Mat> lu(eq);
    if (lu.rank() == n) {
      const Vec x = lu.solve(rhs);
      bool ok = (eq * x - rhs).cwiseAbs().maxCoeff() <= tol;
      for (Eigen::Index j = 0; j < n && ok; ++j) ok = x[j] >= lo[j] - tol && x[j] <= hi[j] + tol;
      if (ok) vertices.push_back(x);
      return vertices;
    }
  }

  // Choose n - m variables fixed at a bound, solve for the rest.
  std::vector<Eigen::Index> fixed(static_cast<size_t>(n - m));
  std::vector<bool> pick(static_cast<size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n - m), true);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<Eigen::Index> fix, free;
    for (Eigen::Index j = 0; j < n; ++j) {
      (pick[static_cast<size_t>(j)] ? fix : free).push_back(j);
    }
    Mat basis(m, m);
    for (Eigen::Index c = 0; c < m; ++c) basis.col(c) = eq.col(free[static_cast<size_t>(c)]);
    const Eigen::FullPivLU<Mat> lu(basis);
    if (!lu.isInvertible()) continue;

    const auto patterns = Eigen::Index{1} << (n - m);
    for (Eigen::Index mask = 0; mask < patterns; ++mask) {
      Vec x(n);
      Vec shift = rhs;
      for (size_t fi = 0; fi < fix.size(); ++fi) {
        const Eigen::Index j = fix[fi];
        x[j] = (mask >> fi) & 1 ? hi[j] : lo[j];
        shift -= eq.col(j) * x[j];
      }
      const Vec xf = lu.solve(shift);
      bool ok = true;
      for (Eigen::Index c = 0; c < m; ++c) {
        const Eigen::Index j = free[static_cast<size_t>(c)];
        if (xf[c] < lo[j] - tol || xf[c] > hi[j] + tol) {
          ok = false;
          break;
        }
        x[j] = xf[c];
      }
      if (!ok) continue;
      bool dup = false;
      for (const auto& v : vertices) {
        if ((v - x).cwiseAbs().maxCoeff() < 1e-7) {
          dup = true;
          break;
        }
      }
      if (!dup) vertices.push_back(x);
    }
  } while (std::next_permutation(pick.begin(), pick.end()));
  return vertices;
}

inline bool feasible_by_enumeration(const Mat& eq, const Vec& rhs, const Vec& lo,
                                    const Vec& hi) {
  return !enumerate_vertices(eq, rhs, lo, hi).empty();
}

/// min/max c' x over the polytope by vertex enumeration.
inline std::optional<double> optimum_by_enumeration(const Mat& eq, const Vec& rhs,
                                                    const Vec& lo, const Vec& hi, const Vec& c,
                                                    bool maximize) {
  const auto verts = enumerate_vertices(eq, rhs, lo, hi);
  if (verts.empty()) return std::nullopt;
  double best = c.dot(verts.front());
  for (const auto& v : verts) {
    const double val = c.dot(v);
    best = maximize ? std::max(best, val) : std::min(best, val);
  }
  return best;
}

/// Closed-form support value of an unconstrained zonotope (independent of
/// the LP path).
inline double support_unconstrained(const s3e::Zonotope& z, const Vec& d) {
  return d.dot(z.center) + (z.generators.transpose() * d).cwiseAbs().sum();
}

/// Radius of a constrained zonotope by factor-vertex enumeration: the
/// max-norm distance from the center is maximized at a vertex of the factor
/// polytope.
inline std::optional<double> radius_by_enumeration(const s3e::ConstrainedZonotope& z) {
  const auto verts =
      enumerate_vertices(z.con_matrix, z.con_vector, Vec::Constant(z.num_generators(), -1.0),
                         Vec::Constant(z.num_generators(), 1.0));
  if (verts.empty()) return std::nullopt;
  double rad = 0.0;
  for (const auto& beta : verts) {
    rad = std::max(rad, (z.generators * beta).cwiseAbs().maxCoeff());
  }
  return rad;
}

// ---------------------------------------------------------------------------
// Constructive random instances
// ---------------------------------------------------------------------------

struct InstanceRng {
  std::mt19937_64 engine;
  explicit InstanceRng(std::uint64_t seed) : engine(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(engine() >> 11) * 0x1.0p-53);
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

/// Random constrained zonotope with a known interior factor beta*, so the
/// set is guaranteed nonempty and c + G beta* is a known member.
struct RandomCz {
  s3e::ConstrainedZonotope set;
  Vec beta_star;
};

inline RandomCz random_nonempty_cz(InstanceRng& rng, Eigen::Index dim, Eigen::Index num_gen,
                                   Eigen::Index num_con, double center_scale = 2.0) {
  Vec c(dim);
  for (Eigen::Index i = 0; i < dim; ++i) c[i] = rng.uniform(-center_scale, center_scale);
  Mat g(dim, num_gen);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < num_gen; ++j) g(i, j) = rng.uniform(-1.0, 1.0);
  }
  Vec beta(num_gen);
  for (Eigen::Index j = 0; j < num_gen; ++j) beta[j] = rng.uniform(-0.6, 0.6);
  Mat a(num_con, num_gen);
  for (Eigen::Index i = 0; i < num_con; ++i) {
    for (Eigen::Index j = 0; j < num_gen; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  }
  const Vec b = a * beta;
  return RandomCz{s3e::ConstrainedZonotope(std::move(c), std::move(g), std::move(a), b),
                  std::move(beta)};
}

/// A feasible factor obtained from beta* by a clipped null-space move; the
/// result satisfies the constraints exactly and stays inside the box.
inline Vec sample_feasible_factor(const RandomCz& inst, InstanceRng& rng) {
  const auto& z = inst.set;
  if (z.num_constraints() == 0) {
    Vec beta(z.num_generators());
    for (Eigen::Index j = 0; j < beta.size(); ++j) beta[j] = rng.uniform(-1.0, 1.0);
    return beta;
  }
  const Eigen::FullPivLU<Mat> lu(z.con_matrix);
  const Mat null_basis = lu.kernel();
  Vec dir = Vec::Zero(z.num_generators());
  for (Eigen::Index c = 0; c < null_basis.cols(); ++c) {
    dir += null_basis.col(c) * rng.uniform(-1.0, 1.0);
  }
  // Largest s keeping beta* + s*dir inside the box.
  double s_max = 1.0;
  for (Eigen::Index j = 0; j < dir.size(); ++j) {
    if (std::abs(dir[j]) < 1e-12) continue;
    const double room = dir[j] > 0 ? (1.0 - inst.beta_star[j]) : (inst.beta_star[j] + 1.0);
    s_max = std::min(s_max, room / std::abs(dir[j]));
  }
  return inst.beta_star + rng.uniform(0.0, s_max) * dir;
}

inline Vec sample_member(const RandomCz& inst, InstanceRng& rng) {
  return inst.set.center + inst.set.generators * sample_feasible_factor(inst, rng);
}

}  // namespace oracle
