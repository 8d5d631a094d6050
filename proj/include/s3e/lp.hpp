// Dense bounded-variable linear programming.
//
// A small deterministic two-phase primal simplex for problems of the form
//
//   min/max  c' x   subject to   E x = d,   lower <= x <= upper.
//
// This is the oracle behind all set queries (emptiness, membership, radius,
// support values). Problem sizes are tiny by LP standards, so the solver
// favors determinism and robustness over speed: Bland's anti-cycling rule,
// a fresh LU factorization of the basis every iteration, and no scaling.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace s3e::lp {

/// Absolute tolerance on equality residuals; a phase-one optimum above this
/// value certifies infeasibility.
inline constexpr double kFeasTol = 1e-9;

/// Pivots smaller than this are treated as zero.
inline constexpr double kPivotTol = 1e-12;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LinearProgram {
  Eigen::VectorXd objective;  // length n
  Eigen::MatrixXd eq_matrix;  // m x n
  Eigen::VectorXd eq_vector;  // m
  Eigen::VectorXd lower;      // n
  Eigen::VectorXd upper;      // n
  Sense sense = Sense::kMinimize;

  void validate() const {
    const auto n = objective.size();
    if (eq_matrix.cols() != n || lower.size() != n || upper.size() != n ||
        eq_vector.size() != eq_matrix.rows()) {
      throw std::invalid_argument("LinearProgram: inconsistent dimensions");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (lower[j] > upper[j]) {
        throw std::invalid_argument("LinearProgram: lower bound exceeds upper bound");
      }
    }
  }
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd point;  // empty unless optimal
  double value = 0.0;
  double residual = 0.0;  // max-norm equality residual (phase-one sum if infeasible)
};

namespace detail {

enum class VarState { kBasic, kAtLower, kAtUpper };

class Simplex {
 public:
  Simplex(const Eigen::MatrixXd& eq, const Eigen::VectorXd& rhs,
          const Eigen::VectorXd& lower, const Eigen::VectorXd& upper)
      : m_(eq.rows()), n_(eq.cols()) {
    // Columns 0..n-1 are structural, n..n+m-1 artificial.
    E_.resize(m_, n_ + m_);
    E_.leftCols(n_) = eq;
    E_.rightCols(m_).setZero();
    lo_.resize(n_ + m_);
    hi_.resize(n_ + m_);
    lo_.head(n_) = lower;
    hi_.head(n_) = upper;
    x_.setZero(n_ + m_);
    state_.assign(static_cast<size_t>(n_ + m_), VarState::kAtLower);

    for (Eigen::Index j = 0; j < n_; ++j) {
      x_[j] = std::isfinite(lower[j]) ? lower[j] : (std::isfinite(upper[j]) ? upper[j] : 0.0);
      state_[static_cast<size_t>(j)] =
          (x_[j] == upper[j]) ? VarState::kAtUpper : VarState::kAtLower;
    }
    const Eigen::VectorXd r = rhs - E_.leftCols(n_) * x_.head(n_);
    basis_.resize(static_cast<size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index a = n_ + i;
      E_(i, a) = (r[i] >= 0.0) ? 1.0 : -1.0;
      lo_[a] = 0.0;
      hi_[a] = kInf;
      x_[a] = std::abs(r[i]);
      state_[static_cast<size_t>(a)] = VarState::kBasic;
      basis_[static_cast<size_t>(i)] = a;
    }
  }

  /// Minimizes sum of artificials. Returns the attained infeasibility.
  double run_phase_one() {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n_ + m_);
    c.tail(m_).setOnes();
    iterate(c);
    double infeas = x_.tail(m_).sum();
    // Freeze artificials at zero so phase two cannot reuse them.
    for (Eigen::Index a = n_; a < n_ + m_; ++a) {
      hi_[a] = 0.0;
      if (std::abs(x_[a]) <= kFeasTol) x_[a] = 0.0;
    }
    return infeas;
  }

  /// Minimizes c' x over the structural variables. Returns false if unbounded.
  bool run_phase_two(const Eigen::VectorXd& c_struct) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n_ + m_);
    c.head(n_) = c_struct;
    return iterate(c);
  }

  Eigen::VectorXd structural_point() const {
    Eigen::VectorXd p = x_.head(n_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      p[j] = std::min(std::max(p[j], lo_[j]), hi_[j]);
    }
    return p;
  }

 private:
  // Runs Bland-rule simplex iterations for the given costs.
  // Returns false on unboundedness.
  bool iterate(const Eigen::VectorXd& c) {
    const Eigen::Index total = n_ + m_;
    const long max_iter = 2000 + 200 * static_cast<long>(total);
    for (long iter = 0; iter < max_iter; ++iter) {
      Eigen::VectorXd y(m_);
      Eigen::PartialPivLU<Eigen::MatrixXd> lu;
      if (m_ > 0) {
        Eigen::MatrixXd B(m_, m_);
        for (Eigen::Index i = 0; i < m_; ++i) B.col(i) = E_.col(basis_[static_cast<size_t>(i)]);
        lu.compute(B);
        Eigen::VectorXd cb(m_);
        for (Eigen::Index i = 0; i < m_; ++i) cb[i] = c[basis_[static_cast<size_t>(i)]];
        y = lu.transpose().solve(cb);
      }

      // Entering variable: Bland picks the smallest improving index.
      Eigen::Index entering = -1;
      double dir = 0.0;
      for (Eigen::Index j = 0; j < total; ++j) {
        const auto s = state_[static_cast<size_t>(j)];
        if (s == VarState::kBasic || hi_[j] - lo_[j] <= 0.0) continue;
        const double dj = c[j] - ((m_ > 0) ? y.dot(E_.col(j)) : 0.0);
        if (s == VarState::kAtLower && dj < -kReducedCostTol) {
          entering = j;
          dir = 1.0;
          break;
        }
        if (s == VarState::kAtUpper && dj > kReducedCostTol) {
          entering = j;
          dir = -1.0;
          break;
        }
      }
      if (entering < 0) return true;  // optimal for this phase

      Eigen::VectorXd alpha =
          (m_ > 0) ? Eigen::VectorXd(lu.solve(E_.col(entering))) : Eigen::VectorXd(0);

      // Ratio test: the entering variable moves by t >= 0 in direction dir,
      // basic variable i moves by -dir * alpha[i] * t.
      double t_best = hi_[entering] - lo_[entering];  // bound flip, possibly +inf
      Eigen::Index leave_pos = -1;
      for (Eigen::Index i = 0; i < m_; ++i) {
        const Eigen::Index bi = basis_[static_cast<size_t>(i)];
        const double delta = -dir * alpha[i];
        double ti = kInf;
        if (delta < -kPivotTol) {
          ti = std::isfinite(lo_[bi]) ? (x_[bi] - lo_[bi]) / (-delta) : kInf;
        } else if (delta > kPivotTol) {
          ti = std::isfinite(hi_[bi]) ? (hi_[bi] - x_[bi]) / delta : kInf;
        }
        if (ti < t_best - 0.0 ||
            (ti <= t_best && leave_pos >= 0 && bi < basis_[static_cast<size_t>(leave_pos)])) {
          t_best = ti;
          leave_pos = i;
        }
      }

      if (!std::isfinite(t_best)) {
        if (m_ > 0 && alpha.cwiseAbs().maxCoeff() <= kPivotTol && !std::isfinite(hi_[entering])) {
          throw std::runtime_error(
              "lp: numerical breakdown, no usable pivot in entering column " +
              std::to_string(entering));
        }
        return false;  // unbounded ray
      }

      // Move.
      x_[entering] += dir * t_best;
      for (Eigen::Index i = 0; i < m_; ++i) {
        x_[basis_[static_cast<size_t>(i)]] -= dir * alpha[i] * t_best;
      }
      if (leave_pos < 0) {
        // Bound flip only; basis unchanged.
        state_[static_cast<size_t>(entering)] =
            (dir > 0.0) ? VarState::kAtUpper : VarState::kAtLower;
        x_[entering] = (dir > 0.0) ? hi_[entering] : lo_[entering];
      } else {
        const Eigen::Index leaving = basis_[static_cast<size_t>(leave_pos)];
        const double delta = -dir * alpha[leave_pos];
        state_[static_cast<size_t>(leaving)] =
            (delta < 0.0) ? VarState::kAtLower : VarState::kAtUpper;
        x_[leaving] = (delta < 0.0) ? lo_[leaving] : hi_[leaving];
        basis_[static_cast<size_t>(leave_pos)] = entering;
        state_[static_cast<size_t>(entering)] = VarState::kBasic;
      }
    }
    throw std::runtime_error("lp: iteration limit exceeded (possible numerical cycling)");
  }

  static constexpr double kReducedCostTol = 1e-10;

  Eigen::Index m_, n_;
  Eigen::MatrixXd E_;
  Eigen::VectorXd lo_, hi_, x_;
  std::vector<VarState> state_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

inline LpSolution solve(const LinearProgram& lp) {
  lp.validate();
  const bool maximize = (lp.sense == Sense::kMaximize);
  detail::Simplex splx(lp.eq_matrix, lp.eq_vector, lp.lower, lp.upper);

  LpSolution sol;
  const double infeas = splx.run_phase_one();
  if (infeas > kFeasTol) {
    sol.status = LpStatus::kInfeasible;
    sol.residual = infeas;
    return sol;
  }

  const Eigen::VectorXd c = maximize ? Eigen::VectorXd(-lp.objective) : lp.objective;
  if (!splx.run_phase_two(c)) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }
  sol.status = LpStatus::kOptimal;
  sol.point = splx.structural_point();
  sol.value = lp.objective.dot(sol.point);
  sol.residual = (lp.eq_matrix.rows() > 0)
                     ? (lp.eq_matrix * sol.point - lp.eq_vector).cwiseAbs().maxCoeff()
                     : 0.0;
  return sol;
}

/// Phase-one feasibility of {x : eq x = rhs, lower <= x <= upper}.
inline bool feasible(const Eigen::MatrixXd& eq, const Eigen::VectorXd& rhs,
                     const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  LinearProgram lp;
  lp.objective = Eigen::VectorXd::Zero(eq.cols());
  lp.eq_matrix = eq;
  lp.eq_vector = rhs;
  lp.lower = lower;
  lp.upper = upper;
  return solve(lp).status == LpStatus::kOptimal;
}

}  // namespace s3e::lp
