// Secure point-based multi-observer.
//
// One Luenberger observer per sensor combo, fused by a coordinate-wise
// median over the combos free of identified-attacked sensors. Gains come
// from a Riccati iteration on the scaled pair (A / rho, C_J), which places
// the closed-loop spectral radius of (A - L C_J) strictly below rho.
//
// The error-bound schedule Delta_k = c0 * r0 * rho^k + alpha * max(w_bar,
// v_bar) is calibrated offline per scenario and frozen in the config.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "s3e/observability.hpp"
#include "s3e/set_algebra.hpp"

namespace s3e {

struct DeltaSchedule {
  double c0 = 0.0;     // transient coefficient (>= 0)
  double rho = 0.5;    // transient decay rate in [0, 1)
  double alpha = 0.0;  // noise gain (>= 0)
  double w_bar = 0.0;  // process-noise bound
  double v_bar = 0.0;  // measurement-noise bound
  double r0 = 0.0;     // bound on the initial estimation error

  void validate() const {
    if (c0 < 0 || alpha < 0 || w_bar < 0 || v_bar < 0 || r0 < 0 || rho < 0 || rho >= 1.0) {
      throw std::invalid_argument("DeltaSchedule: parameters out of range");
    }
  }

  double delta(int k) const {
    return c0 * r0 * std::pow(rho, k) + alpha * std::max(w_bar, v_bar);
  }
};

inline double spectral_radius(const Mat& m) {
  return Eigen::EigenSolver<Mat>(m, /*computeEigenvectors=*/false)
      .eigenvalues()
      .cwiseAbs()
      .maxCoeff();
}

/// Observer gain placing the spectral radius of (A - L C) below rho_target,
/// via the stationary Riccati solution of the scaled pair (A / rho_target, C).
inline Mat observer_gain(const Mat& a, const Mat& c, double rho_target) {
  if (rho_target <= 0.0 || rho_target >= 1.0) {
    throw std::invalid_argument("observer_gain: rho_target must lie in (0, 1)");
  }
  const auto n = a.rows();
  const Mat as = a / rho_target;
  const Mat q = Mat::Identity(n, n);
  const Mat r = Mat::Identity(c.rows(), c.rows());

  Mat p = Mat::Identity(n, n);
  bool converged = false;
  for (int it = 0; it < 100000; ++it) {
    const Mat s = c * p * c.transpose() + r;
    const Mat k = as * p * c.transpose() * s.inverse();
    const Mat pn = as * p * as.transpose() - k * c * p * as.transpose() + q;
    const double diff = (pn - p).cwiseAbs().maxCoeff();
    p = pn;
    if (diff < 1e-13 * (1.0 + p.cwiseAbs().maxCoeff())) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw std::runtime_error("observer_gain: Riccati iteration did not converge");
  }
  const Mat s = c * p * c.transpose() + r;
  const Mat gain = rho_target * (as * p * c.transpose() * s.inverse());
  if (spectral_radius(a - gain * c) >= 1.0 - 1e-6) {
    throw std::runtime_error("observer_gain: gain does not stabilize the pair");
  }
  return gain;
}

/// One Luenberger prediction step for a single combo observer.
inline Vec observer_step(const Mat& a, const Mat& b, const Mat& c_combo, const Mat& gain,
                         const Vec& x_hat, const Vec& u, const Vec& y_combo) {
  return a * x_hat + b * u + gain * (y_combo - c_combo * x_hat);
}

/// Coordinate-wise median with the lower median on even counts.
inline Vec median_fuse(const std::vector<Vec>& estimates) {
  if (estimates.empty()) throw std::invalid_argument("median_fuse: no estimates");
  const auto n = estimates.front().size();
  Vec fused(n);
  std::vector<double> vals(estimates.size());
  for (Eigen::Index d = 0; d < n; ++d) {
    for (size_t i = 0; i < estimates.size(); ++i) vals[i] = estimates[i][d];
    std::sort(vals.begin(), vals.end());
    fused[d] = vals[(vals.size() - 1) / 2];
  }
  return fused;
}

class MultiObserver {
 public:
  /// Builds one observer per size-subset_size sensor combo. Requires 2q < p.
  MultiObserver(const Mat& a, const Mat& b, const std::vector<Mat>& c, int num_attacked,
                int subset_size, double pole_radius, const Vec& x0)
      : a_(a), b_(b) {
    const int p = static_cast<int>(c.size());
    if (2 * num_attacked >= p) {
      throw std::invalid_argument("MultiObserver: requires 2q < p");
    }
    combos_ = combinations(p, subset_size);
    for (const auto& combo : combos_) {
      const Mat cj = stack_outputs(c, combo);
      c_combo_.push_back(cj);
      gains_.push_back(observer_gain(a, cj, pole_radius));
      states_.push_back(x0);
    }
  }

  const std::vector<std::vector<int>>& combos() const { return combos_; }
  const std::vector<Vec>& states() const { return states_; }
  const Mat& gain(size_t h) const { return gains_[h]; }

  /// Advances every combo observer with the stacked measurements. Combos
  /// containing a sensor in `identified_attacked` skip the innovation and
  /// propagate open loop, so identified attacks never enter the bank.
  void step(const Vec& u, const std::vector<Vec>& measurements,
            const std::vector<int>& identified_attacked) {
    std::vector<bool> bad(measurements.size(), false);
    for (int i : identified_attacked) bad[static_cast<size_t>(i)] = true;
    for (size_t h = 0; h < combos_.size(); ++h) {
      bool rejected = false;
      for (int j : combos_[h]) {
        if (bad[static_cast<size_t>(j)]) {
          rejected = true;
          break;
        }
      }
      if (rejected) {
        states_[h] = a_ * states_[h] + b_ * u;
        continue;
      }
      Eigen::Index rows = 0;
      for (int j : combos_[h]) rows += measurements[static_cast<size_t>(j)].size();
      Vec stacked(rows);
      Eigen::Index at = 0;
      for (int j : combos_[h]) {
        stacked.segment(at, measurements[static_cast<size_t>(j)].size()) =
            measurements[static_cast<size_t>(j)];
        at += measurements[static_cast<size_t>(j)].size();
      }
      states_[h] = observer_step(a_, b_, c_combo_[h], gains_[h], states_[h], u, stacked);
    }
  }

  /// Median over the estimates of combos free of identified-attacked
  /// sensors. Throws when no combo is eligible.
  Vec fuse(const std::vector<int>& identified_attacked) const {
    std::vector<Vec> eligible;
    for (size_t h = 0; h < combos_.size(); ++h) {
      bool ok = true;
      for (int j : combos_[h]) {
        if (std::find(identified_attacked.begin(), identified_attacked.end(), j) !=
            identified_attacked.end()) {
          ok = false;
          break;
        }
      }
      if (ok) eligible.push_back(states_[h]);
    }
    if (eligible.empty()) {
      throw std::runtime_error("fuse: no combo free of identified-attacked sensors");
    }
    return median_fuse(eligible);
  }

 private:
  Mat a_, b_;
  std::vector<std::vector<int>> combos_;
  std::vector<Mat> c_combo_;
  std::vector<Mat> gains_;
  std::vector<Vec> states_;
};

/// Fits a schedule enveloping the given per-run error sequences: rho is
/// supplied, the noise floor is read off the sequence tails, and both the
/// floor and the transient coefficient are inflated by the safety factor.
inline DeltaSchedule fit_delta_schedule(const std::vector<std::vector<double>>& error_runs,
                                        double rho, double r0, double w_bar, double v_bar,
                                        double safety = 2.0) {
  if (r0 <= 0.0) throw std::invalid_argument("fit_delta_schedule: r0 must be positive");
  double floor = 0.0;
  for (const auto& run : error_runs) {
    const size_t tail_start = run.size() / 2;
    for (size_t k = tail_start; k < run.size(); ++k) floor = std::max(floor, run[k]);
  }
  double c0 = 0.0;
  for (const auto& run : error_runs) {
    for (size_t k = 0; k < run.size(); ++k) {
      const double excess = run[k] - floor;
      if (excess > 0.0) {
        c0 = std::max(c0, excess / (r0 * std::pow(rho, static_cast<double>(k))));
      }
    }
  }
  DeltaSchedule sched;
  sched.c0 = safety * c0;
  sched.rho = rho;
  sched.alpha = (std::max(w_bar, v_bar) > 0.0) ? safety * floor / std::max(w_bar, v_bar) : 0.0;
  sched.w_bar = w_bar;
  sched.v_bar = v_bar;
  sched.r0 = r0;
  return sched;
}

}  // namespace s3e
