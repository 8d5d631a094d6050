// Redundant observability: every sensor subset of a given size must yield an
// observable pair (A, C_J). Rank alone is not enough in practice, so each
// combo also reports the smallest singular value of its observability matrix
// and is compared against a configurable threshold.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace s3e {

/// All size-k subsets of {0, ..., p-1} in lexicographic order.
inline std::vector<std::vector<int>> combinations(int p, int k) {
  if (k < 0 || k > p) throw std::invalid_argument("combinations: k out of range");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<size_t>(i)] == p - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return out;
}

inline Eigen::MatrixXd stack_outputs(const std::vector<Eigen::MatrixXd>& c,
                                     const std::vector<int>& combo) {
  Eigen::Index rows = 0;
  for (int i : combo) rows += c[static_cast<size_t>(i)].rows();
  Eigen::MatrixXd stacked(rows, c.front().cols());
  Eigen::Index at = 0;
  for (int i : combo) {
    stacked.middleRows(at, c[static_cast<size_t>(i)].rows()) = c[static_cast<size_t>(i)];
    at += c[static_cast<size_t>(i)].rows();
  }
  return stacked;
}

struct ComboObservability {
  std::vector<int> combo;  // 0-based sensor indices
  Eigen::Index rank = 0;
  double sigma_min = 0.0;
  bool pass = false;
};

inline constexpr double kDefaultObsTol = 1e-8;

/// Observability matrix [C; CA; ...; CA^(n-1)] rank and smallest singular
/// value for every size-c_j sensor combo. A combo passes when the rank is
/// full and sigma_min clears the threshold.
inline std::vector<ComboObservability> check_redundant_observability(
    const Eigen::MatrixXd& a, const std::vector<Eigen::MatrixXd>& c, int c_j,
    double obs_tol = kDefaultObsTol) {
  if (c_j < 1) throw std::invalid_argument("check_redundant_observability: c_j must be >= 1");
  const auto n = a.rows();
  std::vector<ComboObservability> reports;
  for (const auto& combo : combinations(static_cast<int>(c.size()), c_j)) {
    const Eigen::MatrixXd cj = stack_outputs(c, combo);
    Eigen::MatrixXd obs(cj.rows() * n, n);
    Eigen::MatrixXd block = cj;
    for (Eigen::Index k = 0; k < n; ++k) {
      obs.middleRows(k * cj.rows(), cj.rows()) = block;
      block = block * a;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(obs);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv[0] : 0.0;
    const double rank_tol =
        smax * static_cast<double>(std::max(obs.rows(), obs.cols())) *
        std::numeric_limits<double>::epsilon();
    ComboObservability rep;
    rep.combo = combo;
    rep.rank = (sv.array() > rank_tol).count();
    rep.sigma_min = sv.size() > 0 ? sv[sv.size() - 1] : 0.0;
    rep.pass = (rep.rank == n) && (rep.sigma_min >= obs_tol);
    reports.push_back(std::move(rep));
  }
  return reports;
}

/// Throws with the failing combos listed when any combo does not pass.
inline void require_redundant_observability(const Eigen::MatrixXd& a,
                                            const std::vector<Eigen::MatrixXd>& c, int c_j,
                                            double obs_tol = kDefaultObsTol) {
  const auto reports = check_redundant_observability(a, c, c_j, obs_tol);
  std::ostringstream bad;
  for (const auto& r : reports) {
    if (r.pass) continue;
    bad << " {";
    for (size_t i = 0; i < r.combo.size(); ++i) bad << (i ? "," : "") << r.combo[i] + 1;
    bad << "} sigma_min=" << r.sigma_min;
  }
  if (!bad.str().empty()) {
    throw std::runtime_error("redundant observability check failed for combos:" + bad.str());
  }
}

}  // namespace s3e
