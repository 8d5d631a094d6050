#include "s3e/lp.hpp"

#include <gtest/gtest.h>

#include <cstring>

#include "oracles.hpp"

using s3e::lp::LinearProgram;
using s3e::lp::LpStatus;
using s3e::lp::Sense;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace {

LinearProgram box_lp(const Vec& objective, const Mat& eq, const Vec& rhs, Sense sense) {
  LinearProgram lp;
  lp.objective = objective;
  lp.eq_matrix = eq;
  lp.eq_vector = rhs;
  lp.lower = Vec::Constant(objective.size(), -1.0);
  lp.upper = Vec::Constant(objective.size(), 1.0);
  lp.sense = sense;
  return lp;
}

}  // namespace

TEST(Lp, MinimizesSingleBoundedVariable) {
  const auto lp = box_lp(Vec::Ones(1), Mat(0, 1), Vec(0), Sense::kMinimize);
  const auto sol = s3e::lp::solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(sol.value, -1.0);
  EXPECT_DOUBLE_EQ(sol.point[0], -1.0);
}

TEST(Lp, DetectsInfeasibleEquality) {
  Mat eq(1, 1);
  eq << 1.0;
  Vec rhs(1);
  rhs << 2.0;
  const auto sol = s3e::lp::solve(box_lp(Vec::Zero(1), eq, rhs, Sense::kMinimize));
  EXPECT_EQ(sol.status, LpStatus::kInfeasible);
  EXPECT_GT(sol.residual, s3e::lp::kFeasTol);
}

TEST(Lp, MaximizesRowObjectiveOverUnitBox) {
  // max e1' G beta with G = [[1,1],[0,1]]: optimum 2 at beta = (1,1).
  Mat g(2, 2);
  g << 1, 1, 0, 1;
  const Vec c = g.row(0).transpose();
  const auto sol = s3e::lp::solve(box_lp(c, Mat(0, 2), Vec(0), Sense::kMaximize));
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.value, 2.0, 1e-12);
  EXPECT_NEAR(sol.point[0], 1.0, 1e-12);
  EXPECT_NEAR(sol.point[1], 1.0, 1e-12);
}

TEST(Lp, FeasibleOnEmptyConstraintSystem) {
  EXPECT_TRUE(s3e::lp::feasible(Mat(0, 3), Vec(0), Vec::Constant(3, -1.0), Vec::Ones(3)));
}

TEST(Lp, InfeasibleZeroRow) {
  Mat eq(1, 2);
  eq << 0, 0;
  Vec rhs(1);
  rhs << 1.0;
  EXPECT_FALSE(s3e::lp::feasible(eq, rhs, Vec::Constant(2, -1.0), Vec::Ones(2)));
}

TEST(Lp, FeasibleOnConstructedSystems) {
  oracle::InstanceRng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 6);
    const int m = rng.uniform_int(0, n);
    Mat eq(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) eq(i, j) = rng.uniform(-2.0, 2.0);
    }
    Vec beta(n);
    for (int j = 0; j < n; ++j) beta[j] = rng.uniform(-1.0, 1.0);
    EXPECT_TRUE(s3e::lp::feasible(eq, eq * beta, Vec::Constant(n, -1.0), Vec::Ones(n)))
        << "trial " << trial;
  }
}

TEST(Lp, MatchesVertexEnumerationOnRandomInstances) {
  oracle::InstanceRng rng(17);
  int feasible_count = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.uniform_int(1, 6);
    const int m = rng.uniform_int(0, std::min(n, 3));
    Mat eq(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) eq(i, j) = rng.uniform(-2.0, 2.0);
    }
    // Half the instances are built feasible, the rest may or may not be.
    Vec rhs(m);
    if (trial % 2 == 0) {
      Vec beta(n);
      for (int j = 0; j < n; ++j) beta[j] = rng.uniform(-1.0, 1.0);
      rhs = eq * beta;
    } else {
      for (int i = 0; i < m; ++i) rhs[i] = rng.uniform(-3.0, 3.0);
    }
    Vec c(n);
    for (int j = 0; j < n; ++j) c[j] = rng.uniform(-1.0, 1.0);

    const Vec lo = Vec::Constant(n, -1.0), hi = Vec::Ones(n);
    const auto expected = oracle::optimum_by_enumeration(eq, rhs, lo, hi, c, false);
    const auto sol = s3e::lp::solve(box_lp(c, eq, rhs, Sense::kMinimize));
    if (expected.has_value()) {
      ++feasible_count;
      ASSERT_EQ(sol.status, LpStatus::kOptimal) << "trial " << trial;
      const double scale = std::max(1.0, std::abs(*expected));
      EXPECT_NEAR(sol.value, *expected, 1e-7 * scale) << "trial " << trial;
      EXPECT_LE(sol.residual, s3e::lp::kFeasTol);
    } else {
      EXPECT_EQ(sol.status, LpStatus::kInfeasible) << "trial " << trial;
    }
  }
  EXPECT_GT(feasible_count, 100);
}

TEST(Lp, UnboundedWithInfiniteUpperBound) {
  LinearProgram lp;
  lp.objective = -Vec::Ones(1);
  lp.eq_matrix = Mat(0, 1);
  lp.eq_vector = Vec(0);
  lp.lower = Vec::Zero(1);
  lp.upper = Vec::Constant(1, s3e::lp::kInf);
  EXPECT_EQ(s3e::lp::solve(lp).status, LpStatus::kUnbounded);
}

TEST(Lp, DeterministicAcrossRepeatedSolves) {
  oracle::InstanceRng rng(5);
  Mat eq(2, 5);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 5; ++j) eq(i, j) = rng.uniform(-1.0, 1.0);
  }
  Vec beta(5);
  for (int j = 0; j < 5; ++j) beta[j] = rng.uniform(-0.9, 0.9);
  Vec c(5);
  for (int j = 0; j < 5; ++j) c[j] = rng.uniform(-1.0, 1.0);
  const auto lp = box_lp(c, eq, eq * beta, Sense::kMinimize);

  const auto first = s3e::lp::solve(lp);
  for (int rep = 0; rep < 5; ++rep) {
    const auto again = s3e::lp::solve(lp);
    EXPECT_EQ(again.status, first.status);
    EXPECT_EQ(std::memcmp(again.point.data(), first.point.data(),
                          sizeof(double) * static_cast<size_t>(first.point.size())),
              0);
    EXPECT_EQ(again.value, first.value);
  }
}

TEST(Lp, RejectsInconsistentDimensions) {
  LinearProgram lp;
  lp.objective = Vec::Zero(2);
  lp.eq_matrix = Mat(1, 3);
  lp.eq_vector = Vec(1);
  lp.lower = Vec::Zero(2);
  lp.upper = Vec::Ones(2);
  EXPECT_THROW(s3e::lp::solve(lp), std::invalid_argument);
}
