#include <gtest/gtest.h>

#include <cmath>

#include "rlm/bounds.hpp"
#include "rlm/error.hpp"
#include "rlm/generators.hpp"

using namespace rlm;

TEST(Constants, CThetaU) {
  EXPECT_DOUBLE_EQ(c_const(1, 0.5), 1.5);
  EXPECT_DOUBLE_EQ(c_const(2, 1), 3);
  EXPECT_DOUBLE_EQ(c_const(2, 0.5), 2);
  EXPECT_THROW(c_const(0, 0.5), InvalidArgument);
  EXPECT_THROW(c_const(1, 1.5), InvalidArgument);
}

TEST(Constants, CTheta) {
  EXPECT_EQ(C_const(1), 1.0);
  EXPECT_NEAR(C_const(2), 2 * std::log(2.0), 1e-15);
  EXPECT_NEAR(C_const(0.5), std::log(2.0), 1e-15);
  EXPECT_NEAR(C_const(1 + 1e-6), 1.0, 1e-5);
  EXPECT_NEAR(C_const(1 - 1e-6), 1.0, 1e-5);
  // theta log theta / (theta - 1) = 1 + h/2 + O(h^2) near 1.
  EXPECT_NEAR(C_const(1 + 1e-6) - 1.0, 0.5e-6, 1e-9);
}

TEST(Constants, ThresholdTime) {
  EXPECT_NEAR(threshold_time(2, 1, 8), 2 * std::log(2.0), 1e-15);
  EXPECT_NEAR(threshold_time(2, 0.5, 6), 2 * std::log(2.0), 1e-15);
  EXPECT_THROW(threshold_time(2, 1, 6), InvalidArgument);
  EXPECT_THROW(threshold_time(2.5, 1, 20), InvalidArgument);
  EXPECT_THROW(threshold_time(1, 1, 20), InvalidArgument);
}

TEST(DriftUpperBound, Examples) {
  auto in = BoundInputs::for_graph(100, 300, 1, 0.5, 0.1, 0.1);
  EXPECT_NEAR(drift_upper_bound(in, 0), -135, 1e-9);
  EXPECT_NEAR(drift_upper_bound(in, 1), 300, 1e-9);
  EXPECT_NEAR(drift_upper_bound(in, 0.25), 0.75 * -135 + 0.25 * 300, 1e-9);
  EXPECT_THROW(drift_upper_bound(in, 1.5), InvalidArgument);
}

TEST(AveragedLowerBound, Examples) {
  auto in = BoundInputs::for_graph(10, 30, 1, 0.5, 0.1, 0.1);
  in.s = 10;
  EXPECT_NEAR(averaged_lower_bound(in), 1.25 / 4.35, 1e-12);
  in.s = 1e12;
  EXPECT_NEAR(averaged_lower_bound(in), (3 - 1.65) / 4.35, 1e-9);
  in.m_minus = 1.65 + 0.1;
  in.s = 10;
  EXPECT_NEAR(averaged_lower_bound(in), 0.0, 1e-12);
  in.s = 0;
  EXPECT_THROW(averaged_lower_bound(in), InvalidArgument);
  auto sparse = BoundInputs::for_graph(10, 5, 1, 0.5, 0.1, 0.1);
  sparse.s = 4;
  EXPECT_THROW(averaged_lower_bound(sparse), InvalidArgument);
}

TEST(AveragedLowerBound, NegativeValuesReturnedAsIs) {
  auto c6 = BoundInputs::for_graph(6, 6, 1, 0.5, 0.1, 0.5);
  c6.s = 4;
  EXPECT_LT(averaged_lower_bound(c6), 0.0);
}

TEST(AveragedLowerBound, Monotonicity) {
  for (double m = 2.0; m < 6.0; m += 0.5) {
    for (double s = 1; s < 20; s *= 2) {
      for (double eps = 0.0; eps < 0.5; eps += 0.1) {
        auto in = BoundInputs::for_graph(10, 50, 1.5, 0.3, eps, 0.1);
        in.m_minus = m;
        in.m_plus = 6.0;
        in.s = s;
        const double base = averaged_lower_bound(in);
        auto more_m = in;
        more_m.m_minus = m + 0.25;
        EXPECT_GT(averaged_lower_bound(more_m), base);
        auto more_s = in;
        more_s.s = 2 * s;
        EXPECT_GT(averaged_lower_bound(more_s), base);
        auto more_eps = in;
        more_eps.eps = eps + 0.05;
        EXPECT_LT(averaged_lower_bound(more_eps), base);
      }
    }
  }
}

TEST(PointwiseLowerBound, Examples) {
  auto in = BoundInputs::for_graph(10, 40, 2, 1, 0.0, 0.1);
  in.t = 4 * std::log(2.0);
  EXPECT_NEAR(pointwise_lower_bound(in), 0.5 / 9, 1e-12);
  in.t = 1e12;
  EXPECT_NEAR(pointwise_lower_bound(in), 1.0 / 9, 1e-9);
  in.t = pointwise_threshold(in);
  EXPECT_NEAR(in.t.value(), 2 * std::log(2.0), 1e-15);
  EXPECT_EQ(pointwise_lower_bound(in), 0.0);
  in.t = 1.0;
  EXPECT_THROW(pointwise_lower_bound(in), InvalidArgument);
  auto low = BoundInputs::for_graph(10, 25, 2, 1, 0.0, 0.1);
  low.t = 100;
  EXPECT_THROW(pointwise_lower_bound(low), InvalidArgument);
}

TEST(PointwiseLowerBound, IncreasingInTime) {
  auto in = BoundInputs::for_graph(64, 256, 2, 1, 0.1, 0.1);
  double previous = -1;
  for (double t = pointwise_threshold(in); t < 50; t *= 1.3) {
    in.t = t;
    const double v = pointwise_lower_bound(in);
    EXPECT_GE(v, previous);
    previous = v;
  }
}

TEST(CriterionReport, Examples) {
  const Graph g8 = gen_random_regular(40, 8, 2);
  SparsityVerdict v;
  v.holds = true;
  v.eps = 0.1;
  v.size_cap = 4;
  const auto r = criterion_report(g8, 2, 1, 0.1, 0.1, v);
  EXPECT_DOUBLE_EQ(r.alpha, 4);
  EXPECT_DOUBLE_EQ(r.c, 3);
  EXPECT_TRUE(r.alpha_exceeds_c);
  EXPECT_TRUE(r.regular_degree_exceeds_2c);
  ASSERT_TRUE(r.threshold_time.has_value());
  EXPECT_NEAR(*r.threshold_time, 2 * std::log(2.0), 1e-15);
  EXPECT_TRUE(r.sparsity_certified);
  EXPECT_TRUE(r.applicable);

  const auto tree = criterion_report(Graph::star(9), 0.5, 0.5, 0.1, 0.1, v);
  EXPECT_FALSE(tree.alpha_exceeds_c);
  EXPECT_FALSE(tree.applicable);
  EXPECT_FALSE(tree.threshold_time.has_value());

  const auto c6 = criterion_report(Graph::cycle(6), 1, 0.5, 0.1, 0.5, v);
  EXPECT_DOUBLE_EQ(c6.alpha, 1);
  EXPECT_DOUBLE_EQ(c6.c, 1.5);
  EXPECT_FALSE(c6.applicable);
}
