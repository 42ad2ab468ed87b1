#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rlm/error.hpp"
#include "rlm/measure.hpp"
#include "rlm/oracle.hpp"

using namespace rlm;

namespace {

const Graph kEdge(2, {{0, 1}});

SamplingOptions opts(std::size_t samples, std::uint64_t seed) {
  SamplingOptions o;
  o.samples = samples;
  o.seed = seed;
  return o;
}

// P_theta(A_0.5) on one edge: A fails only with no marks, of weight theta^2 e^{-t} / Z.
double single_edge_prob(double theta, double t, double u) {
  return 1.0 - theta * theta * std::exp(-t) / single_edge_Z(theta, t, u);
}

}  // namespace

TEST(EstimateZ, ExactCases) {
  const Graph g = Graph::complete(5);
  const Estimate at0 = estimate_Z(g, 2.0, 0.0, 0.5, opts(100, 1));
  EXPECT_EQ(at0.mean, 32.0);
  EXPECT_EQ(at0.std_error, 0.0);
  const Estimate flat = estimate_Z(g, 1.0, 2.0, 0.5, opts(100, 1));
  EXPECT_EQ(flat.mean, 1.0);
  EXPECT_EQ(flat.std_error, 0.0);
  EXPECT_THROW(estimate_Z(g, 0.0, 1.0, 0.5, opts(100, 1)), InvalidArgument);
  EXPECT_THROW(estimate_Z(g, 2.0, 1.0, 0.5, opts(1, 1)), InvalidArgument);
}

TEST(EstimateZ, SingleEdgeClosedForm) {
  const Estimate z = estimate_Z(kEdge, 2.0, 1.0, 1.0, opts(40000, 3));
  EXPECT_NEAR(z.mean, 3.0 + std::exp(-2.0), 3 * z.std_error);
  EXPECT_GT(z.std_error, 0.0);
}

TEST(EstimateZ, TriangleMatchesTrace) {
  const Graph tri = Graph::cycle(3);
  const Estimate z = estimate_Z(tri, 2.0, 1.0, 0.5, opts(40000, 4));
  EXPECT_NEAR(z.mean, exact_Z_trace(tri, 2, 1.0, 0.5), 3 * z.std_error);
}

TEST(EstimateZ, ThreadCountDoesNotChangeOutput) {
  const Graph g = Graph::complete(4);
  SamplingOptions a = opts(3000, 5);
  SamplingOptions b = a;
  b.threads = 3;
  const Estimate x = estimate_Z(g, 2.0, 1.0, 0.5, a);
  const Estimate y = estimate_Z(g, 2.0, 1.0, 0.5, b);
  EXPECT_EQ(x.mean, y.mean);
  EXPECT_EQ(x.std_error, y.std_error);
  const Estimate p = estimate_prob_macroscopic(g, 2.0, 1.0, 0.5, 0.5, b, EstimatorKind::Mcmc);
  const Estimate q = estimate_prob_macroscopic(g, 2.0, 1.0, 0.5, 0.5, a, EstimatorKind::Mcmc);
  EXPECT_EQ(p.mean, q.mean);
}

TEST(EstimateWeighted, TrivialFunctionals) {
  const Graph g = Graph::complete(4);
  const Functional one = [](const Sample&) { return 1.0; };
  const Estimate e = estimate_weighted(g, 3.0, 1.5, 0.5, one, opts(2000, 1));
  EXPECT_EQ(e.mean, 1.0);
  EXPECT_NEAR(e.std_error, 0.0, 1e-15);
  ASSERT_TRUE(e.effective_sample_size.has_value());
  EXPECT_GT(*e.effective_sample_size, 1.0);

  // theta = 1 is the plain sample mean of lambda.
  const Functional lambda = [](const Sample& s) { return static_cast<double>(s.loops.num_loops()); };
  const Estimate w = estimate_weighted(g, 1.0, 1.5, 0.5, lambda, opts(2000, 1));
  EXPECT_EQ(w.estimator, EstimatorKind::Direct);
  RunningMoments m;
  for (std::size_t r = 0; r < 8; ++r) {
    Rng rng = make_rng(1, r);
    for (std::size_t i = 0; i < 250; ++i)
      m.add(static_cast<double>(trace_loops(g, sample_marks(g, 1.5, 0.5, rng)).num_loops()));
  }
  EXPECT_NEAR(w.mean, m.mean(), 1e-12);
  EXPECT_NEAR(w.std_error, m.std_error(), 1e-12);
}

TEST(EstimateWeighted, LowEssIsFlagged) {
  const Graph g = Graph::complete(8);
  SamplingOptions o = opts(50, 2);
  o.ess_floor = 1000.0;
  const Estimate e = estimate_weighted(g, 50.0, 2.0, 0.5, macroscopic_indicator(0.5), o);
  EXPECT_TRUE(e.low_ess);
}

TEST(ProbMacroscopic, SingleEdgeImportanceAndMcmc) {
  const double exact = single_edge_prob(2.0, 1.0, 1.0);
  EXPECT_NEAR(exact, 0.5306, 1e-4);
  const Estimate is = estimate_prob_macroscopic(kEdge, 2.0, 1.0, 1.0, 0.5, opts(40000, 7),
                                                EstimatorKind::Importance);
  EXPECT_NEAR(is.mean, exact, 3 * is.std_error);
  const Estimate mc = estimate_prob_macroscopic(kEdge, 2.0, 1.0, 1.0, 0.5, opts(40000, 7),
                                                EstimatorKind::Mcmc);
  EXPECT_NEAR(mc.mean, exact, 3 * mc.std_error);
  EXPECT_LE(std::abs(is.mean - mc.mean), 3 * combined_std_error(is, mc));
  ASSERT_TRUE(mc.acceptance_rate.has_value());
  EXPECT_GT(*mc.acceptance_rate, 0.0);
}

TEST(ProbMacroscopic, TriangleEstimatorsAgree) {
  const Graph tri = Graph::cycle(3);
  const Estimate is = estimate_prob_macroscopic(tri, 2.0, 1.0, 0.5, 0.5, opts(30000, 8),
                                                EstimatorKind::Importance);
  const Estimate mc = estimate_prob_macroscopic(tri, 2.0, 1.0, 0.5, 0.5, opts(30000, 8),
                                                EstimatorKind::Mcmc);
  EXPECT_LE(std::abs(is.mean - mc.mean), 3 * combined_std_error(is, mc));
}

TEST(ProbMacroscopic, TrivialCases) {
  const Graph g = Graph::cycle(6);
  EXPECT_EQ(estimate_prob_macroscopic(g, 2.0, 0.0, 0.5, 0.2, opts(100, 1), EstimatorKind::Importance).mean,
            0.0);
  EXPECT_EQ(estimate_prob_macroscopic(g, 2.0, 3.0, 0.5, 1.0, opts(100, 1), EstimatorKind::Mcmc).mean,
            0.0);
  EXPECT_THROW(estimate_prob_macroscopic(g, 2.0, 1.0, 0.5, 0.5, opts(100, 1), EstimatorKind::Direct),
               InvalidArgument);
}

TEST(Mcmc, StationaryPoissonAtThetaOne) {
  ChainState chain = make_chain(kEdge, MarkConfig(1));
  Rng rng = make_rng(21);
  for (int i = 0; i < 1000; ++i) mcmc_step(kEdge, chain, 1.0, 2.0, 0.5, rng);
  std::vector<double> counts(8, 0.0);
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    for (int s = 0; s < 30; ++s) mcmc_step(kEdge, chain, 1.0, 2.0, 0.5, rng);
    counts[std::min<std::size_t>(chain.marks.size(), 7)] += 1.0;
    if (i % 4096 == 0) ASSERT_EQ(trace_loops(kEdge, chain.marks).num_loops(), chain.lambda());
  }
  std::vector<double> probs(8);
  double tail = 1.0;
  for (int k = 0; k < 7; ++k) {
    probs[static_cast<std::size_t>(k)] = std::exp(-2.0) * std::pow(2.0, k) / std::tgamma(k + 1.0);
    tail -= probs[static_cast<std::size_t>(k)];
  }
  probs[7] = tail;
  EXPECT_GT(ref::chi_square_p(counts, probs), 0.01);
}

TEST(Mcmc, DeleteOnEmptyIsRejected) {
  ChainState chain = make_chain(Graph::cycle(3), MarkConfig(3));
  Rng rng = make_rng(2);
  for (int i = 0; i < 200; ++i) mcmc_step(Graph::cycle(3), chain, 2.0, 0.0, 0.5, rng);
  EXPECT_TRUE(chain.marks.empty());
  EXPECT_EQ(chain.accepted(), 0u);
  EXPECT_EQ(chain.lambda(), 3u);
  EXPECT_GT(chain.remove.proposed, 0u);
}

TEST(Drift, ZeroTimeAndSingleEdge) {
  const Graph g = Graph::complete(4);
  const Estimate d0 = estimate_drift(g, 2.0, 0.0, 0.5, opts(100, 1));
  EXPECT_EQ(d0.mean, -6.0);
  EXPECT_EQ(d0.std_error, 0.0);
  for (double u : {0.0, 0.5, 1.0}) {
    const Estimate d = estimate_drift(kEdge, 2.0, 1.0, u, opts(40000, 9));
    EXPECT_NEAR(d.mean, 2.0 * single_edge_dlogZ(2.0, 1.0, u), 3 * d.std_error) << u;
  }
}

TEST(FiniteDifference, SingleEdgeLogZ) {
  const Estimate fd = finite_difference_logZ(kEdge, 2.0, 1.0, 1.0, 0.05, opts(100000, 3));
  const double exact = -2 * std::exp(-2.0) / (3 + std::exp(-2.0));
  EXPECT_NEAR(exact, -0.0863, 1e-4);
  EXPECT_NEAR(fd.mean, exact, 3 * fd.std_error + 0.0025);
}

TEST(FiniteDifference, Arguments) {
  EXPECT_THROW(finite_difference_logZ(kEdge, 1.0, 1.0, 1.0, 0.05, opts(10, 1)), InvalidArgument);
  EXPECT_THROW(finite_difference_logZ(kEdge, 2.0, 0.0, 1.0, 0.05, opts(10, 1)), InvalidArgument);
  EXPECT_THROW(finite_difference_logZ(kEdge, 2.0, 1.0, 1.0, 0.0, opts(10, 1)), InvalidArgument);
}

TEST(FiniteDifference, DriftIdentityAtThetaOne) {
  const Graph c6 = Graph::cycle(6);
  const Estimate fd = finite_difference_drift(c6, 1.0, 0.5, 0.5, 0.05, opts(40000, 4));
  const Estimate d = estimate_drift(c6, 1.0, 0.5, 0.5, opts(40000, 5));
  EXPECT_LE(std::abs(fd.mean - d.mean), 3 * combined_std_error(fd, d) + 0.01);
}

TEST(TimeAverage, Cases) {
  const Graph c6 = Graph::cycle(6);
  const Estimate full = time_average_prob(c6, 1.0, 0.5, 1.0, 0.0, 4.0, 5, opts(200, 1),
                                          EstimatorKind::Direct);
  EXPECT_EQ(full.mean, 0.0);
  const Estimate tiny = time_average_prob(c6, 1.0, 0.5, 0.5, 0.0, 1e-4, 3, opts(2000, 1),
                                          EstimatorKind::Direct);
  EXPECT_LT(tiny.mean, 0.01);
  EXPECT_THROW(time_average_prob(c6, 1.0, 0.5, 0.5, 0.0, 0.0, 3, opts(200, 1), EstimatorKind::Direct),
               InvalidArgument);
  EXPECT_THROW(time_average_prob(c6, 1.0, 0.5, 0.5, 0.0, 1.0, 1, opts(200, 1), EstimatorKind::Direct),
               InvalidArgument);
}

TEST(EstimatorKind, ParseRoundTrip) {
  for (auto k : {EstimatorKind::Direct, EstimatorKind::Importance, EstimatorKind::Mcmc})
    EXPECT_EQ(parse_estimator(to_string(k)), k);
  EXPECT_THROW(parse_estimator("gibbs"), InvalidArgument);
}

TEST(RunningMoments, MergeMatchesSequential) {
  RunningMoments all;
  RunningMoments a;
  RunningMoments b;
  for (int i = 0; i < 100; ++i) {
    const double x = std::sin(i * 0.7) * 3 + i * 0.01;
    all.add(x);
    (i < 37 ? a : b).add(x);
  }
  a.merge(b);
  EXPECT_NEAR(a.mean(), all.mean(), 1e-12);
  EXPECT_NEAR(a.variance(), all.variance(), 1e-12);
}
