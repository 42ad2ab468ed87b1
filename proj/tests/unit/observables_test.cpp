#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rlm/error.hpp"
#include "rlm/generators.hpp"
#include "rlm/observables.hpp"

using namespace rlm;

namespace {

const Graph kEdge(2, {{0, 1}});

MarkConfig one(MarkKind kind) { return MarkConfig(1, {{0, 0.4, kind}}); }

std::vector<Graph> corpus() {
  return {kEdge, Graph::cycle(3), Graph::cycle(6), Graph::complete(4),
          gen_erdos_renyi(12, 4.0, 5)};
}

}  // namespace

TEST(Classify, SingleEdgeExamples) {
  const MarkConfig none(1);
  EXPECT_EQ(classify(kEdge, none, trace_loops(kEdge, none), 0, 0.3),
            EdgeTimeClass::DifferentLoops);
  const MarkConfig c = one(MarkKind::Cross);
  EXPECT_EQ(classify(kEdge, c, trace_loops(kEdge, c), 0, 0.7),
            EdgeTimeClass::SameLoopSameOrientation);
  const MarkConfig b = one(MarkKind::Bar);
  EXPECT_EQ(classify(kEdge, b, trace_loops(kEdge, b), 0, 0.1),
            EdgeTimeClass::SameLoopOppositeOrientation);
  EXPECT_THROW(classify(kEdge, b, trace_loops(kEdge, b), 0, 0.4), InvalidArgument);
}

TEST(Classify, AgreesWithPassTracer) {
  Rng rng = make_rng(17);
  for (const Graph& g : corpus()) {
    for (double u : {0.0, 0.5, 1.0}) {
      for (int rep = 0; rep < 60; ++rep) {
        const MarkConfig m = sample_marks(g, 1.5, u, rng);
        const LoopSet loops = trace_loops(g, m);
        const ref::PassTracer oracle(g, m);
        const double s = sample_regular_time(m, rng);
        for (EdgeId e = 0; e < g.num_edges(); ++e)
          ASSERT_EQ(classify(g, m, loops, e, s), oracle.classify(e, s));
      }
    }
  }
}

TEST(Classify, ConstantBetweenMarks) {
  Rng rng = make_rng(3);
  const Graph g = Graph::complete(4);
  for (int rep = 0; rep < 50; ++rep) {
    const MarkConfig m = sample_marks(g, 2.0, 0.5, rng);
    const LoopSet loops = trace_loops(g, m);
    for (const RegularInterval& iv : regular_intervals(m)) {
      const double a = std::fmod(iv.midpoint - 0.3 * iv.length + 1.0, 1.0);
      const double b = std::fmod(iv.midpoint + 0.3 * iv.length, 1.0);
      for (EdgeId e = 0; e < g.num_edges(); ++e)
        EXPECT_EQ(classify(g, m, loops, e, a), classify(g, m, loops, e, b));
    }
  }
}

TEST(RegularIntervals, CoverTheCircle) {
  EXPECT_EQ(regular_intervals(MarkConfig(3)).size(), 1u);
  const MarkConfig m = sample_marks(Graph::complete(4), 2.0, 0.5, 4);
  double total = 0.0;
  for (const auto& iv : regular_intervals(m)) {
    total += iv.length;
    EXPECT_FALSE(m.is_mark_time(iv.midpoint));
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(InsertionVolumes, Examples) {
  const auto none = insertion_volumes(kEdge, MarkConfig(1), trace_loops(kEdge, MarkConfig(1)));
  EXPECT_EQ(none.j_plus, 0.0);
  EXPECT_EQ(none.j_minus, 0.0);
  const MarkConfig c = one(MarkKind::Cross);
  const auto vc = insertion_volumes(kEdge, c, trace_loops(kEdge, c));
  EXPECT_NEAR(vc.j_plus, 1.0, 1e-15);
  EXPECT_EQ(vc.j_minus, 0.0);
  const MarkConfig b = one(MarkKind::Bar);
  const auto vb = insertion_volumes(kEdge, b, trace_loops(kEdge, b));
  EXPECT_EQ(vb.j_plus, 0.0);
  EXPECT_NEAR(vb.j_minus, 1.0, 1e-15);
}

TEST(SliceIdentities, PointwiseAndIntegrated) {
  Rng rng = make_rng(8);
  for (const Graph& g : corpus()) {
    for (int rep = 0; rep < 100; ++rep) {
      const MarkConfig m = sample_marks(g, 1.0 + rep % 3, 0.5, rng);
      const LoopSet loops = trace_loops(g, m);
      for (int k = 0; k < 4; ++k) EXPECT_TRUE(pointwise_slice_check(g, m, loops, sample_regular_time(m, rng)));
      const auto v = insertion_volumes(g, m, loops);
      EXPECT_NEAR(v.total(), integrated_slice_value(g, m, loops), 1e-10);
      EXPECT_LE(v.total(), static_cast<double>(g.num_edges()) + 1e-12);
      EXPECT_GE(v.j_plus, 0.0);
      EXPECT_GE(v.j_minus, 0.0);
    }
  }
  EXPECT_EQ(integrated_slice_value(kEdge, MarkConfig(1), trace_loops(kEdge, MarkConfig(1))), 0.0);
  const MarkConfig c = one(MarkKind::Bar);
  EXPECT_NEAR(integrated_slice_value(kEdge, c, trace_loops(kEdge, c)), 1.0, 1e-15);
  EXPECT_TRUE(pointwise_slice_check(kEdge, c, trace_loops(kEdge, c), 0.9));
}

TEST(MacroscopicEvent, Examples) {
  const Graph g = Graph::complete(5);
  const auto empty = macroscopic_event(trace_loops(g, MarkConfig(g.num_edges())), 0.2);
  EXPECT_FALSE(empty.occurred);
  EXPECT_DOUBLE_EQ(empty.max_support_fraction, 0.2);
  const MarkConfig c = one(MarkKind::Cross);
  const auto merged = macroscopic_event(trace_loops(kEdge, c), 0.5);
  EXPECT_TRUE(merged.occurred);
  EXPECT_DOUBLE_EQ(merged.max_support_fraction, 1.0);
  EXPECT_FALSE(macroscopic_event(trace_loops(kEdge, c), 1.0).occurred);
  EXPECT_THROW(macroscopic_event(trace_loops(kEdge, c), 0.0), InvalidArgument);
}

TEST(SliceBound, RequiresCertificate) {
  const Graph c6 = Graph::cycle(6);
  SparsityOptions o;
  o.eta = 0.5;
  o.eps = 0.1;
  const auto cert = sparsity_check(c6, o);
  ASSERT_TRUE(cert.certifies());
  const MarkConfig none(6);
  EXPECT_TRUE(slice_bound_check(c6, none, trace_loops(c6, none), 0.5, 0.1, cert));
  auto heuristic = cert;
  heuristic.mode = SparsityMode::Heuristic;
  EXPECT_THROW(slice_bound_check(c6, none, trace_loops(c6, none), 0.5, 0.1, heuristic),
               InvalidArgument);
  EXPECT_THROW(slice_bound_check(c6, none, trace_loops(c6, none), 0.5, 0.05, cert),
               InvalidArgument);
}

TEST(DriftIntegrand, Examples) {
  EXPECT_DOUBLE_EQ(drift_integrand(2.0, 1.0, {1.0, 0.0}, 1), 2.0);
  EXPECT_DOUBLE_EQ(drift_integrand(1.7, 0.3, {0.0, 0.0}, 5), -5.0);
  const InsertionVolumes v{0.4, 0.7};
  for (double u : {0.0, 0.25, 1.0})
    EXPECT_DOUBLE_EQ(drift_integrand(1.0, u, v, 3), (1 + u) * 0.4 + (2 - u) * 0.7 - 3);
}
