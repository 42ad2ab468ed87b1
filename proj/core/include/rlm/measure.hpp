#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rlm/estimate.hpp"
#include "rlm/graph.hpp"
#include "rlm/loops.hpp"
#include "rlm/marks.hpp"
#include "rlm/random.hpp"

namespace rlm {

/// How a sampling run is split and seeded. The work is always cut into
/// `replicas` independent streams (stream r seeded from (seed, r)) and merged
/// in stream order, so results do not depend on `threads`.
struct SamplingOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::size_t replicas = 8;
  unsigned threads = 1;
  /// Importance sampling runs with sum(w)/max(w) below this are flagged.
  double ess_floor = 10.0;
};

/// Metropolis chain settings; zero selects the documented default.
struct McmcOptions {
  /// Default: at least 10*|E| steps and 10*ceil(t|E|) accepted moves.
  std::size_t burn_in_steps = 0;
  /// Default: |E| steps between recorded samples.
  std::size_t thinning = 0;
  /// Steps between re-traces asserting the stored loop count.
  std::size_t check_interval = 4096;
  /// Batches per chain for batch-means standard errors.
  std::size_t batches = 20;
};

/// A traced configuration handed to functionals.
struct Sample {
  const Graph& graph;
  const MarkConfig& marks;
  const LoopSet& loops;
};

/// Bounded functional of a configuration.
using Functional = std::function<double(const Sample&)>;

/// Z_G(theta, t, u) = E_rho[theta^lambda] from i.i.d. draws of the mark law.
Estimate estimate_Z(const Graph& g, double theta, double t, double u,
                    const SamplingOptions& options);

/// Expectations under the theta-weighted law by self-normalised importance
/// sampling from rho with weights theta^lambda; delta-method standard errors.
/// With theta = 1 this is plain Monte Carlo and is labelled Direct.
Estimate estimate_weighted(const Graph& g, double theta, double t, double u, const Functional& f,
                           const SamplingOptions& options);
std::vector<Estimate> estimate_weighted(const Graph& g, double theta, double t, double u,
                                        std::span<const Functional> fs,
                                        const SamplingOptions& options);

struct MoveStats {
  std::size_t proposed = 0;
  std::size_t accepted = 0;
};

/// Metropolis chain state. `loops` is always the trace of `marks`.
struct ChainState {
  MarkConfig marks;
  LoopSet loops;
  std::size_t steps = 0;
  MoveStats insert;
  MoveStats remove;
  MoveStats relocate;

  std::size_t lambda() const { return loops.num_loops(); }
  std::size_t accepted() const { return insert.accepted + remove.accepted + relocate.accepted; }
};

ChainState make_chain(const Graph& g, MarkConfig initial);

/// One Metropolis move targeting theta^lambda times the Poisson(t) mark law,
/// chosen uniformly among
///   insert:   uniform edge and time, Cross w.p. u;
///             accept min(1, theta^dlambda t|E| / (k+1));
///   delete:   uniform existing mark; accept min(1, theta^dlambda k / (t|E|));
///   relocate: uniform mark gets a fresh time and kind; accept min(1, theta^dlambda),
/// where k is the current number of marks and dlambda comes from a full retrace.
void mcmc_step(const Graph& g, ChainState& chain, double theta, double t, double u, Rng& rng);

/// Chain time averages of the functionals with batch-means standard errors.
/// Each replica runs its own chain started from a draw of rho_{t,u}.
std::vector<Estimate> estimate_mcmc(const Graph& g, double theta, double t, double u,
                                    std::span<const Functional> fs,
                                    const SamplingOptions& options, const McmcOptions& mcmc = {});

/// Functional 1{A_eta}.
Functional macroscopic_indicator(double eta);
/// Functional (1+theta u) J_+ + (1+theta(1-u)) J_- - |E|.
Functional drift_functional(double theta, double u);
/// Functional max_gamma |supp_V(gamma)| / n.
Functional max_support_fraction();

/// P_theta(A_eta) with the chosen estimator. Direct requires theta = 1.
Estimate estimate_prob_macroscopic(const Graph& g, double theta, double t, double u, double eta,
                                   const SamplingOptions& options, EstimatorKind estimator,
                                   const McmcOptions& mcmc = {});

/// E_theta of the drift integrand, whose mean is D_{theta,u}(t).
Estimate estimate_drift(const Graph& g, double theta, double t, double u,
                        const SamplingOptions& options,
                        EstimatorKind estimator = EstimatorKind::Importance,
                        const McmcOptions& mcmc = {});

/// (log Z(t+delta) - log Z(t-delta)) / (2 delta) with common random numbers:
/// each draw at intensity t+delta is thinned with keep probability
/// (t-delta)/(t+delta) to give the paired draw at t-delta.
/// Throws InvalidArgument if theta = 1, delta <= 0 or t - delta < 0.
Estimate finite_difference_logZ(const Graph& g, double theta, double t, double u, double delta,
                                const SamplingOptions& options);

/// (E lambda(t+delta) - E lambda(t-delta)) / (2 delta) under rho, with the
/// same thinning coupling.
Estimate finite_difference_mean_loops(const Graph& g, double t, double u, double delta,
                                      const SamplingOptions& options);

/// Central-difference estimate of D_{theta,u}(t): the mean-loop difference for
/// theta = 1 and theta/(theta-1) times the log Z difference otherwise.
Estimate finite_difference_drift(const Graph& g, double theta, double t, double u, double delta,
                                 const SamplingOptions& options);

/// (1/s) int_a^{a+s} P_theta(A_eta) dt by the trapezoidal rule on
/// `grid_points` equally spaced times; grid point k uses stream k of the seed.
Estimate time_average_prob(const Graph& g, double theta, double u, double eta, double a, double s,
                           std::size_t grid_points, const SamplingOptions& options,
                           EstimatorKind estimator, const McmcOptions& mcmc = {});

}  // namespace rlm
