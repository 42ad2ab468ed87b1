#include "rlm/measure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "rlm/error.hpp"
#include "rlm/observables.hpp"

namespace rlm {

namespace {

void check_model(double theta, double t, double u) {
  if (!(theta > 0.0)) throw InvalidArgument("theta must be positive");
  if (!(t >= 0.0)) throw InvalidArgument("t must be nonnegative");
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("u must lie in [0, 1]");
}

void check_sampling(const SamplingOptions& o) {
  if (o.samples < 2) throw InvalidArgument("at least two samples are required");
  if (o.replicas == 0) throw InvalidArgument("replica count must be positive");
}

std::size_t replica_share(const SamplingOptions& o, std::size_t r) {
  const std::size_t replicas = std::min(o.replicas, o.samples);
  return o.samples / replicas + (r < o.samples % replicas ? 1 : 0);
}

std::size_t replica_count(const SamplingOptions& o) { return std::min(o.replicas, o.samples); }

/// Runs fn(r) for r in [0, count) on up to `threads` workers; results are
/// indexed by r so the merge order never depends on scheduling.
template <class Result, class Fn>
std::vector<Result> run_replicas(std::size_t count, unsigned threads, Fn fn) {
  std::vector<Result> out(count);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t r = 0; r < count; ++r) out[r] = fn(r);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < count; r = next++) {
          try {
            out[r] = fn(r);
          } catch (...) {
            errors[r] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Sums for self-normalised importance sampling, kept relative to the largest
/// log-weight seen so that theta^lambda never overflows.
struct WeightedSums {
  double log_ref = -INFINITY;
  double sw = 0.0;
  double sw2 = 0.0;
  double max_w = 0.0;
  std::size_t count = 0;
  std::vector<double> swf;
  std::vector<double> sw2f;
  std::vector<double> sw2f2;

  explicit WeightedSums(std::size_t k = 0) : swf(k, 0.0), sw2f(k, 0.0), sw2f2(k, 0.0) {}

  void rescale(double new_ref) {
    if (log_ref == -INFINITY) {
      log_ref = new_ref;
      return;
    }
    const double a = std::exp(log_ref - new_ref);
    const double a2 = a * a;
    sw *= a;
    sw2 *= a2;
    max_w *= a;
    for (double& x : swf) x *= a;
    for (double& x : sw2f) x *= a2;
    for (double& x : sw2f2) x *= a2;
    log_ref = new_ref;
  }

  void add(double log_w, std::span<const double> f) {
    if (log_w > log_ref) rescale(log_w);
    const double w = std::exp(log_w - log_ref);
    ++count;
    sw += w;
    sw2 += w * w;
    max_w = std::max(max_w, w);
    for (std::size_t i = 0; i < f.size(); ++i) {
      swf[i] += w * f[i];
      sw2f[i] += w * w * f[i];
      sw2f2[i] += w * w * f[i] * f[i];
    }
  }

  void merge(WeightedSums o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = std::move(o);
      return;
    }
    if (o.log_ref > log_ref) rescale(o.log_ref);
    if (o.log_ref < log_ref) o.rescale(log_ref);
    count += o.count;
    sw += o.sw;
    sw2 += o.sw2;
    max_w = std::max(max_w, o.max_w);
    for (std::size_t i = 0; i < swf.size(); ++i) {
      swf[i] += o.swf[i];
      sw2f[i] += o.sw2f[i];
      sw2f2[i] += o.sw2f2[i];
    }
  }
};

std::vector<Estimate> finish_weighted(const WeightedSums& s, double theta,
                                      const SamplingOptions& o) {
  std::vector<Estimate> out(s.swf.size());
  const double n = static_cast<double>(s.count);
  const double ess = s.sw / s.max_w;
  for (std::size_t i = 0; i < out.size(); ++i) {
    Estimate& e = out[i];
    e.n_samples = s.count;
    e.estimator = theta == 1.0 ? EstimatorKind::Direct : EstimatorKind::Importance;
    e.mean = s.swf[i] / s.sw;
    const double mu = e.mean;
    double var = (s.sw2f2[i] - 2.0 * mu * s.sw2f[i] + mu * mu * s.sw2) / (s.sw * s.sw);
    var = std::max(0.0, var) * n / (n - 1.0);
    e.std_error = std::sqrt(var);
    e.effective_sample_size = ess;
    e.low_ess = ess < o.ess_floor;
  }
  return out;
}

}  // namespace

Estimate estimate_Z(const Graph& g, double theta, double t, double u,
                    const SamplingOptions& o) {
  check_model(theta, t, u);
  check_sampling(o);
  auto parts = run_replicas<RunningMoments>(replica_count(o), o.threads, [&](std::size_t r) {
    Rng rng = make_rng(o.seed, r);
    RunningMoments m;
    for (std::size_t i = 0, k = replica_share(o, r); i < k; ++i) {
      const MarkConfig marks = sample_marks(g, t, u, rng);
      const LoopSet loops = trace_loops(g, marks);
      m.add(std::pow(theta, static_cast<double>(loops.num_loops())));
    }
    return m;
  });
  RunningMoments all;
  for (const auto& p : parts) all.merge(p);
  Estimate e;
  e.mean = all.mean();
  e.std_error = all.std_error();
  e.n_samples = all.count();
  e.estimator = EstimatorKind::Direct;
  return e;
}

std::vector<Estimate> estimate_weighted(const Graph& g, double theta, double t, double u,
                                        std::span<const Functional> fs,
                                        const SamplingOptions& o) {
  check_model(theta, t, u);
  check_sampling(o);
  const double log_theta = std::log(theta);
  auto parts = run_replicas<WeightedSums>(replica_count(o), o.threads, [&](std::size_t r) {
    Rng rng = make_rng(o.seed, r);
    WeightedSums sums(fs.size());
    std::vector<double> values(fs.size());
    for (std::size_t i = 0, k = replica_share(o, r); i < k; ++i) {
      const MarkConfig marks = sample_marks(g, t, u, rng);
      const LoopSet loops = trace_loops(g, marks);
      const Sample sample{g, marks, loops};
      for (std::size_t j = 0; j < fs.size(); ++j) values[j] = fs[j](sample);
      sums.add(log_theta * static_cast<double>(loops.num_loops()), values);
    }
    return sums;
  });
  WeightedSums all(fs.size());
  for (auto& p : parts) all.merge(std::move(p));
  return finish_weighted(all, theta, o);
}

Estimate estimate_weighted(const Graph& g, double theta, double t, double u, const Functional& f,
                           const SamplingOptions& o) {
  return estimate_weighted(g, theta, t, u, std::span<const Functional>(&f, 1), o).front();
}

ChainState make_chain(const Graph& g, MarkConfig initial) {
  ChainState c;
  c.loops = trace_loops(g, initial);
  c.marks = std::move(initial);
  return c;
}

void mcmc_step(const Graph& g, ChainState& c, double theta, double t, double u, Rng& rng) {
  ++c.steps;
  const std::size_t k = c.marks.size();
  const double edges = static_cast<double>(g.num_edges());
  MarkConfig proposal;
  double ratio = 0.0;
  MoveStats* stats = nullptr;
  switch (rng() % 3) {
    case 0: {
      stats = &c.insert;
      ++stats->proposed;
      if (g.num_edges() == 0 || t == 0.0) return;
      const auto e = static_cast<EdgeId>(rng() % g.num_edges());
      const double s = uniform01(rng);
      const MarkKind kind = uniform01(rng) < u ? MarkKind::Cross : MarkKind::Bar;
      if (c.marks.is_mark_time(s)) return;
      proposal = c.marks.with_mark({e, s, kind});
      ratio = t * edges / static_cast<double>(k + 1);
      break;
    }
    case 1: {
      stats = &c.remove;
      ++stats->proposed;
      if (k == 0) return;
      proposal = c.marks.without_mark(rng() % k);
      ratio = t == 0.0 ? INFINITY : static_cast<double>(k) / (t * edges);
      break;
    }
    default: {
      stats = &c.relocate;
      ++stats->proposed;
      if (k == 0) return;
      const std::size_t idx = rng() % k;
      const double s = uniform01(rng);
      const MarkKind kind = uniform01(rng) < u ? MarkKind::Cross : MarkKind::Bar;
      if (s != c.marks[idx].time && c.marks.is_mark_time(s)) return;
      proposal = c.marks.with_replaced(idx, {c.marks[idx].edge, s, kind});
      ratio = 1.0;
      break;
    }
  }
  LoopSet loops = trace_loops(g, proposal);
  const double dlambda =
      static_cast<double>(loops.num_loops()) - static_cast<double>(c.loops.num_loops());
  ratio *= std::pow(theta, dlambda);
  if (ratio >= 1.0 || uniform01(rng) < ratio) {
    c.marks = std::move(proposal);
    c.loops = std::move(loops);
    ++stats->accepted;
  }
}

namespace {

void assert_chain(const Graph& g, const ChainState& c) {
  if (trace_loops(g, c.marks).num_loops() != c.lambda()) {
    throw ConsistencyError("chain loop count drifted from a fresh trace");
  }
}

struct ChainRecord {
  std::vector<RunningMoments> all;
  std::vector<std::vector<double>> batch_means;
  std::size_t batch_size = 0;
  std::size_t steps = 0;
  std::size_t accepted = 0;
};

}  // namespace

std::vector<Estimate> estimate_mcmc(const Graph& g, double theta, double t, double u,
                                    std::span<const Functional> fs, const SamplingOptions& o,
                                    const McmcOptions& m) {
  check_model(theta, t, u);
  check_sampling(o);
  const std::size_t edges = std::max<std::size_t>(1, g.num_edges());
  const std::size_t thinning = m.thinning ? m.thinning : edges;
  const std::size_t min_burn = m.burn_in_steps ? m.burn_in_steps : 10 * edges;
  const std::size_t burn_accepts =
      m.burn_in_steps ? 0 : 10 * static_cast<std::size_t>(std::ceil(t * static_cast<double>(edges)));

  auto parts = run_replicas<ChainRecord>(replica_count(o), o.threads, [&](std::size_t r) {
    Rng rng = make_rng(o.seed, r);
    ChainState chain = make_chain(g, sample_marks(g, t, u, rng));
    auto step = [&] {
      mcmc_step(g, chain, theta, t, u, rng);
      if (m.check_interval && chain.steps % m.check_interval == 0) assert_chain(g, chain);
    };
    // Burn-in also stops on a hard ceiling so that a stuck chain cannot hang.
    const std::size_t ceiling = 1000 * min_burn + 1000000;
    while (chain.steps < min_burn || (chain.accepted() < burn_accepts && chain.steps < ceiling))
      step();

    const std::size_t count = replica_share(o, r);
    ChainRecord rec;
    rec.all.resize(fs.size());
    rec.batch_means.resize(fs.size());
    const std::size_t batches = std::max<std::size_t>(1, std::min(m.batches, count));
    rec.batch_size = count / batches;
    std::vector<double> batch_sum(fs.size(), 0.0);
    const std::size_t steps0 = chain.steps;
    const std::size_t acc0 = chain.accepted();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t s = 0; s < thinning; ++s) step();
      const Sample sample{g, chain.marks, chain.loops};
      for (std::size_t j = 0; j < fs.size(); ++j) {
        const double v = fs[j](sample);
        rec.all[j].add(v);
        batch_sum[j] += v;
      }
      if ((i + 1) % rec.batch_size == 0 && (i + 1) / rec.batch_size <= batches) {
        for (std::size_t j = 0; j < fs.size(); ++j) {
          rec.batch_means[j].push_back(batch_sum[j] / static_cast<double>(rec.batch_size));
          batch_sum[j] = 0.0;
        }
      }
    }
    rec.steps = chain.steps - steps0;
    rec.accepted = chain.accepted() - acc0;
    return rec;
  });

  std::vector<Estimate> out(fs.size());
  std::size_t steps = 0;
  std::size_t accepted = 0;
  for (const auto& p : parts) {
    steps += p.steps;
    accepted += p.accepted;
  }
  for (std::size_t j = 0; j < fs.size(); ++j) {
    RunningMoments all;
    RunningMoments batch;
    double weighted_batch_size = 0.0;
    for (const auto& p : parts) {
      all.merge(p.all[j]);
      for (double b : p.batch_means[j]) {
        batch.add(b);
        weighted_batch_size += static_cast<double>(p.batch_size);
      }
    }
    Estimate& e = out[j];
    e.estimator = EstimatorKind::Mcmc;
    e.mean = all.mean();
    e.n_samples = all.count();
    e.std_error = batch.count() >= 2 ? batch.std_error() : all.std_error();
    e.acceptance_rate = steps ? static_cast<double>(accepted) / static_cast<double>(steps) : 0.0;
    if (batch.count() >= 2 && all.variance() > 0.0) {
      const double mean_batch = weighted_batch_size / static_cast<double>(batch.count());
      e.autocorrelation_time = mean_batch * batch.variance() / all.variance();
    }
  }
  return out;
}

Functional macroscopic_indicator(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in (0, 1]");
  return [eta](const Sample& s) { return macroscopic_event(s.loops, eta).occurred ? 1.0 : 0.0; };
}

Functional drift_functional(double theta, double u) {
  return [theta, u](const Sample& s) {
    return drift_integrand(theta, u, insertion_volumes(s.graph, s.marks, s.loops),
                           s.graph.num_edges());
  };
}

Functional max_support_fraction() {
  return [](const Sample& s) {
    if (s.loops.num_vertices() == 0) return 0.0;
    return macroscopic_event(s.loops, 1.0).max_support_fraction;
  };
}

namespace {

Estimate dispatch(const Graph& g, double theta, double t, double u, const Functional& f,
                  const SamplingOptions& o, EstimatorKind estimator, const McmcOptions& m) {
  switch (estimator) {
    case EstimatorKind::Direct:
      if (theta != 1.0) {
        throw InvalidArgument("the direct estimator samples the unweighted law; use theta = 1");
      }
      return estimate_weighted(g, theta, t, u, f, o);
    case EstimatorKind::Importance: {
      Estimate e = estimate_weighted(g, theta, t, u, f, o);
      e.estimator = EstimatorKind::Importance;
      return e;
    }
    case EstimatorKind::Mcmc:
      return estimate_mcmc(g, theta, t, u, std::span<const Functional>(&f, 1), o, m).front();
  }
  throw InvalidArgument("unknown estimator");
}

}  // namespace

Estimate estimate_prob_macroscopic(const Graph& g, double theta, double t, double u, double eta,
                                   const SamplingOptions& o, EstimatorKind estimator,
                                   const McmcOptions& m) {
  return dispatch(g, theta, t, u, macroscopic_indicator(eta), o, estimator, m);
}

Estimate estimate_drift(const Graph& g, double theta, double t, double u,
                        const SamplingOptions& o, EstimatorKind estimator, const McmcOptions& m) {
  return dispatch(g, theta, t, u, drift_functional(theta, u), o, estimator, m);
}

namespace {

void check_difference(double t, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  if (!(t - delta >= 0.0)) {
    throw InvalidArgument("t - delta = " + std::to_string(t - delta) + " is negative");
  }
}

/// Paired draws (lambda at t+delta, lambda at t-delta) fed to `record`.
template <class Acc, class Record>
Acc coupled_pairs(const Graph& g, double t, double u, double delta, const SamplingOptions& o,
                  Record record) {
  auto parts = run_replicas<Acc>(replica_count(o), o.threads, [&](std::size_t r) {
    Rng rng = make_rng(o.seed, r);
    Acc acc;
    const double keep = (t - delta) / (t + delta);
    for (std::size_t i = 0, k = replica_share(o, r); i < k; ++i) {
      const MarkConfig hi = sample_marks(g, t + delta, u, rng);
      const MarkConfig lo = thin_marks(hi, keep, rng);
      record(acc, trace_loops(g, hi).num_loops(), trace_loops(g, lo).num_loops());
    }
    return acc;
  });
  Acc all;
  for (const auto& p : parts) all.merge(p);
  return all;
}

}  // namespace

Estimate finite_difference_logZ(const Graph& g, double theta, double t, double u, double delta,
                                const SamplingOptions& o) {
  check_model(theta, t, u);
  check_sampling(o);
  check_difference(t, delta);
  if (theta == 1.0) throw InvalidArgument("log Z is identically 0 at theta = 1");
  const double n = static_cast<double>(g.num_vertices());
  auto moments = coupled_pairs<PairedMoments>(
      g, t, u, delta, o, [&](PairedMoments& acc, std::size_t hi, std::size_t lo) {
        acc.add(std::pow(theta, static_cast<double>(hi) - n),
                std::pow(theta, static_cast<double>(lo) - n));
      });
  const double a = moments.mean_a();
  const double b = moments.mean_b();
  if (!(a > 0.0 && b > 0.0)) throw ConsistencyError("nonpositive partition function estimate");
  const double count = static_cast<double>(moments.count());
  const double var = (moments.variance_a() / (a * a) + moments.variance_b() / (b * b) -
                      2.0 * moments.covariance() / (a * b)) /
                     count;
  Estimate e;
  e.mean = (std::log(a) - std::log(b)) / (2.0 * delta);
  e.std_error = std::sqrt(std::max(0.0, var)) / (2.0 * delta);
  e.n_samples = moments.count();
  e.estimator = EstimatorKind::Direct;
  return e;
}

Estimate finite_difference_mean_loops(const Graph& g, double t, double u, double delta,
                                      const SamplingOptions& o) {
  check_model(1.0, t, u);
  check_sampling(o);
  check_difference(t, delta);
  auto moments = coupled_pairs<RunningMoments>(
      g, t, u, delta, o, [&](RunningMoments& acc, std::size_t hi, std::size_t lo) {
        acc.add((static_cast<double>(hi) - static_cast<double>(lo)) / (2.0 * delta));
      });
  Estimate e;
  e.mean = moments.mean();
  e.std_error = moments.std_error();
  e.n_samples = moments.count();
  e.estimator = EstimatorKind::Direct;
  return e;
}

Estimate finite_difference_drift(const Graph& g, double theta, double t, double u, double delta,
                                 const SamplingOptions& o) {
  if (theta == 1.0) return finite_difference_mean_loops(g, t, u, delta, o);
  Estimate e = finite_difference_logZ(g, theta, t, u, delta, o);
  const double factor = theta / (theta - 1.0);
  e.mean *= factor;
  e.std_error *= std::abs(factor);
  return e;
}

Estimate time_average_prob(const Graph& g, double theta, double u, double eta, double a, double s,
                           std::size_t grid_points, const SamplingOptions& o,
                           EstimatorKind estimator, const McmcOptions& m) {
  if (!(s > 0.0)) throw InvalidArgument("window length s must be positive");
  if (!(a >= 0.0)) throw InvalidArgument("window start a must be nonnegative");
  if (grid_points < 2) throw InvalidArgument("need at least two grid points");
  Estimate out;
  out.estimator = estimator;
  double var = 0.0;
  const double h = 1.0 / static_cast<double>(grid_points - 1);
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double t = a + s * static_cast<double>(k) * h;
    SamplingOptions point = o;
    point.seed = derive_seed(o.seed, k);
    const Estimate p = estimate_prob_macroscopic(g, theta, t, u, eta, point, estimator, m);
    const double w = (k == 0 || k + 1 == grid_points) ? 0.5 * h : h;
    out.mean += w * p.mean;
    var += w * w * p.std_error * p.std_error;
    out.n_samples += p.n_samples;
  }
  out.std_error = std::sqrt(var);
  return out;
}

}  // namespace rlm
