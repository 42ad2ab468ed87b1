#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace rlm {

enum class EstimatorKind {
  Direct,      // i.i.d. draws from the unweighted Poisson mark law
  Importance,  // self-normalised, weights theta^lambda
  Mcmc,        // Metropolis chain targeting the theta-weighted law
};

std::string_view to_string(EstimatorKind kind);
/// Accepts "direct", "importance", "mcmc". Throws InvalidArgument otherwise.
EstimatorKind parse_estimator(std::string_view text);

/// Monte Carlo value with its standard error and sampler diagnostics.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  EstimatorKind estimator = EstimatorKind::Direct;

  /// Importance sampling: sum(w) / max(w).
  std::optional<double> effective_sample_size;
  /// Importance sampling: effective sample size fell below the floor.
  bool low_ess = false;
  /// MCMC: integrated autocorrelation time in units of recorded samples,
  /// from batch means.
  std::optional<double> autocorrelation_time;
  /// MCMC: fraction of accepted proposals over all moves.
  std::optional<double> acceptance_rate;

  double lower(double z = 1.959963984540054) const { return mean - z * std_error; }
  double upper(double z = 1.959963984540054) const { return mean + z * std_error; }
};

/// Sum of the two standard errors: the conservative tolerance unit used when
/// comparing two estimates.
inline double combined_std_error(const Estimate& a, const Estimate& b) {
  return a.std_error + b.std_error;
}

/// Streaming mean/variance with order-stable merging (Chan et al.).
class RunningMoments {
 public:
  void add(double x);
  void merge(const RunningMoments& other);

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; 0 below two samples.
  double variance() const;
  double std_error() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Joint moments of a pair (means, variances, covariance) with merging.
class PairedMoments {
 public:
  void add(double a, double b);
  void merge(const PairedMoments& other);

  std::size_t count() const { return n_; }
  double mean_a() const { return mean_a_; }
  double mean_b() const { return mean_b_; }
  double variance_a() const;
  double variance_b() const;
  double covariance() const;

 private:
  std::size_t n_ = 0;
  double mean_a_ = 0.0;
  double mean_b_ = 0.0;
  double m2a_ = 0.0;
  double m2b_ = 0.0;
  double cab_ = 0.0;
};

}  // namespace rlm
