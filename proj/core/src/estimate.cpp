#include "rlm/estimate.hpp"

#include <cmath>
#include <string>

#include "rlm/error.hpp"

namespace rlm {

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Direct: return "direct";
    case EstimatorKind::Importance: return "importance";
    case EstimatorKind::Mcmc: return "mcmc";
  }
  return "unknown";
}

EstimatorKind parse_estimator(std::string_view text) {
  if (text == "direct") return EstimatorKind::Direct;
  if (text == "importance") return EstimatorKind::Importance;
  if (text == "mcmc") return EstimatorKind::Mcmc;
  throw InvalidArgument("unknown estimator '" + std::string(text) +
                        "' (expected direct, importance or mcmc)");
}

void RunningMoments::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double d = o.mean_ - mean_;
  const double n = na + nb;
  mean_ += d * nb / n;
  m2_ += o.m2_ + d * d * na * nb / n;
  n_ += o.n_;
}

double RunningMoments::variance() const {
  return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double RunningMoments::std_error() const {
  return n_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
}

void PairedMoments::add(double a, double b) {
  ++n_;
  const double n = static_cast<double>(n_);
  const double da = a - mean_a_;
  const double db = b - mean_b_;
  mean_a_ += da / n;
  mean_b_ += db / n;
  m2a_ += da * (a - mean_a_);
  m2b_ += db * (b - mean_b_);
  cab_ += da * (b - mean_b_);
}

void PairedMoments::merge(const PairedMoments& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double da = o.mean_a_ - mean_a_;
  const double db = o.mean_b_ - mean_b_;
  mean_a_ += da * nb / n;
  mean_b_ += db * nb / n;
  m2a_ += o.m2a_ + da * da * na * nb / n;
  m2b_ += o.m2b_ + db * db * na * nb / n;
  cab_ += o.cab_ + da * db * na * nb / n;
  n_ += o.n_;
}

double PairedMoments::variance_a() const {
  return n_ < 2 ? 0.0 : m2a_ / static_cast<double>(n_ - 1);
}
double PairedMoments::variance_b() const {
  return n_ < 2 ? 0.0 : m2b_ / static_cast<double>(n_ - 1);
}
double PairedMoments::covariance() const {
  return n_ < 2 ? 0.0 : cab_ / static_cast<double>(n_ - 1);
}

}  // namespace rlm
