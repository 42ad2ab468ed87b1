#include "rlm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rlm/error.hpp"

namespace rlm {

namespace {

void check_theta_u(double theta, double u) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw InvalidArgument("theta must be positive");
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("u must lie in [0, 1]");
}

bool is_integer_at_least_two(double theta) { return theta >= 2.0 && std::floor(theta) == theta; }

double theta_log_ratio(double theta) { return theta * std::log(theta) / (theta - 1.0); }

}  // namespace

double c_const(double theta, double u) {
  check_theta_u(theta, u);
  return 1.0 + theta * std::max(u, 1.0 - u);
}

double C_const(double theta) {
  if (!(theta > 0.0)) throw InvalidArgument("theta must be positive");
  if (theta == 1.0) return 1.0;
  return theta * std::abs(std::log(theta)) / std::abs(theta - 1.0);
}

double threshold_time(double theta, double u, double m) {
  if (!is_integer_at_least_two(theta)) throw InvalidArgument("theta must be an integer >= 2");
  const double c = c_const(theta, u);
  if (!(m > 2.0 * c)) {
    throw InvalidArgument("m = " + std::to_string(m) + " must exceed 2c = " + std::to_string(2 * c));
  }
  return theta_log_ratio(theta) / (m / 2.0 - c);
}

BoundInputs BoundInputs::for_graph(std::size_t n, std::size_t edge_count, double theta, double u,
                                   double eps, double eta) {
  if (n == 0) throw InvalidArgument("graph has no vertices");
  BoundInputs in;
  in.n = n;
  in.edge_count = edge_count;
  in.theta = theta;
  in.u = u;
  in.eps = eps;
  in.eta = eta;
  in.m_minus = in.m_plus = static_cast<double>(edge_count) / static_cast<double>(n);
  return in;
}

void BoundInputs::validate() const {
  check_theta_u(theta, u);
  if (!(eps >= 0.0)) throw InvalidArgument("eps must be nonnegative");
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in (0, 1]");
  if (!(m_minus > 0.0 && m_minus <= m_plus)) {
    throw InvalidArgument("need 0 < m_minus <= m_plus");
  }
}

double drift_upper_bound(const BoundInputs& in, double prob_A) {
  check_theta_u(in.theta, in.u);
  if (!(in.eps >= 0.0)) throw InvalidArgument("eps must be nonnegative");
  if (!(prob_A >= 0.0 && prob_A <= 1.0)) throw InvalidArgument("prob_A must lie in [0, 1]");
  const double cn = c_const(in.theta, in.u) * (1.0 + in.eps) * static_cast<double>(in.n);
  const double e = static_cast<double>(in.edge_count);
  return (cn - e) + ((1.0 + in.theta) * e - cn) * prob_A;
}

double averaged_lower_bound(const BoundInputs& in) {
  in.validate();
  if (!in.s || !(*in.s > 0.0)) throw InvalidArgument("window length s must be positive");
  const double ce = c_const(in.theta, in.u) * (1.0 + in.eps);
  const double den = (1.0 + in.theta) * in.m_plus - ce;
  if (!(den > 0.0)) throw InvalidArgument("(1+theta) m_plus - c(1+eps) must be positive");
  return (in.m_minus - ce - C_const(in.theta) / *in.s) / den;
}

double pointwise_threshold(const BoundInputs& in) {
  in.validate();
  if (!is_integer_at_least_two(in.theta)) throw InvalidArgument("theta must be an integer >= 2");
  const double gap = in.m_minus - c_const(in.theta, in.u) * (1.0 + in.eps);
  if (!(gap > 0.0)) throw InvalidArgument("m_minus must exceed c(1+eps)");
  return theta_log_ratio(in.theta) / gap;
}

double pointwise_lower_bound(const BoundInputs& in) {
  const double threshold = pointwise_threshold(in);
  if (!in.t) throw InvalidArgument("time t is required");
  const double t = *in.t;
  if (!(t >= threshold * (1.0 - 1e-12))) {
    throw InvalidArgument("t = " + std::to_string(t) + " is below the threshold " +
                          std::to_string(threshold));
  }
  if (t <= threshold) return 0.0;
  const double ce = c_const(in.theta, in.u) * (1.0 + in.eps);
  return (in.m_minus - ce - theta_log_ratio(in.theta) / t) / ((1.0 + in.theta) * in.m_plus - ce);
}

CriterionReport criterion_report(const Graph& g, double theta, double u, double eps, double eta,
                                 const SparsityVerdict& sparsity) {
  if (!(eps >= 0.0)) throw InvalidArgument("eps must be nonnegative");
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in (0, 1]");
  CriterionReport r;
  r.n = g.num_vertices();
  r.edge_count = g.num_edges();
  r.theta = theta;
  r.u = u;
  r.eps = eps;
  r.eta = eta;
  r.c = c_const(theta, u);
  r.alpha = edge_density(g);
  r.alpha_exceeds_c = r.alpha > r.c;

  r.sparsity_holds = sparsity.holds;
  r.sparsity_size_cap = sparsity.size_cap;
  r.sparsity_certified = sparsity.certifies() && sparsity.eps <= eps &&
                         sparsity.size_cap >= sparsity_scale(eta, r.n);

  if (is_integer_at_least_two(theta) && r.alpha_exceeds_c) {
    r.threshold_time = threshold_time(theta, u, 2.0 * r.alpha);
  }
  r.mean_degree = 2.0 * r.alpha;
  r.mean_degree_exceeds_2c = r.mean_degree > 2.0 * r.c;
  if (auto d = g.regular_degree()) {
    r.regular_degree = *d;
    r.regular_degree_exceeds_2c = static_cast<double>(*d) > 2.0 * r.c;
  }
  r.applicable = r.alpha_exceeds_c && r.sparsity_certified;
  return r;
}

}  // namespace rlm
