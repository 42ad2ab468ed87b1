#pragma once

#include <cstddef>
#include <optional>

#include "rlm/graph.hpp"
#include "rlm/sparsity.hpp"

namespace rlm {

/// c_{theta,u} = 1 + theta max(u, 1-u).
double c_const(double theta, double u);

/// C_theta: 1 at theta = 1, theta |log theta| / |theta - 1| otherwise.
double C_const(double theta);

/// T_{theta,u}(m) = theta log theta / ((theta-1)(m/2 - c_{theta,u})).
/// Requires integer theta >= 2 and m > 2 c_{theta,u}.
double threshold_time(double theta, double u, double m);

/// Inputs of the lower-bound formulas for one concrete graph.
struct BoundInputs {
  std::size_t n = 0;
  std::size_t edge_count = 0;
  double theta = 1.0;
  double u = 0.5;
  /// eps = 0 is allowed here; the formulas stay finite.
  double eps = 0.1;
  double eta = 0.1;
  /// Edge-density window; |E|/n for both by default.
  double m_minus = 0.0;
  double m_plus = 0.0;
  /// Window length for the averaged bound.
  std::optional<double> s;
  /// Time for the pointwise bound.
  std::optional<double> t;

  static BoundInputs for_graph(std::size_t n, std::size_t edge_count, double theta, double u,
                               double eps, double eta);
  /// Throws InvalidArgument on theta <= 0, u outside [0,1], eps < 0,
  /// eta outside (0,1] or not 0 < m_minus <= m_plus.
  void validate() const;
};

/// (c(1+eps)n - |E|) + ((1+theta)|E| - c(1+eps)n) * prob_A.
double drift_upper_bound(const BoundInputs& in, double prob_A);

/// (m_- - c(1+eps) - C_theta/s) / ((1+theta) m_+ - c(1+eps)). Negative values
/// are returned unchanged. Requires s > 0 and a positive denominator.
double averaged_lower_bound(const BoundInputs& in);

/// Smallest t accepted by pointwise_lower_bound:
/// theta log theta / ((theta-1)(m_- - c(1+eps))).
double pointwise_threshold(const BoundInputs& in);

/// (m_- - c(1+eps) - theta log theta/((theta-1)t)) / ((1+theta) m_+ - c(1+eps)).
/// Requires integer theta >= 2, m_- > c(1+eps) and t not below
/// pointwise_threshold (a relative 1e-12 slack admits t equal to it, where the
/// value is 0).
double pointwise_lower_bound(const BoundInputs& in);

/// Applicability of the averaged and pointwise criteria to one graph.
struct CriterionReport {
  std::size_t n = 0;
  std::size_t edge_count = 0;
  double theta = 1.0;
  double u = 0.5;
  double eps = 0.0;
  double eta = 0.0;

  double alpha = 0.0;  // |E| / n
  double c = 0.0;
  bool alpha_exceeds_c = false;

  bool sparsity_holds = false;
  bool sparsity_certified = false;
  std::size_t sparsity_size_cap = 0;

  /// T_{theta,u}(2 alpha), for integer theta > 1 with alpha > c.
  std::optional<double> threshold_time;

  double mean_degree = 0.0;  // 2 alpha; the ER lambda in the sparse regime
  bool mean_degree_exceeds_2c = false;
  std::optional<std::size_t> regular_degree;
  bool regular_degree_exceeds_2c = false;

  /// alpha > c and the sparsity condition is certified at scale floor(eta n).
  bool applicable = false;
};

CriterionReport criterion_report(const Graph& g, double theta, double u, double eps, double eta,
                                 const SparsityVerdict& sparsity);

}  // namespace rlm
