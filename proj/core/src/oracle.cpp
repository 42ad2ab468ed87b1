#include "rlm/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "rlm/error.hpp"

namespace rlm {

namespace {

void check_single_edge(double theta, double t, double u) {
  if (!(theta > 0.0)) throw InvalidArgument("theta must be positive");
  if (!(t >= 0.0)) throw InvalidArgument("t must be nonnegative");
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("u must lie in [0, 1]");
}

void check_u(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("u must lie in [0, 1]");
}

/// Colour of vertex v in basis state k, and state k with that colour replaced.
struct Digits {
  std::vector<std::size_t> pow;

  Digits(std::size_t n, std::size_t theta) : pow(n + 1, 1) {
    for (std::size_t v = 0; v < n; ++v) pow[v + 1] = pow[v] * theta;
  }
  std::size_t get(std::size_t k, Vertex v, std::size_t theta) const { return k / pow[v] % theta; }
  std::size_t set(std::size_t k, Vertex v, std::size_t theta, std::size_t c) const {
    return k - get(k, v, theta) * pow[v] + c * pow[v];
  }
};

/// out += coef * Op * in for the two-site operator on {x, y}.
void apply(const Digits& d, std::size_t theta, Vertex x, Vertex y, MarkKind kind,
           std::span<const double> in, std::span<double> out, double coef) {
  const std::size_t dim = in.size();
  for (std::size_t k = 0; k < dim; ++k) {
    if (in[k] == 0.0) continue;
    const std::size_t a = d.get(k, x, theta);
    const std::size_t b = d.get(k, y, theta);
    if (kind == MarkKind::Cross) {
      out[d.set(d.set(k, x, theta, b), y, theta, a)] += coef * in[k];
    } else if (a == b) {
      for (std::size_t c = 0; c < theta; ++c) {
        out[d.set(d.set(k, x, theta, c), y, theta, c)] += coef * in[k];
      }
    }
  }
}

void check_theta(std::size_t theta) {
  if (theta < 2) throw InvalidArgument("the trace representation needs integer theta >= 2");
}

Eigen::VectorXd eigenvalues(const DenseMatrix& h) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      h.data.data(), static_cast<Eigen::Index>(h.dim), static_cast<Eigen::Index>(h.dim));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConsistencyError("eigendecomposition failed");
  return solver.eigenvalues();
}

/// Gibbs mean and variance of the spectrum at time t, shifted by the
/// smallest eigenvalue for stability.
std::pair<double, double> gibbs_moments(const std::vector<double>& lambda, double t) {
  const double lo = lambda.front();
  double z = 0.0;
  double m1 = 0.0;
  for (double l : lambda) {
    const double w = std::exp(-t * (l - lo));
    z += w;
    m1 += w * (l - lo);
  }
  m1 /= z;
  double var = 0.0;
  for (double l : lambda) {
    const double w = std::exp(-t * (l - lo));
    var += w * (l - lo - m1) * (l - lo - m1);
  }
  return {m1 + lo, var / z};
}

}  // namespace

double single_edge_Z(double theta, double t, double u) {
  check_single_edge(theta, t, u);
  return theta * (theta - 1.0) / 2.0 * std::exp(-(1.0 + u) * t) +
         (theta * (theta + 1.0) / 2.0 - 1.0) * std::exp(-(1.0 - u) * t) +
         std::exp((1.0 - u) * (theta - 1.0) * t);
}

double single_edge_dlogZ(double theta, double t, double u) {
  check_single_edge(theta, t, u);
  const double d = -(1.0 + u) * theta * (theta - 1.0) / 2.0 * std::exp(-(1.0 + u) * t) -
                   (1.0 - u) * (theta * (theta + 1.0) / 2.0 - 1.0) * std::exp(-(1.0 - u) * t) +
                   (1.0 - u) * (theta - 1.0) * std::exp((1.0 - u) * (theta - 1.0) * t);
  return d / single_edge_Z(theta, t, u);
}

std::size_t oracle_dimension(std::size_t n, std::size_t theta, std::size_t cap) {
  std::size_t dim = 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (dim > cap / theta) {
      throw BudgetExceeded("theta^n exceeds the oracle dimension cap " + std::to_string(cap));
    }
    dim *= theta;
  }
  return dim;
}

DenseMatrix edge_operator(std::size_t n, std::size_t theta, Vertex x, Vertex y, MarkKind kind,
                          std::size_t cap) {
  check_theta(theta);
  if (x >= n || y >= n || x == y) throw InvalidArgument("edge endpoints out of range");
  DenseMatrix m{oracle_dimension(n, theta, cap), {}};
  m.data.assign(m.dim * m.dim, 0.0);
  const Digits d(n, theta);
  std::vector<double> in(m.dim, 0.0);
  std::vector<double> out(m.dim);
  for (std::size_t j = 0; j < m.dim; ++j) {
    in[j] = 1.0;
    std::fill(out.begin(), out.end(), 0.0);
    apply(d, theta, x, y, kind, in, out, 1.0);
    for (std::size_t i = 0; i < m.dim; ++i) m(i, j) = out[i];
    in[j] = 0.0;
  }
  return m;
}

DenseMatrix hamiltonian(const Graph& g, std::size_t theta, double u, std::size_t cap) {
  check_theta(theta);
  check_u(u);
  const std::size_t n = g.num_vertices();
  DenseMatrix h{oracle_dimension(n, theta, cap), {}};
  h.data.assign(h.dim * h.dim, 0.0);
  const Digits d(n, theta);
  std::vector<double> in(h.dim, 0.0);
  std::vector<double> out(h.dim);
  const double edges = static_cast<double>(g.num_edges());
  for (std::size_t j = 0; j < h.dim; ++j) {
    in[j] = 1.0;
    std::fill(out.begin(), out.end(), 0.0);
    out[j] = edges;
    for (const Edge& e : g.edges()) {
      apply(d, theta, e.x, e.y, MarkKind::Cross, in, out, -u);
      apply(d, theta, e.x, e.y, MarkKind::Bar, in, out, -(1.0 - u));
    }
    for (std::size_t i = 0; i < h.dim; ++i) h(i, j) = out[i];
    in[j] = 0.0;
  }
  return h;
}

std::vector<double> spectrum(const Graph& g, std::size_t theta, double u, std::size_t cap) {
  const Eigen::VectorXd ev = eigenvalues(hamiltonian(g, theta, u, cap));
  return {ev.data(), ev.data() + ev.size()};
}

double exact_Z_trace(const Graph& g, std::size_t theta, double t, double u, std::size_t cap) {
  if (!(t >= 0.0)) throw InvalidArgument("t must be nonnegative");
  double z = 0.0;
  for (double l : spectrum(g, theta, u, cap)) z += std::exp(-t * l);
  return z;
}

std::vector<double> exact_dlogZ(const Graph& g, std::size_t theta, double u,
                                std::span<const double> t_grid, std::size_t cap) {
  const auto lambda = spectrum(g, theta, u, cap);
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t >= 0.0)) throw InvalidArgument("t must be nonnegative");
    out.push_back(-gibbs_moments(lambda, t).first);
  }
  return out;
}

std::vector<double> logZ_curvature(const Graph& g, std::size_t theta, double u,
                                   std::span<const double> t_grid, std::size_t cap) {
  const auto lambda = spectrum(g, theta, u, cap);
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t >= 0.0)) throw InvalidArgument("t must be nonnegative");
    out.push_back(gibbs_moments(lambda, t).second);
  }
  return out;
}

std::vector<OracleRow> oracle_table(const Graph& g, std::size_t theta, double u,
                                    std::span<const double> t_grid, std::size_t cap) {
  const auto lambda = spectrum(g, theta, u, cap);
  std::vector<OracleRow> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t >= 0.0)) throw InvalidArgument("t must be nonnegative");
    double z = 0.0;
    for (double l : lambda) z += std::exp(-t * l);
    const auto [mean, var] = gibbs_moments(lambda, t);
    out.push_back({t, z, -mean, var});
  }
  return out;
}

double word_trace(const Graph& g, std::size_t theta, const MarkConfig& marks, std::size_t cap) {
  check_theta(theta);
  if (marks.num_edges() != g.num_edges()) throw InvalidArgument("marks do not match the graph");
  const std::size_t n = g.num_vertices();
  const std::size_t dim = oracle_dimension(n, theta, cap);
  const Digits d(n, theta);
  std::vector<double> a(dim);
  std::vector<double> b(dim);
  double trace = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    std::fill(a.begin(), a.end(), 0.0);
    a[k] = 1.0;
    for (const Mark& m : marks.marks()) {
      std::fill(b.begin(), b.end(), 0.0);
      const Edge e = g.edge(m.edge);
      apply(d, theta, e.x, e.y, m.kind, a, b, 1.0);
      a.swap(b);
    }
    trace += a[k];
  }
  return trace;
}

}  // namespace rlm
