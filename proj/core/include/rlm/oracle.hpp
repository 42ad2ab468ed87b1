#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rlm/graph.hpp"
#include "rlm/marks.hpp"

namespace rlm {

/// Closed-form Z on the one-edge graph, valid for every theta > 0:
///   theta(theta-1)/2 e^{-(1+u)t} + (theta(theta+1)/2 - 1) e^{-(1-u)t}
///   + e^{(1-u)(theta-1)t}.
double single_edge_Z(double theta, double t, double u);

/// d/dt log single_edge_Z.
double single_edge_dlogZ(double theta, double t, double u);

/// Row-major square matrix on the theta^n product space. Basis state k
/// assigns colour (k / theta^v) % theta to vertex v.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<double> data;

  double operator()(std::size_t i, std::size_t j) const { return data[i * dim + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * dim + j]; }
};

/// Default ceiling on theta^n for operator builds.
inline constexpr std::size_t kOracleDimensionCap = 4096;

/// theta^n, throwing BudgetExceeded above `cap`.
std::size_t oracle_dimension(std::size_t n, std::size_t theta, std::size_t cap = kOracleDimensionCap);

/// Two-site operator on edge {x, y}: the transposition T for a cross,
/// <c,d|Q|a,b> = delta_ab delta_cd for a bar.
DenseMatrix edge_operator(std::size_t n, std::size_t theta, Vertex x, Vertex y, MarkKind kind,
                          std::size_t cap = kOracleDimensionCap);

/// H = sum_e (Id - u T_e - (1-u) Q_e).
DenseMatrix hamiltonian(const Graph& g, std::size_t theta, double u,
                        std::size_t cap = kOracleDimensionCap);

/// Eigenvalues of H, ascending.
std::vector<double> spectrum(const Graph& g, std::size_t theta, double u,
                             std::size_t cap = kOracleDimensionCap);

/// Tr e^{-tH}. Requires integer theta >= 2.
double exact_Z_trace(const Graph& g, std::size_t theta, double t, double u,
                     std::size_t cap = kOracleDimensionCap);

/// d/dt log Z = -<lambda>_t under Gibbs weights p_j proportional to e^{-t lambda_j}.
std::vector<double> exact_dlogZ(const Graph& g, std::size_t theta, double u,
                                std::span<const double> t_grid,
                                std::size_t cap = kOracleDimensionCap);

/// d^2/dt^2 log Z at each grid time, as the Gibbs variance of the spectrum.
std::vector<double> logZ_curvature(const Graph& g, std::size_t theta, double u,
                                   std::span<const double> t_grid,
                                   std::size_t cap = kOracleDimensionCap);

struct OracleRow {
  double t = 0.0;
  double Z = 0.0;
  double dlogZ = 0.0;
  double curvature = 0.0;
};

/// Z, d/dt log Z and d^2/dt^2 log Z at each grid time from one eigendecomposition.
std::vector<OracleRow> oracle_table(const Graph& g, std::size_t theta, double u,
                                    std::span<const double> t_grid,
                                    std::size_t cap = kOracleDimensionCap);

/// Trace of the product of edge operators for the marks of `marks`, taken in
/// time order (T for a cross, Q for a bar). Equals theta^lambda of the
/// configuration.
double word_trace(const Graph& g, std::size_t theta, const MarkConfig& marks,
                  std::size_t cap = kOracleDimensionCap);

}  // namespace rlm
