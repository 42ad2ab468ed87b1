#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rlm/graph.hpp"

namespace rlm {

/// Small-set sparsity: every S with |S| <= eta*n spans at most (1+eps)|S| edges.
enum class SparsityMode {
  /// Enumerates every connected vertex set up to the size cap. Certifies.
  Exhaustive,
  /// Randomized greedy densification. Can find violators, never certifies.
  Heuristic,
};

struct SparsityWitness {
  std::vector<Vertex> vertices;  // sorted
  std::size_t induced_edges = 0;
};

struct SparsityOptions {
  double eta = 0.1;
  double eps = 1.0;
  SparsityMode mode = SparsityMode::Exhaustive;
  /// Largest |S| examined; 0 selects floor(eta*n). Must not exceed floor(eta*n).
  std::size_t size_cap = 0;
  /// Exhaustive: search-tree nodes. Heuristic: restarts times size_cap.
  std::uint64_t budget = 200'000'000;
  std::uint64_t seed = 0;
};

struct SparsityVerdict {
  bool holds = true;
  std::optional<SparsityWitness> witness;
  SparsityMode mode = SparsityMode::Exhaustive;
  std::size_t size_cap = 0;
  double eta = 0.0;
  double eps = 0.0;
  /// Search nodes (exhaustive) or greedy growth steps (heuristic) spent.
  std::uint64_t work = 0;

  /// True when the verdict proves the condition up to size_cap.
  bool certifies() const { return holds && mode == SparsityMode::Exhaustive; }
};

/// e > (1+eps)*size, with a 1e-9 absolute guard so that products such as
/// 1.3*10 that round just below an integer are not misread as violations.
bool violates_sparsity(std::size_t induced_edges, std::size_t size, double eps);

/// floor(eta * n), robust to eta*n landing a rounding error below an integer.
std::size_t sparsity_scale(double eta, std::size_t n);

/// Decides the condition for sizes 1..size_cap.
///
/// Exhaustive mode only looks at connected sets: e(S) and |S| add over the
/// connected components of S, so if no component violates then S does not
/// either, and a smallest violator is always connected. Sets are grown from
/// their smallest vertex (the anchor) with the exclusive-neighbourhood rule,
/// which visits every connected set exactly once. Sizes are handled in
/// increasing order; when size L is searched every smaller size is already
/// known to satisfy the condition, which bounds the edges the not-yet-added
/// part of a set can carry and drives the branch pruning. A reported witness is
/// therefore a violator of minimum size.
///
/// Throws BudgetExceeded when the exhaustive search outgrows `budget` and
/// InvalidArgument for eta outside (0, 1], eps <= 0, or an oversized cap.
SparsityVerdict sparsity_check(const Graph& g, const SparsityOptions& options);

struct CertifiedScale {
  /// Largest L <= cap_limit such that no set of size <= L violates.
  std::size_t size_cap = 0;
  /// Smallest violator, when one was found within cap_limit.
  std::optional<SparsityWitness> violator;
  std::uint64_t work = 0;
};

/// Exhaustive search for the largest scale at which the condition holds with
/// the given eps. Same algorithm and budget semantics as sparsity_check.
CertifiedScale largest_certified_size(const Graph& g, double eps, std::size_t cap_limit,
                                      std::uint64_t budget = 200'000'000);

}  // namespace rlm
