#pragma once

#include <cstddef>
#include <vector>

#include "rlm/graph.hpp"
#include "rlm/loops.hpp"
#include "rlm/marks.hpp"
#include "rlm/sparsity.hpp"

namespace rlm {

/// Relation of the two endpoints of an edge at a regular time.
enum class EdgeTimeClass {
  DifferentLoops,               // I_neq = 1
  SameLoopSameOrientation,      // I_+ = 1
  SameLoopOppositeOrientation,  // I_- = 1
};

/// J_+ and J_-: time integrals of I_+ and I_-, summed over edges.
struct InsertionVolumes {
  double j_plus = 0.0;
  double j_minus = 0.0;

  double total() const { return j_plus + j_minus; }
};

/// One interval between consecutive mark times, cyclically on S^1. With no
/// marks there is a single interval of length 1.
struct RegularInterval {
  double midpoint = 0.5;  // in [0, 1)
  double length = 1.0;
};

/// The |T(omega)| intervals of S^1 \ T(omega) (one if there are no marks).
/// Loop structure is constant on each, so integrals over S^1 are sums over these.
std::vector<RegularInterval> regular_intervals(const MarkConfig& marks);

/// Compares the directed trajectories through (x, s, +1) and (y, s, +1).
/// Throws InvalidArgument if s carries a mark.
EdgeTimeClass classify(const Graph& g, const MarkConfig& marks, const LoopSet& loops, EdgeId e,
                       double s);

/// Exact J_+ and J_- by classifying every edge at every interval midpoint.
InsertionVolumes insertion_volumes(const Graph& g, const MarkConfig& marks,
                                   const LoopSet& loops);

/// Checks, at regular time s, that sum_e I_same(e, s) equals
/// sum_gamma e_G(S_gamma(s)) as integers, that I_same = I_+ + I_- per edge,
/// and that the slices partition V.
bool pointwise_slice_check(const Graph& g, const MarkConfig& marks, const LoopSet& loops,
                           double s);

/// Integral over S^1 of sum_gamma e_G(S_gamma(s)), from slice sets and
/// induced edge counts only (no orientation data).
double integrated_slice_value(const Graph& g, const MarkConfig& marks, const LoopSet& loops);

struct MacroscopicEvent {
  bool occurred = false;             // some |supp_V(gamma)| > eta*n
  double max_support_fraction = 0.0;  // max_gamma |supp_V(gamma)| / n
};

/// A_eta. Throws InvalidArgument unless 0 < eta <= 1.
MacroscopicEvent macroscopic_event(const LoopSet& loops, double eta);

/// If A_eta fails, checks J_+ + J_- <= (1+eps) n + 1e-9; vacuously true
/// otherwise. Requires `sparsity` to certify the condition with eps' <= eps
/// at scale >= floor(eta*n); throws InvalidArgument if it does not.
bool slice_bound_check(const Graph& g, const MarkConfig& marks, const LoopSet& loops, double eta,
                       double eps, const SparsityVerdict& sparsity);

/// (1 + theta u) J_+ + (1 + theta (1-u)) J_- - |E|.
double drift_integrand(double theta, double u, const InsertionVolumes& volumes,
                       std::size_t edge_count);

}  // namespace rlm
