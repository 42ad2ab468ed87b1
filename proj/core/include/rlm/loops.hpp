#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rlm/graph.hpp"
#include "rlm/marks.hpp"

namespace rlm {

using LoopId = std::uint32_t;
using StrandId = std::uint32_t;

/// Open interval of S^1 covered by a strand. `end` exceeds 1 when the strand
/// wraps through time 0; a vertex without marks has the single strand [0, 1).
struct StrandInterval {
  double begin = 0.0;
  double end = 1.0;

  double length() const { return end - begin; }
  bool contains(double s) const {
    return (s > begin && s < end) || (s + 1.0 > begin && s + 1.0 < end);
  }
};

/// Loop decomposition of G x S^1 for one mark configuration.
///
/// The vertical line above each vertex is cut at the times of its incident
/// marks into strands. Each loop visits its strands once, in a cyclic order
/// with a fixed reference direction; `orientation(strand)` records whether that
/// direction runs up (+1) or down (-1) the strand. The two directed
/// trajectories of loop g are 2g (the reference direction) and 2g+1 (its time
/// reversal), so every unoriented loop is exactly one reversal pair.
class LoopSet {
 public:
  std::size_t num_vertices() const { return event_offsets_.size() - 1; }
  /// lambda(omega).
  std::size_t num_loops() const { return support_offsets_.size() - 1; }
  std::size_t num_strands() const { return strand_vertex_.size(); }

  std::size_t strand_count(Vertex v) const {
    return strand_offsets_[v + 1] - strand_offsets_[v];
  }
  StrandId strand(Vertex v, std::size_t local) const {
    return static_cast<StrandId>(strand_offsets_[v] + local);
  }
  Vertex strand_vertex(StrandId s) const { return strand_vertex_[s]; }
  StrandInterval strand_interval(StrandId s) const;

  /// Strand of v covering time s. Throws InvalidArgument if a mark incident
  /// to v sits at s.
  StrandId strand_at(Vertex v, double s) const;

  LoopId loop_of(StrandId s) const { return strand_loop_[s]; }
  int orientation(StrandId s) const { return strand_sign_[s]; }

  /// Directed trajectory carrying the pass through strand s in vertical
  /// direction `direction` (+1 up, -1 down).
  std::size_t directed_trajectory(StrandId s, int direction) const {
    return 2 * static_cast<std::size_t>(strand_loop_[s]) +
           (direction * strand_sign_[s] > 0 ? 0 : 1);
  }

  /// supp_V of a loop, sorted.
  std::span<const Vertex> support(LoopId g) const {
    return {support_.data() + support_offsets_[g], support_.data() + support_offsets_[g + 1]};
  }

  /// Local event times at v (incident mark times), increasing.
  std::span<const double> event_times(Vertex v) const {
    return {event_times_.data() + event_offsets_[v], event_times_.data() + event_offsets_[v + 1]};
  }

 private:
  friend LoopSet trace_loops(const Graph& g, const MarkConfig& marks);

  std::vector<std::size_t> event_offsets_{0};
  std::vector<double> event_times_;
  std::vector<std::size_t> strand_offsets_{0};
  std::vector<Vertex> strand_vertex_;
  std::vector<LoopId> strand_loop_;
  std::vector<std::int8_t> strand_sign_;
  std::vector<std::size_t> support_offsets_{0};
  std::vector<Vertex> support_;
};

/// Exact loop decomposition. Each mark on {x, y} at time s joins the four
/// strand ends meeting there: a bar pairs the two ends below s with each other
/// and the two above with each other; a cross pairs below-x with above-y and
/// above-x with below-y. Following these joins from strand to strand yields
/// the loops. Throws ConsistencyError if some strand end is not joined exactly
/// once or a loop revisits a strand (neither can happen for valid input).
LoopSet trace_loops(const Graph& g, const MarkConfig& marks);

/// S_gamma(s): vertices whose strand at time s lies on loop `loop`.
/// Throws InvalidArgument if s carries a mark or the loop id is invalid.
std::vector<Vertex> slice_set(const LoopSet& loops, const MarkConfig& marks, LoopId loop,
                              double s);

/// supp_V(gamma) as an owned, sorted vector.
std::vector<Vertex> vertex_support(const LoopSet& loops, LoopId loop);

}  // namespace rlm
