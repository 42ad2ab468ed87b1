#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rlm/graph.hpp"
#include "rlm/random.hpp"

namespace rlm {

/// Cross keeps the vertical direction of a trajectory jumping across the
/// edge; bar reverses it.
enum class MarkKind : std::uint8_t { Cross, Bar };

struct Mark {
  EdgeId edge = 0;
  double time = 0.0;  // in [0, 1)
  MarkKind kind = MarkKind::Cross;

  friend bool operator==(const Mark&, const Mark&) = default;
};

/// Finite marked point configuration on E x S^1, S^1 = [0, 1).
///
/// Marks are held in increasing time order, and all times are pairwise
/// distinct across edges, so the per-edge sequences are strictly increasing
/// and the global order is the sorted set T(omega) of irregular times.
class MarkConfig {
 public:
  MarkConfig() = default;
  explicit MarkConfig(std::size_t num_edges) : num_edges_(num_edges) {}

  /// Validates and sorts. Throws InvalidArgument for edge ids >= num_edges,
  /// times outside [0, 1), or repeated times.
  MarkConfig(std::size_t num_edges, std::vector<Mark> marks);

  std::size_t num_edges() const { return num_edges_; }
  std::size_t size() const { return marks_.size(); }
  bool empty() const { return marks_.empty(); }

  /// All marks in increasing time order.
  std::span<const Mark> marks() const { return marks_; }
  const Mark& operator[](std::size_t i) const { return marks_[i]; }

  /// Marks of one edge, increasing in time.
  std::vector<Mark> on_edge(EdgeId e) const;

  /// Whether some mark sits exactly at time s.
  bool is_mark_time(double s) const;

  /// Copy with one more mark. Throws InvalidArgument if the time is taken.
  MarkConfig with_mark(const Mark& m) const;
  /// Copy without the mark at position `index` of marks().
  MarkConfig without_mark(std::size_t index) const;
  /// Copy with the mark at `index` replaced by `m` (time and kind may change).
  MarkConfig with_replaced(std::size_t index, const Mark& m) const;

  friend bool operator==(const MarkConfig&, const MarkConfig&) = default;

 private:
  std::size_t num_edges_ = 0;
  std::vector<Mark> marks_;
};

/// Independent Poisson(t) mark counts per edge, uniform times, Cross with
/// probability u. Coinciding times are redrawn until all are distinct.
/// Throws InvalidArgument for t < 0 or u outside [0, 1].
MarkConfig sample_marks(const Graph& g, double t, double u, Rng& rng);
MarkConfig sample_marks(const Graph& g, double t, double u, std::uint64_t seed);

/// Independent thinning: keeps each mark with probability keep. If `marks`
/// has intensity t, the result has intensity keep*t, and the pair is the
/// standard monotone coupling used for common-random-number differences.
MarkConfig thin_marks(const MarkConfig& marks, double keep, Rng& rng);

/// Uniform time in [0, 1) that carries no mark.
double sample_regular_time(const MarkConfig& marks, Rng& rng);

}  // namespace rlm
