#include "rlm/observables.hpp"

#include <string>

#include "rlm/error.hpp"

namespace rlm {

std::vector<RegularInterval> regular_intervals(const MarkConfig& marks) {
  const auto all = marks.marks();
  if (all.empty()) return {RegularInterval{0.5, 1.0}};
  std::vector<RegularInterval> out;
  out.reserve(all.size());
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    const double a = all[i].time;
    const double b = all[i + 1].time;
    out.push_back({a + 0.5 * (b - a), b - a});
  }
  const double a = all.back().time;
  const double b = all.front().time + 1.0;
  double mid = a + 0.5 * (b - a);
  if (mid >= 1.0) mid -= 1.0;
  out.push_back({mid, b - a});
  return out;
}

namespace {

EdgeTimeClass compare(const LoopSet& loops, StrandId sx, StrandId sy) {
  if (loops.loop_of(sx) != loops.loop_of(sy)) return EdgeTimeClass::DifferentLoops;
  const bool up_up = loops.directed_trajectory(sx, +1) == loops.directed_trajectory(sy, +1);
  const bool up_down = loops.directed_trajectory(sx, +1) == loops.directed_trajectory(sy, -1);
  if (up_up == up_down) {
    throw ConsistencyError("same-loop pass is neither or both co- and counter-oriented");
  }
  return up_up ? EdgeTimeClass::SameLoopSameOrientation
               : EdgeTimeClass::SameLoopOppositeOrientation;
}

}  // namespace

EdgeTimeClass classify(const Graph& g, const MarkConfig& marks, const LoopSet& loops, EdgeId e,
                       double s) {
  if (e >= g.num_edges()) throw InvalidArgument("edge id out of range");
  if (marks.is_mark_time(s)) {
    throw InvalidArgument("classification requested at irregular time " + std::to_string(s));
  }
  const Edge& edge = g.edge(e);
  return compare(loops, loops.strand_at(edge.x, s), loops.strand_at(edge.y, s));
}

InsertionVolumes insertion_volumes(const Graph& g, const MarkConfig& marks,
                                   const LoopSet& loops) {
  InsertionVolumes out;
  const auto all = marks.marks();
  const std::size_t n = g.num_vertices();
  // Sweep upward from the wrap interval, advancing the current strand of the
  // two endpoints of each mark as it is passed.
  std::vector<std::size_t> current(n);
  for (Vertex v = 0; v < n; ++v) current[v] = loops.strand_count(v) - 1;
  const auto intervals = regular_intervals(marks);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    // intervals[i] lies just above mark i; the last one wraps.
    if (!all.empty()) {
      const Edge& e = g.edge(all[i].edge);
      current[e.x] = (current[e.x] + 1) % loops.strand_count(e.x);
      current[e.y] = (current[e.y] + 1) % loops.strand_count(e.y);
    }
    double plus = 0.0;
    double minus = 0.0;
    for (const Edge& e : g.edges()) {
      switch (compare(loops, loops.strand(e.x, current[e.x]), loops.strand(e.y, current[e.y]))) {
        case EdgeTimeClass::SameLoopSameOrientation: plus += 1.0; break;
        case EdgeTimeClass::SameLoopOppositeOrientation: minus += 1.0; break;
        case EdgeTimeClass::DifferentLoops: break;
      }
    }
    out.j_plus += plus * intervals[i].length;
    out.j_minus += minus * intervals[i].length;
  }
  return out;
}

namespace {

/// Vertices of each loop's slice at s, indexed by loop id.
std::vector<std::vector<Vertex>> slices_at(const LoopSet& loops, double s) {
  std::vector<std::vector<Vertex>> slices(loops.num_loops());
  for (Vertex v = 0; v < loops.num_vertices(); ++v)
    slices[loops.loop_of(loops.strand_at(v, s))].push_back(v);
  return slices;
}

}  // namespace

bool pointwise_slice_check(const Graph& g, const MarkConfig& marks, const LoopSet& loops,
                           double s) {
  if (marks.is_mark_time(s)) {
    throw InvalidArgument("slice check requested at irregular time " + std::to_string(s));
  }
  std::size_t same = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const bool same_loop =
        loops.loop_of(loops.strand_at(edge.x, s)) == loops.loop_of(loops.strand_at(edge.y, s));
    const EdgeTimeClass c = classify(g, marks, loops, e, s);
    const bool split = c != EdgeTimeClass::DifferentLoops;
    if (same_loop != split) return false;
    same += same_loop ? 1 : 0;
  }
  std::size_t induced = 0;
  std::size_t covered = 0;
  for (const auto& slice : slices_at(loops, s)) {
    induced += induced_edge_count(g, slice);
    covered += slice.size();
  }
  return covered == g.num_vertices() && same == induced;
}

double integrated_slice_value(const Graph& g, const MarkConfig& marks, const LoopSet& loops) {
  double total = 0.0;
  for (const RegularInterval& iv : regular_intervals(marks)) {
    std::size_t induced = 0;
    for (const auto& slice : slices_at(loops, iv.midpoint)) induced += induced_edge_count(g, slice);
    total += static_cast<double>(induced) * iv.length;
  }
  return total;
}

MacroscopicEvent macroscopic_event(const LoopSet& loops, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in (0, 1]");
  MacroscopicEvent out;
  const std::size_t n = loops.num_vertices();
  if (n == 0) return out;
  std::size_t largest = 0;
  for (LoopId g = 0; g < loops.num_loops(); ++g) largest = std::max(largest, loops.support(g).size());
  out.max_support_fraction = static_cast<double>(largest) / static_cast<double>(n);
  out.occurred = static_cast<double>(largest) > eta * static_cast<double>(n);
  return out;
}

bool slice_bound_check(const Graph& g, const MarkConfig& marks, const LoopSet& loops, double eta,
                       double eps, const SparsityVerdict& sparsity) {
  if (!sparsity.certifies()) {
    throw InvalidArgument("slice bound needs an exhaustive sparsity certificate that holds");
  }
  if (sparsity.eps > eps || sparsity.size_cap < sparsity_scale(eta, g.num_vertices())) {
    throw InvalidArgument("sparsity certificate does not cover (eta, eps)");
  }
  if (macroscopic_event(loops, eta).occurred) return true;
  const InsertionVolumes v = insertion_volumes(g, marks, loops);
  return v.total() <= (1.0 + eps) * static_cast<double>(g.num_vertices()) + 1e-9;
}

double drift_integrand(double theta, double u, const InsertionVolumes& volumes,
                       std::size_t edge_count) {
  return (1.0 + theta * u) * volumes.j_plus + (1.0 + theta * (1.0 - u)) * volumes.j_minus -
         static_cast<double>(edge_count);
}

}  // namespace rlm
