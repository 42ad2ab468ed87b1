#include "rlm/loops.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "rlm/error.hpp"

namespace rlm {

namespace {

constexpr std::size_t kUnjoined = std::numeric_limits<std::size_t>::max();

// Strand ends: 2*s is the bottom end, 2*s+1 the top end.
std::size_t bottom_end(std::size_t s) { return 2 * s; }
std::size_t top_end(std::size_t s) { return 2 * s + 1; }

}  // namespace

StrandInterval LoopSet::strand_interval(StrandId s) const {
  const Vertex v = strand_vertex_[s];
  const auto times = event_times(v);
  if (times.empty()) return {0.0, 1.0};
  const std::size_t local = s - strand_offsets_[v];
  const std::size_t k = times.size();
  if (local + 1 < k) return {times[local], times[local + 1]};
  return {times[k - 1], times[0] + 1.0};
}

StrandId LoopSet::strand_at(Vertex v, double s) const {
  const auto times = event_times(v);
  if (times.empty()) return strand(v, 0);
  auto it = std::upper_bound(times.begin(), times.end(), s);
  if (it != times.begin() && *(it - 1) == s) {
    throw InvalidArgument("time " + std::to_string(s) + " carries a mark at vertex " +
                          std::to_string(v));
  }
  const std::size_t idx = static_cast<std::size_t>(it - times.begin());
  return strand(v, idx == 0 ? times.size() - 1 : idx - 1);
}

LoopSet trace_loops(const Graph& g, const MarkConfig& marks) {
  if (marks.num_edges() != g.num_edges()) {
    throw InvalidArgument("mark configuration and graph disagree on the edge count");
  }
  const std::size_t n = g.num_vertices();
  const auto all = marks.marks();
  LoopSet out;

  // Incident mark times per vertex; the global time order makes each list sorted.
  out.event_offsets_.assign(n + 1, 0);
  for (const Mark& m : all) {
    const Edge& e = g.edge(m.edge);
    ++out.event_offsets_[e.x + 1];
    ++out.event_offsets_[e.y + 1];
  }
  for (std::size_t v = 0; v < n; ++v) out.event_offsets_[v + 1] += out.event_offsets_[v];
  out.event_times_.resize(out.event_offsets_[n]);
  std::vector<std::size_t> fill(out.event_offsets_.begin(), out.event_offsets_.end() - 1);
  std::vector<std::size_t> local_x(all.size());
  std::vector<std::size_t> local_y(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Edge& e = g.edge(all[i].edge);
    local_x[i] = fill[e.x] - out.event_offsets_[e.x];
    local_y[i] = fill[e.y] - out.event_offsets_[e.y];
    out.event_times_[fill[e.x]++] = all[i].time;
    out.event_times_[fill[e.y]++] = all[i].time;
  }

  out.strand_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t k = out.event_offsets_[v + 1] - out.event_offsets_[v];
    out.strand_offsets_[v + 1] = out.strand_offsets_[v] + std::max<std::size_t>(1, k);
  }
  const std::size_t num_strands = out.strand_offsets_[n];
  out.strand_vertex_.resize(num_strands);
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t s = out.strand_offsets_[v]; s < out.strand_offsets_[v + 1]; ++s)
      out.strand_vertex_[s] = v;

  std::vector<std::size_t> partner(2 * num_strands, kUnjoined);
  auto join = [&](std::size_t a, std::size_t b) {
    if (partner[a] != kUnjoined || partner[b] != kUnjoined) {
      throw ConsistencyError("strand end joined twice while tracing loops");
    }
    partner[a] = b;
    partner[b] = a;
  };
  for (Vertex v = 0; v < n; ++v) {
    if (out.event_offsets_[v + 1] == out.event_offsets_[v]) {
      const std::size_t s = out.strand_offsets_[v];
      join(bottom_end(s), top_end(s));
    }
  }
  auto below = [&](Vertex v, std::size_t local) {
    const std::size_t k = out.event_offsets_[v + 1] - out.event_offsets_[v];
    return top_end(out.strand_offsets_[v] + (local + k - 1) % k);
  };
  auto above = [&](Vertex v, std::size_t local) {
    return bottom_end(out.strand_offsets_[v] + local);
  };
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Edge& e = g.edge(all[i].edge);
    if (all[i].kind == MarkKind::Bar) {
      join(below(e.x, local_x[i]), below(e.y, local_y[i]));
      join(above(e.x, local_x[i]), above(e.y, local_y[i]));
    } else {
      join(below(e.x, local_x[i]), above(e.y, local_y[i]));
      join(above(e.x, local_x[i]), below(e.y, local_y[i]));
    }
  }
  if (std::find(partner.begin(), partner.end(), kUnjoined) != partner.end()) {
    throw ConsistencyError("strand end left unjoined while tracing loops");
  }

  // Walk each loop once in the direction that climbs its first strand.
  constexpr LoopId kNone = std::numeric_limits<LoopId>::max();
  out.strand_loop_.assign(num_strands, kNone);
  out.strand_sign_.assign(num_strands, 0);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> touched;
  LoopId loop = 0;
  for (std::size_t start = 0; start < num_strands; ++start) {
    if (out.strand_loop_[start] != kNone) continue;
    touched.clear();
    std::size_t s = start;
    int sign = +1;
    while (true) {
      if (out.strand_loop_[s] != kNone) {
        throw ConsistencyError("loop revisits strand " + std::to_string(s) +
                               "; a trajectory would equal its own reversal");
      }
      out.strand_loop_[s] = loop;
      out.strand_sign_[s] = static_cast<std::int8_t>(sign);
      const Vertex v = out.strand_vertex_[s];
      if (!seen[v]) {
        seen[v] = 1;
        touched.push_back(v);
      }
      const std::size_t exit = sign > 0 ? top_end(s) : bottom_end(s);
      const std::size_t entry = partner[exit];
      if (entry == bottom_end(start)) break;
      s = entry / 2;
      sign = (entry % 2 == 0) ? +1 : -1;
    }
    std::sort(touched.begin(), touched.end());
    for (Vertex v : touched) seen[v] = 0;
    out.support_.insert(out.support_.end(), touched.begin(), touched.end());
    out.support_offsets_.push_back(out.support_.size());
    ++loop;
  }
  return out;
}

std::vector<Vertex> slice_set(const LoopSet& loops, const MarkConfig& marks, LoopId loop,
                              double s) {
  if (loop >= loops.num_loops()) throw InvalidArgument("loop id out of range");
  if (marks.is_mark_time(s)) {
    throw InvalidArgument("slice requested at irregular time " + std::to_string(s));
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < loops.num_vertices(); ++v)
    if (loops.loop_of(loops.strand_at(v, s)) == loop) out.push_back(v);
  return out;
}

std::vector<Vertex> vertex_support(const LoopSet& loops, LoopId loop) {
  if (loop >= loops.num_loops()) throw InvalidArgument("loop id out of range");
  auto sp = loops.support(loop);
  return {sp.begin(), sp.end()};
}

}  // namespace rlm
