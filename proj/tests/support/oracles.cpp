#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rlm::ref {

std::optional<std::size_t> brute_force_min_violator(const Graph& g, std::size_t cap, double eps) {
  const std::size_t n = g.num_vertices();
  if (n > 20) throw std::invalid_argument("brute force needs n <= 20");
  std::vector<std::uint32_t> nbr(n, 0);
  for (const Edge& e : g.edges()) {
    nbr[e.x] |= 1u << e.y;
    nbr[e.y] |= 1u << e.x;
  }
  std::optional<std::size_t> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k > cap || (best && k >= *best)) continue;
    std::size_t twice = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1u) twice += static_cast<std::size_t>(std::popcount(nbr[v] & mask));
    const double edges = static_cast<double>(twice / 2);
    if (edges > (1.0 + eps) * static_cast<double>(k) + 1e-9) best = k;
  }
  return best;
}

PassTracer::PassTracer(const Graph& g, const MarkConfig& marks) : g_(g) {
  for (const Mark& m : marks.marks()) times_.push_back(m.time);
  const std::size_t nm = times_.size();
  k_ = std::max<std::size_t>(1, nm);
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> next(2 * n * k_);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < k_; ++i) {
      if (nm == 0) {
        next[state(v, i, true)] = state(v, i, true);
        next[state(v, i, false)] = state(v, i, false);
        continue;
      }
      // Upward: hits mark j = i+1 at the top of interval i.
      {
        const std::size_t j = (i + 1) % nm;
        const Edge e = g.edge(marks[j].edge);
        if (e.x == v || e.y == v) {
          const Vertex w = e.x == v ? e.y : e.x;
          next[state(v, i, true)] = marks[j].kind == MarkKind::Cross ? state(w, j, true)
                                                                     : state(w, i, false);
        } else {
          next[state(v, i, true)] = state(v, j, true);
        }
      }
      // Downward: hits mark i at the bottom of interval i.
      {
        const std::size_t j = i;
        const std::size_t below = (i + nm - 1) % nm;
        const Edge e = g.edge(marks[j].edge);
        if (e.x == v || e.y == v) {
          const Vertex w = e.x == v ? e.y : e.x;
          next[state(v, i, false)] = marks[j].kind == MarkKind::Cross ? state(w, below, false)
                                                                      : state(w, i, true);
        } else {
          next[state(v, i, false)] = state(v, below, false);
        }
      }
    }
  }
  const std::size_t none = static_cast<std::size_t>(-1);
  cycle_.assign(next.size(), none);
  for (std::size_t s = 0; s < next.size(); ++s) {
    if (cycle_[s] != none) continue;
    for (std::size_t x = s; cycle_[x] == none; x = next[x]) cycle_[x] = num_cycles_;
    ++num_cycles_;
  }
  reverse_.assign(num_cycles_, none);
  for (std::size_t s = 0; s < next.size(); s += 2) {
    for (auto [a, b] : {std::pair{cycle_[s], cycle_[s + 1]}, std::pair{cycle_[s + 1], cycle_[s]}}) {
      if (reverse_[a] == none) reverse_[a] = b;
      if (reverse_[a] != b) reverse_[a] = none - 1;  // inconsistent; flagged below
    }
  }
}

bool PassTracer::reversal_pairs_ok() const {
  for (std::size_t c = 0; c < num_cycles_; ++c) {
    const std::size_t r = reverse_[c];
    if (r >= num_cycles_ || r == c || reverse_[r] != c) return false;
  }
  return num_cycles_ % 2 == 0;
}

std::size_t PassTracer::interval_of(double s) const {
  if (times_.empty()) return 0;
  const auto below = static_cast<std::size_t>(std::lower_bound(times_.begin(), times_.end(), s) -
                                              times_.begin());
  if (below < times_.size() && times_[below] == s) throw std::invalid_argument("irregular time");
  return (below + times_.size() - 1) % times_.size();
}

EdgeTimeClass PassTracer::classify(EdgeId e, double s) const {
  const std::size_t i = interval_of(s);
  const Edge ed = g_.edge(e);
  const std::size_t xu = cycle_[state(ed.x, i, true)];
  if (xu == cycle_[state(ed.y, i, true)]) return EdgeTimeClass::SameLoopSameOrientation;
  if (xu == cycle_[state(ed.y, i, false)]) return EdgeTimeClass::SameLoopOppositeOrientation;
  return EdgeTimeClass::DifferentLoops;
}

std::vector<std::vector<Vertex>> PassTracer::supports() const {
  std::map<std::size_t, std::set<Vertex>> by_loop;
  for (Vertex v = 0; v < g_.num_vertices(); ++v)
    for (std::size_t i = 0; i < k_; ++i)
      by_loop[loop_of_cycle(cycle_[state(v, i, true)])].insert(v);
  std::vector<std::vector<Vertex>> out;
  for (auto& [id, set] : by_loop) out.emplace_back(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Vertex>> PassTracer::slices(double s) const {
  const std::size_t i = interval_of(s);
  std::map<std::size_t, std::vector<Vertex>> by_loop;
  for (Vertex v = 0; v < g_.num_vertices(); ++v)
    by_loop[loop_of_cycle(cycle_[state(v, i, true)])].push_back(v);
  std::vector<std::vector<Vertex>> out;
  for (auto& [id, vs] : by_loop) out.push_back(vs);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> all_pairings(std::size_t half_edges) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  std::vector<std::pair<std::size_t, std::size_t>> current;
  std::vector<bool> used(half_edges, false);
  auto rec = [&](auto&& self) -> void {
    std::size_t first = 0;
    while (first < half_edges && used[first]) ++first;
    if (first == half_edges) {
      out.push_back(current);
      return;
    }
    used[first] = true;
    for (std::size_t j = first + 1; j < half_edges; ++j) {
      if (used[j]) continue;
      used[j] = true;
      current.emplace_back(first, j);
      self(self);
      current.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  rec(rec);
  return out;
}

double chi_square_p(const std::vector<double>& observed, const std::vector<double>& probs) {
  const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = total * probs[i];
    stat += (observed[i] - expected) * (observed[i] - expected) / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace rlm::ref
