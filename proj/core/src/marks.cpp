#include "rlm/marks.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "rlm/error.hpp"

namespace rlm {

namespace {

bool by_time(const Mark& a, const Mark& b) { return a.time < b.time; }

}  // namespace

MarkConfig::MarkConfig(std::size_t num_edges, std::vector<Mark> marks)
    : num_edges_(num_edges), marks_(std::move(marks)) {
  for (const Mark& m : marks_) {
    if (m.edge >= num_edges_) {
      throw InvalidArgument("mark on edge " + std::to_string(m.edge) + " but graph has " +
                            std::to_string(num_edges_) + " edges");
    }
    if (!(m.time >= 0.0 && m.time < 1.0)) {
      throw InvalidArgument("mark time " + std::to_string(m.time) + " outside [0, 1)");
    }
  }
  std::sort(marks_.begin(), marks_.end(), by_time);
  auto dup = std::adjacent_find(marks_.begin(), marks_.end(),
                                [](const Mark& a, const Mark& b) { return a.time == b.time; });
  if (dup != marks_.end()) {
    throw InvalidArgument("two marks share the time " + std::to_string(dup->time));
  }
}

std::vector<Mark> MarkConfig::on_edge(EdgeId e) const {
  std::vector<Mark> out;
  for (const Mark& m : marks_)
    if (m.edge == e) out.push_back(m);
  return out;
}

bool MarkConfig::is_mark_time(double s) const {
  auto it = std::lower_bound(marks_.begin(), marks_.end(), Mark{0, s, MarkKind::Cross}, by_time);
  return it != marks_.end() && it->time == s;
}

MarkConfig MarkConfig::with_mark(const Mark& m) const {
  if (m.edge >= num_edges_) throw InvalidArgument("mark on an edge outside the graph");
  if (!(m.time >= 0.0 && m.time < 1.0)) throw InvalidArgument("mark time outside [0, 1)");
  auto it = std::lower_bound(marks_.begin(), marks_.end(), m, by_time);
  if (it != marks_.end() && it->time == m.time) {
    throw InvalidArgument("time " + std::to_string(m.time) + " already carries a mark");
  }
  MarkConfig out(num_edges_);
  out.marks_.reserve(marks_.size() + 1);
  out.marks_.insert(out.marks_.end(), marks_.begin(), it);
  out.marks_.push_back(m);
  out.marks_.insert(out.marks_.end(), it, marks_.end());
  return out;
}

MarkConfig MarkConfig::without_mark(std::size_t index) const {
  if (index >= marks_.size()) throw InvalidArgument("mark index out of range");
  MarkConfig out(num_edges_);
  out.marks_.reserve(marks_.size() - 1);
  out.marks_.insert(out.marks_.end(), marks_.begin(),
                    marks_.begin() + static_cast<std::ptrdiff_t>(index));
  out.marks_.insert(out.marks_.end(), marks_.begin() + static_cast<std::ptrdiff_t>(index) + 1,
                    marks_.end());
  return out;
}

MarkConfig MarkConfig::with_replaced(std::size_t index, const Mark& m) const {
  return without_mark(index).with_mark(m);
}

MarkConfig sample_marks(const Graph& g, double t, double u, Rng& rng) {
  if (!(t >= 0.0)) throw InvalidArgument("intensity t must be nonnegative");
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("cross probability u must lie in [0, 1]");
  std::vector<Mark> marks;
  if (t > 0.0) {
    std::poisson_distribution<std::size_t> count(t);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const std::size_t k = count(rng);
      for (std::size_t i = 0; i < k; ++i) {
        const double s = uniform01(rng);
        const MarkKind kind = uniform01(rng) < u ? MarkKind::Cross : MarkKind::Bar;
        marks.push_back({e, s, kind});
      }
    }
  }
  std::sort(marks.begin(), marks.end(), by_time);
  for (std::size_t i = 1; i < marks.size();) {
    if (marks[i].time == marks[i - 1].time) {
      marks[i].time = uniform01(rng);
      std::sort(marks.begin(), marks.end(), by_time);
      i = 1;
    } else {
      ++i;
    }
  }
  return MarkConfig(g.num_edges(), std::move(marks));
}

MarkConfig sample_marks(const Graph& g, double t, double u, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_marks(g, t, u, rng);
}

MarkConfig thin_marks(const MarkConfig& marks, double keep, Rng& rng) {
  if (!(keep >= 0.0 && keep <= 1.0)) throw InvalidArgument("keep probability outside [0, 1]");
  std::vector<Mark> kept;
  kept.reserve(marks.size());
  for (const Mark& m : marks.marks())
    if (uniform01(rng) < keep) kept.push_back(m);
  return MarkConfig(marks.num_edges(), std::move(kept));
}

double sample_regular_time(const MarkConfig& marks, Rng& rng) {
  while (true) {
    const double s = uniform01(rng);
    if (!marks.is_mark_time(s)) return s;
  }
}

}  // namespace rlm
