#include "rlm/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "rlm/error.hpp"
#include "rlm/random.hpp"

namespace rlm {

namespace {

constexpr double kGuard = 1e-9;

/// Largest edge count a set of `size` vertices may carry without violating.
std::size_t allowed_edges(std::size_t size, double eps) {
  return static_cast<std::size_t>(std::floor((1.0 + eps) * static_cast<double>(size) + kGuard));
}

std::size_t choose2(std::size_t k) { return k * (k - 1) / 2; }

/// Connected-set search for violators of size exactly `level`, assuming all
/// smaller sizes are already certified.
class LevelSearch {
 public:
  LevelSearch(const Graph& g, double eps, std::uint64_t budget, std::uint64_t& work)
      : g_(g), eps_(eps), budget_(budget), work_(work), in_set_(g.num_vertices(), 0),
        links_(g.num_vertices(), 0) {}

  std::optional<SparsityWitness> run(std::size_t level) {
    level_ = level;
    need_ = allowed_edges(level, eps_) + 1;
    for (Vertex anchor = 0; anchor < g_.num_vertices(); ++anchor) {
      anchor_ = anchor;
      std::vector<Vertex> ext;
      for (Vertex w : g_.neighbors(anchor))
        if (w > anchor) ext.push_back(w);
      add(anchor);
      const bool found = extend(ext);
      remove(anchor);
      if (found) return witness_;
    }
    return std::nullopt;
  }

 private:
  void add(Vertex v) {
    edges_ += links_[v];
    in_set_[v] = 1;
    members_.push_back(v);
    for (Vertex w : g_.neighbors(v)) ++links_[w];
  }

  void remove(Vertex v) {
    for (Vertex w : g_.neighbors(v)) --links_[w];
    members_.pop_back();
    in_set_[v] = 0;
    edges_ -= links_[v];
  }

  /// Upper bound on e(T) over connected T of size level_ that extend the
  /// current set using vertices from `ext` or outside the set's neighbourhood.
  bool can_reach(const std::vector<Vertex>& ext) {
    const std::size_t j = level_ - members_.size();
    scratch_.clear();
    for (Vertex w : ext) scratch_.push_back(links_[w]);
    std::size_t boundary = 0;
    if (scratch_.size() > j) {
      std::nth_element(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(j),
                       scratch_.end(), std::greater<>());
      for (std::size_t i = 0; i < j; ++i) boundary += scratch_[i];
    } else {
      for (std::size_t c : scratch_) boundary += c;
    }
    // Edges among the j new vertices: bounded by the smaller scales already
    // certified, by the complete graph, and by the degree cap.
    const std::size_t inner = std::min({allowed_edges(j, eps_), choose2(j),
                                        g_.max_degree() * j / 2});
    return edges_ + boundary + inner >= need_;
  }

  bool extend(std::vector<Vertex>& ext) {
    if (++work_ > budget_) {
      throw BudgetExceeded("exhaustive sparsity search exceeded its budget of " +
                           std::to_string(budget_) + " nodes");
    }
    if (members_.size() == level_) {
      if (edges_ >= need_) {
        witness_.vertices = members_;
        std::sort(witness_.vertices.begin(), witness_.vertices.end());
        witness_.induced_edges = edges_;
        return true;
      }
      return false;
    }
    while (!ext.empty()) {
      if (!can_reach(ext)) return false;
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> child = ext;
      for (Vertex u : g_.neighbors(w)) {
        // Exclusive neighbours: not in the set and not adjacent to it yet.
        if (u > anchor_ && !in_set_[u] && links_[u] == 0) child.push_back(u);
      }
      add(w);
      const bool found = extend(child);
      remove(w);
      if (found) return true;
    }
    return false;
  }

  const Graph& g_;
  double eps_;
  std::uint64_t budget_;
  std::uint64_t& work_;
  std::vector<char> in_set_;
  std::vector<std::size_t> links_;  // neighbours inside the current set
  std::vector<Vertex> members_;
  std::vector<std::size_t> scratch_;
  std::size_t edges_ = 0;
  std::size_t level_ = 0;
  std::size_t need_ = 0;
  Vertex anchor_ = 0;
  SparsityWitness witness_;
};

/// Sizes at which no set can violate regardless of structure.
bool level_is_trivial(const Graph& g, std::size_t level, double eps) {
  const std::size_t most = std::min(choose2(level), g.max_degree() * level / 2);
  return most <= allowed_edges(level, eps);
}

CertifiedScale deepen(const Graph& g, double eps, std::size_t cap, std::uint64_t budget) {
  CertifiedScale out;
  LevelSearch search(g, eps, budget, out.work);
  for (std::size_t level = 1; level <= cap; ++level) {
    if (!level_is_trivial(g, level, eps)) {
      if (auto w = search.run(level)) {
        out.violator = std::move(w);
        return out;
      }
    }
    out.size_cap = level;
  }
  return out;
}

SparsityVerdict heuristic(const Graph& g, const SparsityOptions& opt, std::size_t cap) {
  SparsityVerdict verdict;
  verdict.mode = SparsityMode::Heuristic;
  verdict.size_cap = cap;
  verdict.eta = opt.eta;
  verdict.eps = opt.eps;
  if (cap < 2 || g.num_edges() == 0) return verdict;

  Rng rng = make_rng(opt.seed);
  const std::uint64_t restarts = std::max<std::uint64_t>(1, opt.budget / cap);
  std::vector<std::size_t> links(g.num_vertices(), 0);
  std::vector<char> in_set(g.num_vertices(), 0);
  std::vector<Vertex> members;
  std::vector<Vertex> frontier;

  for (std::uint64_t r = 0; r < restarts; ++r) {
    const Edge& seed_edge = g.edge(static_cast<EdgeId>(rng() % g.num_edges()));
    members.clear();
    std::size_t edges = 0;
    auto add = [&](Vertex v) {
      edges += links[v];
      in_set[v] = 1;
      members.push_back(v);
      for (Vertex w : g.neighbors(v)) ++links[w];
    };
    add(seed_edge.x);
    add(seed_edge.y);
    while (members.size() < cap) {
      ++verdict.work;
      // Neighbour with the most links into the set; ties broken uniformly.
      frontier.clear();
      std::size_t best = 0;
      for (Vertex v : members) {
        for (Vertex w : g.neighbors(v)) {
          if (in_set[w]) continue;
          if (links[w] > best) {
            best = links[w];
            frontier.clear();
          }
          if (links[w] == best &&
              std::find(frontier.begin(), frontier.end(), w) == frontier.end()) {
            frontier.push_back(w);
          }
        }
      }
      if (frontier.empty()) break;
      add(frontier[rng() % frontier.size()]);
      if (violates_sparsity(edges, members.size(), opt.eps)) {
        verdict.holds = false;
        SparsityWitness w{members, edges};
        std::sort(w.vertices.begin(), w.vertices.end());
        verdict.witness = std::move(w);
        break;
      }
    }
    for (Vertex v : members) {
      in_set[v] = 0;
      for (Vertex w : g.neighbors(v)) --links[w];
    }
    if (!verdict.holds) break;
  }
  return verdict;
}

}  // namespace

bool violates_sparsity(std::size_t induced_edges, std::size_t size, double eps) {
  return static_cast<double>(induced_edges) > (1.0 + eps) * static_cast<double>(size) + kGuard;
}

std::size_t sparsity_scale(double eta, std::size_t n) {
  return static_cast<std::size_t>(std::floor(eta * static_cast<double>(n) + kGuard));
}

SparsityVerdict sparsity_check(const Graph& g, const SparsityOptions& opt) {
  if (!(opt.eta > 0.0 && opt.eta <= 1.0)) throw InvalidArgument("eta must lie in (0, 1]");
  if (!(opt.eps > 0.0)) throw InvalidArgument("eps must be positive");
  const std::size_t scale = sparsity_scale(opt.eta, g.num_vertices());
  std::size_t cap = opt.size_cap == 0 ? scale : opt.size_cap;
  if (cap > scale) {
    throw InvalidArgument("size cap " + std::to_string(cap) + " exceeds floor(eta*n) = " +
                          std::to_string(scale));
  }
  if (opt.mode == SparsityMode::Heuristic) return heuristic(g, opt, cap);

  SparsityVerdict verdict;
  verdict.mode = SparsityMode::Exhaustive;
  verdict.size_cap = cap;
  verdict.eta = opt.eta;
  verdict.eps = opt.eps;
  CertifiedScale scan = deepen(g, opt.eps, cap, opt.budget);
  verdict.work = scan.work;
  if (scan.violator) {
    verdict.holds = false;
    verdict.witness = std::move(scan.violator);
  }
  return verdict;
}

CertifiedScale largest_certified_size(const Graph& g, double eps, std::size_t cap_limit,
                                      std::uint64_t budget) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  return deepen(g, eps, std::min(cap_limit, g.num_vertices()), budget);
}

}  // namespace rlm
