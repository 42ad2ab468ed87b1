#include "rlm/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rlm/error.hpp"
#include "rlm/random.hpp"

namespace rlm {

Graph gen_erdos_renyi(std::size_t n, double lambda, std::uint64_t seed) {
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be nonnegative");
  if (n == 0) return Graph(0, {});
  const double p = lambda / static_cast<double>(n);
  if (p > 1.0) {
    throw InvalidArgument("edge probability lambda/n = " + std::to_string(p) + " exceeds 1");
  }
  std::vector<Edge> edges;
  if (p == 0.0 || n < 2) return Graph(n, std::move(edges));

  Rng rng = make_rng(seed);
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  edges.reserve(static_cast<std::size_t>(static_cast<double>(total) * p * 1.1) + 16);

  // Walk the pairs (0,1), (0,2), ..., (1,2), ... in lexicographic order.
  const double log_q = std::log1p(-p);
  Vertex row = 0;
  std::uint64_t row_start = 0;  // linear index of (row, row + 1)
  std::uint64_t idx = 0;
  bool first = true;
  while (true) {
    std::uint64_t skip = 0;
    if (p < 1.0) {
      const double u = 1.0 - uniform01(rng);  // (0, 1]
      const double jump = std::floor(std::log(u) / log_q);
      if (jump >= static_cast<double>(total)) break;
      skip = static_cast<std::uint64_t>(jump);
    }
    idx = first ? skip : idx + 1 + skip;
    first = false;
    if (idx >= total) break;
    while (idx >= row_start + (n - 1 - row)) {
      row_start += n - 1 - row;
      ++row;
    }
    edges.push_back({row, static_cast<Vertex>(row + 1 + (idx - row_start))});
  }
  return Graph(n, std::move(edges));
}

namespace {

Multigraph pair_half_edges(std::span<const std::size_t> degrees, Rng& rng) {
  std::vector<Vertex> stubs;
  for (std::size_t v = 0; v < degrees.size(); ++v)
    stubs.insert(stubs.end(), degrees[v], static_cast<Vertex>(v));
  std::shuffle(stubs.begin(), stubs.end(), rng);
  Multigraph g;
  g.n = degrees.size();
  g.edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    Vertex a = stubs[i];
    Vertex b = stubs[i + 1];
    if (a > b) std::swap(a, b);
    g.edges.push_back({a, b});
  }
  return g;
}

void require_even_sum(std::span<const std::size_t> degrees) {
  const std::size_t sum = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (sum % 2 != 0) {
    throw InvalidArgument("degree sum " + std::to_string(sum) + " is odd");
  }
}

}  // namespace

Multigraph gen_configuration_multigraph(std::span<const std::size_t> degrees,
                                        std::uint64_t seed) {
  require_even_sum(degrees);
  Rng rng = make_rng(seed);
  return pair_half_edges(degrees, rng);
}

namespace {

/// One uniform pairing built stub by stub: the lowest unmatched stub is joined
/// to a uniformly chosen unmatched stub. Stops at the first self-loop or
/// repeated edge, so rejected pairings cost only the prefix that was built.
class SimplePairing {
 public:
  explicit SimplePairing(std::span<const std::size_t> degrees)
      : n_(degrees.size()), width_(*std::max_element(degrees.begin(), degrees.end())) {
    for (std::size_t v = 0; v < n_; ++v) base_.insert(base_.end(), degrees[v], static_cast<Vertex>(v));
    stubs_.resize(base_.size());
    adj_.resize(n_ * width_);
    fill_.resize(n_);
  }

  bool draw(Rng& rng, std::vector<Edge>& edges) {
    std::copy(base_.begin(), base_.end(), stubs_.begin());
    std::fill(fill_.begin(), fill_.end(), 0);
    edges.clear();
    const std::size_t m = stubs_.size();
    for (std::size_t i = 0; i + 1 < m; i += 2) {
      std::uniform_int_distribution<std::size_t> pick(i + 1, m - 1);
      std::swap(stubs_[i + 1], stubs_[pick(rng)]);
      const Vertex a = stubs_[i];
      const Vertex b = stubs_[i + 1];
      if (a == b) return false;
      const Vertex* row = adj_.data() + a * width_;
      if (std::find(row, row + fill_[a], b) != row + fill_[a]) return false;
      adj_[a * width_ + fill_[a]++] = b;
      adj_[b * width_ + fill_[b]++] = a;
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return true;
  }

 private:
  std::size_t n_;
  std::size_t width_;
  std::vector<Vertex> base_;
  std::vector<Vertex> stubs_;
  std::vector<Vertex> adj_;
  std::vector<std::size_t> fill_;
};

}  // namespace

SimpleRealization condition_simple(std::span<const std::size_t> degrees, std::uint64_t seed,
                                   std::size_t max_attempts) {
  require_even_sum(degrees);
  if (degrees.empty()) return {Graph(0, {}), 1};
  SimplePairing pairing(degrees);
  Rng rng = make_rng(seed);
  std::vector<Edge> edges;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    if (pairing.draw(rng, edges)) return {Graph(degrees.size(), std::move(edges)), attempt + 1};
  }
  throw BudgetExceeded("no simple pairing within " + std::to_string(max_attempts) +
                       " attempts; degree sequence is pathological at this size");
}

Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                         std::size_t max_attempts) {
  if ((n * d) % 2 != 0) {
    throw InvalidArgument("n*d = " + std::to_string(n * d) + " is odd; no d-regular graph");
  }
  if (d == 0 || d >= n) {
    throw InvalidArgument("degree must satisfy 1 <= d < n");
  }
  std::vector<std::size_t> degrees(n, d);
  return condition_simple(degrees, seed, max_attempts).graph;
}

}  // namespace rlm
