#include "rlm/graph.hpp"

#include <algorithm>
#include <string>

#include "rlm/error.hpp"

namespace rlm {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    if (e.x >= n_ || e.y >= n_) {
      throw InvalidArgument("edge {" + std::to_string(e.x) + "," + std::to_string(e.y) +
                            "} references a vertex outside 0.." + std::to_string(n_) + "-1");
    }
    if (e.x == e.y) throw InvalidArgument("self-loop at vertex " + std::to_string(e.x));
    if (e.x > e.y) std::swap(e.x, e.y);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw InvalidArgument("duplicate edge {" + std::to_string(dup->x) + "," +
                          std::to_string(dup->y) + "}");
  }

  std::vector<std::size_t> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.x];
    ++deg[e.y];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Lexicographic edge order leaves each neighbor list sorted except for the
  // smaller neighbors of y, so sort per vertex afterwards.
  for (const Edge& e : edges_) {
    adjacency_[fill[e.x]++] = e.y;
    adjacency_[fill[e.y]++] = e.x;
  }
  for (std::size_t v = 0; v < n_; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    max_degree_ = std::max(max_degree_, deg[v]);
  }
}

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y) edges.push_back({x, y});
  return Graph(n, std::move(edges));
}

Graph Graph::path(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex x = 0; x + 1 < n; ++x) edges.push_back({x, x + 1});
  return Graph(n, std::move(edges));
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("a simple cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex x = 0; x < n; ++x) edges.push_back({x, static_cast<Vertex>((x + 1) % n)});
  return Graph(n, std::move(edges));
}

Graph Graph::star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex x = 1; x <= leaves; ++x) edges.push_back({0, x});
  return Graph(leaves + 1, std::move(edges));
}

bool Graph::adjacent(Vertex x, Vertex y) const {
  if (x >= n_ || y >= n_) return false;
  auto nb = neighbors(x);
  return std::binary_search(nb.begin(), nb.end(), y);
}

std::optional<EdgeId> Graph::edge_id(Vertex x, Vertex y) const {
  if (x > y) std::swap(x, y);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{x, y});
  if (it == edges_.end() || *it != Edge{x, y}) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

std::optional<std::size_t> Graph::regular_degree() const {
  if (n_ == 0) return std::nullopt;
  const std::size_t d = degree(0);
  for (Vertex v = 1; v < n_; ++v)
    if (degree(v) != d) return std::nullopt;
  return d;
}

std::size_t induced_edge_count(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : vertices) {
    if (v >= g.num_vertices()) {
      throw InvalidArgument("vertex " + std::to_string(v) + " is not in the graph");
    }
    in[v] = 1;
  }
  std::size_t twice = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!in[v]) continue;
    for (Vertex w : g.neighbors(v)) twice += in[w];
  }
  return twice / 2;
}

double edge_density(const Graph& g) {
  if (g.num_vertices() == 0) throw InvalidArgument("edge density of the empty vertex set");
  return static_cast<double>(g.num_edges()) / static_cast<double>(g.num_vertices());
}

std::vector<std::size_t> Multigraph::degrees() const {
  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges) {
    ++deg[e.x];
    ++deg[e.y];
  }
  return deg;
}

bool Multigraph::is_simple() const {
  std::vector<Edge> sorted = edges;
  for (Edge& e : sorted) {
    if (e.x == e.y) return false;
    if (e.x > e.y) std::swap(e.x, e.y);
  }
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Graph Multigraph::to_graph() const {
  if (!is_simple()) throw InvalidArgument("multigraph has self-loops or repeated edges");
  return Graph(n, edges);
}

}  // namespace rlm
