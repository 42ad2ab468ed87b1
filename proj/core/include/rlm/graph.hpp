#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rlm {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Unordered vertex pair stored with x < y (x <= y inside a Multigraph).
struct Edge {
  Vertex x = 0;
  Vertex y = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite simple graph on vertices 0..n-1. Immutable after construction.
///
/// Edges are kept in ascending lexicographic order and an edge's id is its
/// position in that order. Neighbor lists are sorted.
class Graph {
 public:
  Graph() = default;

  /// Throws InvalidArgument on self-loops, duplicate edges, or ids >= n.
  /// Pairs may be given in either orientation and any order.
  Graph(std::size_t n, std::vector<Edge> edges);

  static Graph complete(std::size_t n);
  static Graph path(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph star(std::size_t leaves);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const { return max_degree_; }
  bool adjacent(Vertex x, Vertex y) const;
  std::optional<EdgeId> edge_id(Vertex x, Vertex y) const;

  /// Degree d if every vertex has degree d.
  std::optional<std::size_t> regular_degree() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
  std::size_t max_degree_ = 0;
};

/// Number of edges of `g` with both endpoints in `vertices`. Repeated ids
/// count once. Throws InvalidArgument for ids outside the graph.
std::size_t induced_edge_count(const Graph& g, std::span<const Vertex> vertices);

/// |E| / n. Throws InvalidArgument for the graph with no vertices.
double edge_density(const Graph& g);

/// Multigraph produced by a half-edge pairing; may hold self-loops and
/// repeated edges. A self-loop contributes 2 to its vertex's degree.
struct Multigraph {
  std::size_t n = 0;
  std::vector<Edge> edges;

  std::vector<std::size_t> degrees() const;
  bool is_simple() const;
  /// Throws InvalidArgument unless simple.
  Graph to_graph() const;
};

}  // namespace rlm
