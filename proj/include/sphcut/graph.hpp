#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sphcut {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;  // u < v
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph, immutable after construction.
///
/// Edges are stored normalized (u < v) and sorted. The adjacency view keeps
/// one bitset row per vertex plus neighbor lists; both are derived from the
/// edge set at construction so they cannot drift apart.
class Graph {
 public:
  /// Throws InputError on n == 0, out-of-range endpoints, self-loops or duplicates.
  Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);
  Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

  [[nodiscard]] std::size_t num_vertices() const { return n_; }
  [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const { return neighbors_[v]; }
  [[nodiscard]] std::size_t degree(Vertex v) const { return neighbors_[v].size(); }
  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const {
    return (rows_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  /// Bitset row of `v`; word w holds vertices 64w .. 64w+63.
  [[nodiscard]] std::span<const std::uint64_t> adjacency_row(Vertex v) const {
    return {rows_.data() + v * words_, words_};
  }
  /// Adjacency of `v` as a single mask; only valid when n <= 64.
  [[nodiscard]] std::uint64_t adjacency_mask(Vertex v) const;

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::vector<Vertex>> neighbors_;
};

/// Edge-list text format: optional '#' comment lines, then "n m", then m lines "u v".
Graph read_graph(const std::string& path);
Graph parse_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

namespace families {

Graph complete(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
/// Cycle 0-1-...-(n-1)-0, n >= 3.
Graph cycle(std::size_t n);
Graph petersen();
/// Erdős–Rényi G(n, p) from a seeded stream.
Graph random_gnp(std::size_t n, double p, std::uint64_t seed);

}  // namespace families

}  // namespace sphcut
