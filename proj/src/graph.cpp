#include "sphcut/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sphcut/errors.hpp"
#include "sphcut/random.hpp"

namespace sphcut {

Graph::Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : Graph(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size())) {}

Graph::Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges)
    : n_(n), words_((n + 63) / 64) {
  if (n == 0) throw InputError("graph must have at least one vertex");
  edges_.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw InputError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") has an endpoint outside 0.." + std::to_string(n - 1));
    }
    if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
    edges_.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw InputError("duplicate edge (" + std::to_string(dup->u) + ", " + std::to_string(dup->v) +
                     ")");
  }

  rows_.assign(n_ * words_, 0);
  neighbors_.resize(n_);
  for (const Edge& e : edges_) {
    rows_[e.u * words_ + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
    rows_[e.v * words_ + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
    neighbors_[e.u].push_back(e.v);
    neighbors_[e.v].push_back(e.u);
  }
  for (auto& list : neighbors_) std::sort(list.begin(), list.end());
}

std::uint64_t Graph::adjacency_mask(Vertex v) const {
  if (n_ > 64) throw SizeError("adjacency_mask requires n <= 64");
  return rows_[v];
}

Graph parse_graph(std::istream& in) {
  std::string line;
  auto next_data_line = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_data_line()) throw IoError("graph file: missing \"n m\" header");
  std::size_t n = 0;
  std::size_t m = 0;
  {
    std::istringstream header(line);
    if (!(header >> n >> m)) throw IoError("graph file: malformed header \"" + line + "\"");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!next_data_line()) {
      throw IoError("graph file: expected " + std::to_string(m) + " edges, found " +
                    std::to_string(i));
    }
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0) {
      throw IoError("graph file: malformed edge line \"" + line + "\"");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_data_line()) throw IoError("graph file: trailing data after " + std::to_string(m) + " edges");
  return Graph(n, edges);
}

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file " + path);
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

namespace families {

Graph complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) edges.emplace_back(u, static_cast<Vertex>(a + v));
  return Graph(a + b, edges);
}

Graph cycle(std::size_t n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph(n, edges);
}

Graph petersen() {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, edges);
}

Graph random_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  Rng rng = make_stream(seed, "gnp", n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (unif(rng) < p) edges.emplace_back(u, v);
  return Graph(n, edges);
}

}  // namespace families

}  // namespace sphcut
