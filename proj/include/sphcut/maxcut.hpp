#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sphcut/graph.hpp"
#include "sphcut/rational.hpp"

namespace sphcut {

struct CutResult {
  std::vector<Vertex> side;  // sorted
  std::int64_t value = 0;    // edges with exactly one endpoint in `side`
  bool exact = false;        // true iff produced by exhaustive search
};

/// Number of edges with exactly one endpoint in `side`.
/// Throws InputError for an out-of-range vertex.
std::int64_t cut_value(const Graph& g, std::span<const Vertex> side);

struct ExactMaxCutOptions {
  std::size_t max_vertices = 30;
  unsigned jobs = 0;  // 0: hardware concurrency
};

inline constexpr std::size_t kExactMaxCutHardLimit = 63;

/// Exhaustive MaxCut. Enumerates the 2^(n-1) sides containing vertex 0 in Gray
/// order, updating the cut value incrementally from adjacency masks. Among
/// maximizing sides the one with the smallest bitmask is returned, so the
/// answer does not depend on `jobs`. Throws SizeError above `max_vertices`.
CutResult maxcut_exact(const Graph& g, const ExactMaxCutOptions& options = {});

/// Best of `restarts` first-improvement single-flip local searches from
/// seeded random starts. The result is a local optimum: no single vertex
/// move increases its value.
CutResult maxcut_local_search(const Graph& g, std::uint64_t seed, std::size_t restarts);

/// sp = mc - m/2 as an exact half-integer. Throws InputError unless 0 <= mc <= m.
Rational surplus(std::size_t m, std::int64_t mc);
inline Rational surplus(const Graph& g, std::int64_t mc) { return surplus(g.num_edges(), mc); }

/// (sqrt(8m+1) - 1) / 8.
double edwards_bound(std::size_t m);
/// The Edwards bound as a rational when 8m+1 is a perfect square.
std::optional<Rational> edwards_bound_exact(std::size_t m);

}  // namespace sphcut
