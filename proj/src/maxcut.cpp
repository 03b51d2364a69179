#include "sphcut/maxcut.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include "sphcut/errors.hpp"
#include "sphcut/random.hpp"

namespace sphcut {

namespace {

struct Best {
  std::int64_t value = -1;
  std::uint64_t mask = 0;

  void offer(std::int64_t v, std::uint64_t m) {
    if (v > value || (v == value && m < mask)) {
      value = v;
      mask = m;
    }
  }
};

std::int64_t cut_of_mask(std::span<const std::uint64_t> adj, std::uint64_t mask) {
  std::int64_t total = 0;
  for (std::size_t v = 0; v < adj.size(); ++v)
    if ((mask >> v) & 1U) total += std::popcount(adj[v] & ~mask);
  return total;
}

// Gray-code sweep over the low `free_bits` vertices 1..free_bits with the
// remaining vertices fixed by `base`.
Best sweep(std::span<const std::uint64_t> adj, std::span<const int> degree, std::uint64_t base,
           unsigned free_bits) {
  std::uint64_t mask = base;
  std::int64_t value = cut_of_mask(adj, mask);
  Best best;
  best.offer(value, mask);
  const std::uint64_t count = std::uint64_t{1} << free_bits;
  for (std::uint64_t i = 1; i < count; ++i) {
    const unsigned v = 1 + static_cast<unsigned>(std::countr_zero(i));
    const std::uint64_t bit = std::uint64_t{1} << v;
    const std::uint64_t own_side = (mask & bit) ? mask : ~mask;
    const int same = std::popcount(adj[v] & own_side);
    value += 2 * same - degree[v];
    mask ^= bit;
    best.offer(value, mask);
  }
  return best;
}

std::vector<Vertex> mask_to_side(std::uint64_t mask, std::size_t n) {
  std::vector<Vertex> side;
  for (Vertex v = 0; v < n; ++v)
    if ((mask >> v) & 1U) side.push_back(v);
  return side;
}

}  // namespace

std::int64_t cut_value(const Graph& g, std::span<const Vertex> side) {
  std::vector<char> in(g.num_vertices(), 0);
  for (const Vertex v : side) {
    if (v >= g.num_vertices()) {
      throw InputError("cut side contains vertex " + std::to_string(v) + " but n = " +
                       std::to_string(g.num_vertices()));
    }
    in[v] = 1;
  }
  std::int64_t value = 0;
  for (const Edge& e : g.edges()) value += in[e.u] != in[e.v];
  return value;
}

CutResult maxcut_exact(const Graph& g, const ExactMaxCutOptions& options) {
  const std::size_t n = g.num_vertices();
  const std::size_t limit = std::min(options.max_vertices, kExactMaxCutHardLimit);
  if (n > limit) {
    throw SizeError("exact MaxCut refused: n = " + std::to_string(n) + " exceeds limit " +
                    std::to_string(limit) + "; use the local-search heuristic");
  }

  std::vector<std::uint64_t> adj(n);
  std::vector<int> degree(n);
  for (Vertex v = 0; v < n; ++v) {
    adj[v] = g.adjacency_mask(v);
    degree[v] = static_cast<int>(g.degree(v));
  }

  const unsigned free_total = static_cast<unsigned>(n - 1);
  // Vertices above `free_bits` are fixed per job.
  const unsigned prefix_bits = std::min(free_total, free_total > 16 ? 6U : 0U);
  const unsigned free_bits = free_total - prefix_bits;
  const std::uint64_t job_count = std::uint64_t{1} << prefix_bits;

  unsigned workers = options.jobs != 0 ? options.jobs : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, job_count));

  std::vector<Best> per_worker(workers);
  auto run = [&](unsigned w) {
    for (std::uint64_t job = w; job < job_count; job += workers) {
      const std::uint64_t base = 1U | (job << (1 + free_bits));
      const Best b = sweep(adj, degree, base, free_bits);
      per_worker[w].offer(b.value, b.mask);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  Best best;
  for (const Best& b : per_worker) best.offer(b.value, b.mask);
  return {mask_to_side(best.mask, n), best.value, true};
}

CutResult maxcut_local_search(const Graph& g, std::uint64_t seed, std::size_t restarts) {
  if (restarts < 1) throw InputError("local search needs at least one restart");
  const std::size_t n = g.num_vertices();

  CutResult best;
  best.value = -1;
  std::vector<char> in(n);
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng = make_stream(seed, "local_search", r);
    std::bernoulli_distribution coin(0.5);
    for (auto& b : in) b = coin(rng) ? 1 : 0;

    bool improved = true;
    while (improved) {
      improved = false;
      for (Vertex v = 0; v < n; ++v) {
        int same = 0;
        for (const Vertex u : g.neighbors(v)) same += in[u] == in[v];
        if (2 * same > static_cast<int>(g.degree(v))) {
          in[v] ^= 1;
          improved = true;
          break;
        }
      }
    }

    std::vector<Vertex> side;
    for (Vertex v = 0; v < n; ++v)
      if (in[v]) side.push_back(v);
    const std::int64_t value = cut_value(g, side);
    if (value > best.value) best = {std::move(side), value, false};
  }
  return best;
}

Rational surplus(std::size_t m, std::int64_t mc) {
  if (mc < 0 || mc > static_cast<std::int64_t>(m)) {
    throw InputError("cut value " + std::to_string(mc) + " outside [0, m = " + std::to_string(m) +
                     "]");
  }
  return {2 * mc - static_cast<std::int64_t>(m), 2};
}

double edwards_bound(std::size_t m) {
  return (std::sqrt(8.0 * static_cast<double>(m) + 1.0) - 1.0) / 8.0;
}

std::optional<Rational> edwards_bound_exact(std::size_t m) {
  const auto target = 8 * static_cast<std::int64_t>(m) + 1;
  auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(target))));
  while (root * root > target) --root;
  while ((root + 1) * (root + 1) <= target) ++root;
  if (root * root != target) return std::nullopt;
  return Rational(root - 1, 8);
}

}  // namespace sphcut
