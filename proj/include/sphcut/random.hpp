#pragma once

#include <cstdint>
#include <cmath>
#include <random>
#include <span>
#include <string_view>

namespace sphcut {

using Rng = std::mt19937_64;

/// Independent generator for the substream (`name`, `index`) of `root_seed`.
/// Every stochastic routine draws from named substreams so results do not
/// depend on how work is split across threads.
inline Rng make_stream(std::uint64_t root_seed, std::string_view name, std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (const char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(root_seed), static_cast<std::uint32_t>(root_seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

/// Child root seed for a named sub-computation.
inline std::uint64_t derive_seed(std::uint64_t root_seed, std::string_view name) {
  return make_stream(root_seed, name)();
}

/// Fills `out` with a uniform point of the unit sphere (normalized Gaussian).
inline void sample_unit_vector(Rng& rng, std::span<double> out) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& x : out) {
      x = normal(rng);
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : out) x *= inv;
}

}  // namespace sphcut
