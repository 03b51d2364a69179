#include "sphcut/construction.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "sphcut/errors.hpp"
#include "sphcut/random.hpp"

namespace sphcut {

namespace {

constexpr std::size_t kChunk = 1 << 14;

void require_unit(std::span<const double> points, int d) {
  for (std::size_t i = 0; i * d < points.size(); ++i) {
    const auto x = points.subspan(i * d, d);
    if (std::abs(std::sqrt(dot(x, x)) - 1.0) > 1e-9) {
      throw InputError("point " + std::to_string(i) + " is not a unit vector");
    }
  }
}

Estimate proportion(std::size_t hits, std::size_t total) {
  const double p = static_cast<double>(hits) / static_cast<double>(total);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(total)), total};
}

}  // namespace

GeometricGraph build_threshold_graph(std::span<const double> points, int d, double theta) {
  if (d < 2 || points.size() % d != 0) throw InputError("points must be a multiple of d >= 2 values");
  const std::size_t n = points.size() / d;
  if (n < 2) throw InputError("threshold graph needs at least two points");
  if (!(theta > 0.5 * kPi && theta < kPi)) {
    throw InputError("theta must lie strictly between pi/2 and pi");
  }
  require_unit(points, d);

  const double threshold = std::cos(theta);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < n; ++i) {
    const auto xi = points.subspan(i * d, d);
    for (Vertex j = i + 1; j < n; ++j) {
      if (dot(xi, points.subspan(j * d, d)) <= threshold) edges.emplace_back(i, j);
    }
  }
  GeometricGraph gg{Graph(n, edges), d, std::vector<double>(points.begin(), points.end()), {}};
  gg.params.theta = theta;
  gg.params.d = d;
  gg.params.n_cells = n;
  return gg;
}

bool validate_threshold_graph(const GeometricGraph& gg, double tolerance) {
  const double threshold = std::cos(gg.params.theta);
  const std::size_t n = gg.graph.num_vertices();
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      const double c = dot(gg.point(i), gg.point(j));
      if (gg.graph.adjacent(i, j) ? c > threshold + tolerance : c <= threshold - tolerance) return false;
    }
  }
  return true;
}

GeometricGraph build_construction(double theta, double epsilon, const ConstructionOverrides& overrides) {
  validate_theta_epsilon(theta, epsilon);
  ConstructionParams params;
  params.theta = theta;
  params.epsilon = epsilon;
  params.d_overridden = overrides.d.has_value();
  params.gamma_overridden = overrides.gamma.has_value();
  params.d = overrides.d ? *overrides.d : choose_dimension(theta, epsilon);
  const double gamma = overrides.gamma ? *overrides.gamma : choose_gamma(theta, epsilon, params.d);

  const CellPartition cells = partition_sphere(params.d, gamma, overrides.partition);
  GeometricGraph gg = build_threshold_graph(cells.representatives(), params.d, theta);
  params.gamma = cells.gamma();
  params.n_cells = cells.size();
  gg.params = params;
  return gg;
}

double potentially_mixed_fraction(const GeometricGraph& gg) {
  const std::size_t n = gg.graph.num_vertices();
  if (n < 2) return 0.0;
  const double band = 2.0 * gg.params.gamma;
  std::size_t mixed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = std::acos(std::clamp(dot(gg.point(i), gg.point(j)), -1.0, 1.0));
      mixed += std::abs(a - gg.params.theta) <= band;
    }
  }
  return static_cast<double>(mixed) / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

double EdgeAngleSample::retained_fraction() const {
  return static_cast<double>(retained()) / static_cast<double>(pair_count);
}

double EdgeAngleSample::retained_fraction_stderr() const {
  const double p = retained_fraction();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(pair_count));
}

EdgeAngleSample sample_continuous_pairs(int d, double theta, std::size_t pairs, std::uint64_t seed,
                                        unsigned jobs) {
  if (d < 2) throw InputError("sampling needs d >= 2");
  if (pairs < 1) throw InputError("sampling needs at least one pair");
  if (!(theta >= 0.0 && theta <= kPi)) throw InputError("theta must lie in [0, pi]");

  const std::size_t chunks = (pairs + kChunk - 1) / kChunk;
  struct Part {
    std::vector<double> angles;
    std::vector<double> first;
    std::vector<double> second;
  };
  std::vector<Part> parts(chunks);

  auto run_chunk = [&](std::size_t c) {
    Rng rng = make_stream(seed, "continuous_pairs", c);
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(pairs, begin + kChunk);
    std::vector<double> x(d);
    std::vector<double> y(d);
    Part& part = parts[c];
    for (std::size_t k = begin; k < end; ++k) {
      sample_unit_vector(rng, x);
      sample_unit_vector(rng, y);
      const double a = std::acos(std::clamp(dot(x, y), -1.0, 1.0));
      if (a >= theta) {
        part.angles.push_back(a);
        part.first.insert(part.first.end(), x.begin(), x.end());
        part.second.insert(part.second.end(), y.begin(), y.end());
      }
    }
  };

  unsigned workers = jobs != 0 ? jobs : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
      });
    }
  }

  EdgeAngleSample sample;
  sample.d = d;
  sample.theta = theta;
  sample.pair_count = pairs;
  sample.seed = seed;
  for (Part& part : parts) {
    sample.angles.insert(sample.angles.end(), part.angles.begin(), part.angles.end());
    sample.first.insert(sample.first.end(), part.first.begin(), part.first.end());
    sample.second.insert(sample.second.end(), part.second.begin(), part.second.end());
  }
  return sample;
}

SphereSet SphereSet::whole_sphere() {
  return {"whole sphere", [](std::span<const double>) { return true; }};
}

SphereSet SphereSet::hemisphere(std::vector<double> normal) {
  return {"hemisphere", [normal = std::move(normal)](std::span<const double> x) { return dot(x, normal) >= 0.0; }};
}

SphereSet SphereSet::cap(std::vector<double> center, double radius) {
  const double threshold = std::cos(radius);
  return {"cap(r=" + std::to_string(radius) + ")",
          [center = std::move(center), threshold](std::span<const double> x) {
            return dot(x, center) >= threshold;
          }};
}

SphereSet SphereSet::cap_of_measure(std::vector<double> center, double measure) {
  const int d = static_cast<int>(center.size());
  SphereSet s = cap(std::move(center), cap_radius_for_measure(d, measure));
  s.name_ = "cap(measure=" + std::to_string(measure) + ")";
  return s;
}

SphereSet SphereSet::union_of(std::vector<SphereSet> parts) {
  std::string name = "union(";
  for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? ", " : "") + parts[i].name();
  name += ")";
  return {name, [parts = std::move(parts)](std::span<const double> x) {
            return std::any_of(parts.begin(), parts.end(), [&](const SphereSet& p) { return p.contains(x); });
          }};
}

SphereSet SphereSet::cell_coloring(std::shared_ptr<const ZonalPartition> scheme, std::vector<bool> colors) {
  if (!scheme || colors.size() != scheme->size()) {
    throw InputError("cell coloring needs one color per cell of an attached scheme");
  }
  return {"cell coloring",
          [scheme = std::move(scheme), colors = std::move(colors)](std::span<const double> x) {
            return static_cast<bool>(colors[scheme->locate(x)]);
          }};
}

Estimate estimate_cut_measure(const EdgeAngleSample& sample, const SphereSet& side) {
  const std::size_t k = sample.retained();
  if (k == 0) throw DegenerateSampleError("sample retained no pairs; increase N or lower theta");
  const auto d = static_cast<std::size_t>(sample.d);
  std::size_t separated = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const bool a = side.contains(std::span<const double>(sample.first).subspan(i * d, d));
    const bool b = side.contains(std::span<const double>(sample.second).subspan(i * d, d));
    separated += a != b;
  }
  return proportion(separated, k);
}

Estimate compare_cut_measures(const EdgeAngleSample& sample, const SphereSet& a, const SphereSet& b) {
  const std::size_t k = sample.retained();
  if (k == 0) throw DegenerateSampleError("sample retained no pairs; increase N or lower theta");
  const auto d = static_cast<std::size_t>(sample.d);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto x = std::span<const double>(sample.first).subspan(i * d, d);
    const auto y = std::span<const double>(sample.second).subspan(i * d, d);
    const double diff = static_cast<double>(a.contains(x) != a.contains(y)) -
                        static_cast<double>(b.contains(x) != b.contains(y));
    sum += diff;
    sum_sq += diff * diff;
  }
  const double kd = static_cast<double>(k);
  const double mean = sum / kd;
  const double variance = k > 1 ? std::max(0.0, (sum_sq - kd * mean * mean) / (kd - 1.0)) : 0.0;
  return {mean, std::sqrt(variance / kd), k};
}

Estimate far_edge_fraction(const EdgeAngleSample& sample, double epsilon) {
  if (sample.retained() == 0) throw DegenerateSampleError("sample retained no pairs");
  const std::size_t far = static_cast<std::size_t>(
      std::count_if(sample.angles.begin(), sample.angles.end(),
                    [&](double a) { return a > sample.theta + epsilon; }));
  return proportion(far, sample.retained());
}

}  // namespace sphcut
