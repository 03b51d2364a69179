#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "sphcut/construction.hpp"
#include "sphcut/errors.hpp"
#include "sphcut/maxcut.hpp"
#include "sphcut/random.hpp"

using namespace sphcut;

namespace {

std::vector<double> regular_polygon(std::size_t n) {
  std::vector<double> pts;
  for (std::size_t k = 0; k < n; ++k) {
    pts.push_back(std::cos(2 * kPi * k / n));
    pts.push_back(std::sin(2 * kPi * k / n));
  }
  return pts;
}

}  // namespace

TEST_CASE("threshold graph on tiny point sets") {
  const std::vector<double> antipodal{0, 0, 1, 0, 0, -1};
  CHECK(build_threshold_graph(antipodal, 3, 0.99 * kPi).graph.num_edges() == 1);
  const std::vector<double> same{0, 1, 0, 1};
  CHECK(build_threshold_graph(same, 2, 0.6 * kPi).graph.num_edges() == 0);

  // Pentagon at 0.55 pi: far neighbors (4 pi / 5) are edges, near ones (2 pi / 5) are not.
  const GeometricGraph pent = build_threshold_graph(regular_polygon(5), 2, 0.55 * kPi);
  CHECK(pent.graph.num_edges() == 5);
  for (Vertex v = 0; v < 5; ++v) {
    CHECK(pent.graph.degree(v) == 2);
    CHECK(pent.graph.adjacent(v, (v + 2) % 5));
  }
  CHECK(maxcut_exact(pent.graph).value == 4);  // C5

  CHECK_THROWS_AS(build_threshold_graph(std::vector<double>{1, 0}, 2, 2.0), InputError);
  CHECK_THROWS_AS(build_threshold_graph(antipodal, 3, kPi / 2), InputError);
  CHECK_THROWS_AS(build_threshold_graph(std::vector<double>{2, 0, 0, 1}, 2, 2.0), InputError);
}

TEST_CASE("edge criterion is closed") {
  // The inner product below is exactly cos(theta) in floating point.
  for (double theta : {0.55 * kPi, 0.7 * kPi, 0.9 * kPi}) {
    const double c = std::cos(theta);
    const std::vector<double> pts{1, 0, c, std::sqrt(1 - c * c)};
    CHECK(build_threshold_graph(pts, 2, theta).graph.num_edges() == 1);
  }
}

TEST_CASE("threshold graph survives tiny perturbations in re-validation") {
  const GeometricGraph gg = build_construction(2 * kPi / 3, 0.3, {.d = 3, .gamma = 0.8});
  CHECK(validate_threshold_graph(gg, 0.0));
  GeometricGraph moved = gg;
  Rng rng = make_stream(3, "perturb");
  std::normal_distribution<double> noise(0.0, 1e-10);
  for (std::size_t i = 0; i < moved.graph.num_vertices(); ++i) {
    double norm2 = 0;
    for (int j = 0; j < 3; ++j) {
      moved.points[i * 3 + j] += noise(rng);
      norm2 += moved.points[i * 3 + j] * moved.points[i * 3 + j];
    }
    for (int j = 0; j < 3; ++j) moved.points[i * 3 + j] /= std::sqrt(norm2);
  }
  CHECK(validate_threshold_graph(moved, 1e-8));
}

TEST_CASE("construction on the circle is a circulant") {
  const GeometricGraph gg = build_construction(0.6 * kPi, 0.3, {.d = 2, .gamma = 0.5});
  const std::size_t n = gg.graph.num_vertices();
  CHECK(n == static_cast<std::size_t>(std::ceil(2 * kPi / 0.5)));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      CHECK(gg.graph.adjacent(u, v) == gg.graph.adjacent((u + 1) % n, (v + 1) % n));
}

TEST_CASE("construction pipeline and parameter record") {
  const GeometricGraph gg = build_construction(2 * kPi / 3, 0.3, {.d = 3});
  const double n = static_cast<double>(gg.graph.num_vertices());
  CHECK(gg.params.d == 3);
  CHECK(gg.params.d_overridden);
  CHECK_FALSE(gg.params.gamma_overridden);
  CHECK(gg.params.gamma <= choose_gamma(2 * kPi / 3, 0.3, 3));
  CHECK(gg.params.n_cells == gg.graph.num_vertices());

  // Edge density vs the probability a uniform pair is at angle >= theta on S^2.
  const double pairs = n * (n - 1) / 2;
  const double density = static_cast<double>(gg.graph.num_edges()) / pairs;
  const double expected = (1 - std::cos(kPi / 3)) / 2;
  CHECK(std::abs(density - expected) <= 3 * std::sqrt(expected * (1 - expected) / pairs));

  // Deterministic.
  const GeometricGraph again = build_construction(2 * kPi / 3, 0.3, {.d = 3});
  CHECK(again.points == gg.points);
  CHECK(again.graph.edges() == gg.graph.edges());

  CHECK_THROWS_AS(build_construction(kPi / 2, 0.3), InputError);
  CHECK_THROWS_AS(build_construction(2.0, 0.3, {.d = 9}), SizeError);
}

TEST_CASE("mixed-pair fraction") {
  const GeometricGraph gg = build_construction(2 * kPi / 3, 0.3, {.d = 3, .gamma = 0.8});
  const double f = potentially_mixed_fraction(gg);
  CHECK(f > 0.0);
  CHECK(f < 1.0);
}

TEST_CASE("continuous pair sampling") {
  const EdgeAngleSample all = sample_continuous_pairs(3, 0.0, 5000, 1);
  CHECK(all.retained() == 5000);

  const EdgeAngleSample s = sample_continuous_pairs(3, 2 * kPi / 3, 200'000, 7);
  CHECK(std::all_of(s.angles.begin(), s.angles.end(), [](double a) { return a >= 2 * kPi / 3; }));
  CHECK(std::abs(s.retained_fraction() - 0.25) <= 3 * std::sqrt(0.25 * 0.75 / 200'000));
  CHECK(s.first.size() == 3 * s.retained());

  const EdgeAngleSample near_pi = sample_continuous_pairs(3, kPi - 1e-3, 100'000, 7);
  CHECK(near_pi.retained_fraction() < 1e-4);

  // Independent of worker count, reproducible per seed.
  const EdgeAngleSample one = sample_continuous_pairs(4, 2.0, 50'000, 11, 1);
  const EdgeAngleSample many = sample_continuous_pairs(4, 2.0, 50'000, 11, 3);
  CHECK(one.angles == many.angles);
  CHECK(one.first == many.first);

  CHECK_THROWS_AS(sample_continuous_pairs(3, 1.0, 0, 1), InputError);
}

TEST_CASE("retained angle histogram follows sin^(d-2) on [theta, pi]") {
  const int d = 4;
  const double theta = 2 * kPi / 3;
  const EdgeAngleSample s = sample_continuous_pairs(d, theta, 1'000'000, 5);
  constexpr int kBins = 20;
  std::vector<double> observed(kBins, 0.0);
  for (const double a : s.angles) {
    const int b = std::min(kBins - 1, static_cast<int>((a - theta) / (kPi - theta) * kBins));
    ++observed[b];
  }
  // Bin probabilities of density sin^2 on [theta, pi]: antiderivative (t - sin t cos t) / 2.
  auto F = [](double t) { return 0.5 * (t - std::sin(t) * std::cos(t)); };
  const double total = F(kPi) - F(theta);
  double chi2 = 0.0;
  for (int b = 0; b < kBins; ++b) {
    const double lo = theta + (kPi - theta) * b / kBins;
    const double hi = theta + (kPi - theta) * (b + 1) / kBins;
    const double expected = (F(hi) - F(lo)) / total * static_cast<double>(s.retained());
    chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
  }
  CHECK(chi2 < 36.19);  // chi-square 99th percentile, 19 degrees of freedom
}

TEST_CASE("cut measure estimates") {
  const double theta = 2 * kPi / 3;
  const EdgeAngleSample s = sample_continuous_pairs(3, theta, 1'000'000, 21);
  CHECK(estimate_cut_measure(s, SphereSet::whole_sphere()).value == 0.0);

  // Hemisphere against the hyperplane oracle: mean over retained pairs of angle / pi.
  const Estimate hemi = estimate_cut_measure(s, SphereSet::hemisphere({0, 0, 1}));
  double oracle = 0.0;
  for (const double a : s.angles) oracle += a / kPi;
  oracle /= static_cast<double>(s.retained());
  CHECK(std::abs(hemi.value - oracle) <= 3 * hemi.std_error);

  const Estimate self = compare_cut_measures(s, SphereSet::hemisphere({0, 0, 1}), SphereSet::hemisphere({0, 0, 1}));
  CHECK(self.value == 0.0);

  const Estimate vs_cap = compare_cut_measures(s, SphereSet::hemisphere({0, 0, 1}),
                                               SphereSet::cap_of_measure({1, 0, 0}, 0.3));
  CHECK(vs_cap.value >= -3 * vs_cap.std_error);
  CHECK(vs_cap.value > 0.0);

  const Estimate far = far_edge_fraction(s, 0.2);
  CHECK(far.value > 0.0);
  CHECK(far.value < 1.0);

  const EdgeAngleSample empty = sample_continuous_pairs(3, kPi, 10, 1);
  CHECK_THROWS_AS(estimate_cut_measure(empty, SphereSet::whole_sphere()), DegenerateSampleError);
}

TEST_CASE("sphere sets") {
  const std::vector<double> north{0, 0, 1};
  const std::vector<double> south{0, 0, -1};
  CHECK(SphereSet::hemisphere(north).contains(std::vector<double>{1, 0, 0}));
  CHECK_FALSE(SphereSet::cap(north, 0.5).contains(south));
  const SphereSet both = SphereSet::union_of({SphereSet::cap(north, 0.1), SphereSet::cap(south, 0.1)});
  CHECK(both.contains(north));
  CHECK(both.contains(south));
  CHECK_FALSE(both.contains(std::vector<double>{1, 0, 0}));

  const CellPartition p = partition_sphere(3, 1.0);
  std::vector<bool> colors(p.size(), false);
  colors[0] = true;
  const auto scheme = std::shared_ptr<const ZonalPartition>(&p.scheme(), [](const ZonalPartition*) {});
  const SphereSet disco = SphereSet::cell_coloring(scheme, colors);
  CHECK(disco.contains(p.representative(0)));
  CHECK_FALSE(disco.contains(p.representative(1)));
}
