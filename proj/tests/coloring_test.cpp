#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sphcut/coloring.hpp"
#include "sphcut/errors.hpp"
#include "sphcut/random.hpp"

using namespace sphcut;

namespace {

// Minimum over a dense sweep of the step angle phi of the largest edge inner
// product of the circle embedding x_k = (cos k phi, sin k phi) of C5.
double c5_circle_sweep_kappa() {
  double best = 1.0;
  constexpr int kSteps = 2'000'000;
  for (int i = 0; i <= kSteps; ++i) {
    const double phi = 2 * kPi * i / kSteps;
    double worst = -1.0;
    for (int k = 0; k < 5; ++k) worst = std::max(worst, std::cos(((k + 1) % 5 - k) * phi));
    best = std::min(best, worst);
  }
  return 1 - 1 / best;
}

Eigen::MatrixXd random_rotation(Eigen::Index r, std::uint64_t seed) {
  Rng rng = make_stream(seed, "rotation");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) a(i, j) = normal(rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

}  // namespace

TEST_CASE("complete graphs: simplex value and closed sandwich") {
  for (std::size_t n = 3; n <= 8; ++n) {
    const Graph k = families::complete(n);
    const VectorColoringResult r = chi_vec_upper(k, {.seed = 1});
    REQUIRE(r.converged);
    CHECK(r.kappa_upper == doctest::Approx(static_cast<double>(n)).epsilon(1e-3 / n));
    CHECK(r.kappa_spectral_lower == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
    CHECK(r.kappa_upper - r.kappa_spectral_lower <= 1e-3);
    CHECK(r.embedding->max_edge_dot() <= -1.0 / (r.kappa_upper - 1.0) + 1e-8);
  }
}

TEST_CASE("bipartite graphs have kappa 2") {
  for (const Graph& g : {families::complete_bipartite(3, 3), families::cycle(6), families::complete_bipartite(2, 5)}) {
    const VectorColoringResult r = chi_vec_upper(g, {.seed = 3});
    REQUIRE(r.converged);
    CHECK(std::abs(r.kappa_upper - 2.0) <= 1e-6);
    CHECK(r.kappa_spectral_lower == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("C5 matches the circle-embedding sweep") {
  const double oracle_kappa = c5_circle_sweep_kappa();
  CHECK(oracle_kappa == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  const VectorColoringResult r = chi_vec_upper(families::cycle(5), {.seed = 2});
  CHECK(std::abs(r.kappa_upper - oracle_kappa) <= 1e-3);
}

TEST_CASE("spectral lower bound") {
  CHECK(chi_vec_spectral_lower(families::complete(6)) == doctest::Approx(6.0));
  CHECK(chi_vec_spectral_lower(families::complete_bipartite(3, 3)) == doctest::Approx(2.0));
  // Petersen spectrum {3, 1^5, -2^4}.
  CHECK(chi_vec_spectral_lower(families::petersen()) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK_THROWS_AS(chi_vec_spectral_lower(Graph(3, {})), InputError);
  CHECK_THROWS_AS(chi_vec_upper(Graph(3, {})), InputError);
}

TEST_CASE("sandwich and feasibility on random graphs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = families::random_gnp(14, 0.4, 500 + seed);
    if (g.num_edges() == 0) continue;
    const VectorColoringResult r = chi_vec_upper(g, {.seed = seed});
    REQUIRE(r.converged);
    CHECK(r.kappa_spectral_lower <= r.kappa_upper + 1e-6);
    // Re-verify from raw vectors.
    const Eigen::MatrixXd& x = r.embedding->vectors();
    for (Eigen::Index i = 0; i < x.rows(); ++i) CHECK(std::abs(x.row(i).norm() - 1.0) <= 1e-9);
    double top = -1.0;
    for (const Edge& e : g.edges()) top = std::max(top, x.row(e.u).dot(x.row(e.v)));
    CHECK(top == doctest::Approx(r.embedding->max_edge_dot()).epsilon(1e-12));
    CHECK(top <= -1.0 / (r.kappa_upper - 1.0) + 1e-8);
  }
}

TEST_CASE("deterministic per seed and independent of jobs") {
  const Graph g = families::petersen();
  const auto a = chi_vec_upper(g, {.seed = 9, .jobs = 1});
  const auto b = chi_vec_upper(g, {.seed = 9, .jobs = 3});
  CHECK(a.kappa_upper == b.kappa_upper);
  CHECK(a.embedding->vectors() == b.embedding->vectors());
}

TEST_CASE("too small a rank is reported as non-converged") {
  const VectorColoringResult r = chi_vec_upper(families::complete(4), {.rank = 2, .restarts = 2});
  CHECK_FALSE(r.converged);
  CHECK(std::isnan(r.kappa_upper));
  CHECK_THROWS_AS(chi_vec_upper(families::complete(4), {.rank = 1}), InputError);
}

TEST_CASE("rotation invariance") {
  const Graph g = families::petersen();
  const VectorColoringResult r = chi_vec_upper(g, {.seed = 4});
  const Eigen::MatrixXd q = random_rotation(r.embedding->rank(), 8);
  const Embedding rotated(g, r.embedding->vectors() * q);
  CHECK(std::abs(*rotated.kappa() - *r.embedding->kappa()) <= 1e-10);
  CHECK(std::abs(expected_hyperplane_cut(rotated, g) - expected_hyperplane_cut(*r.embedding, g)) <= 1e-10);
}

TEST_CASE("identity embedding bound") {
  const GeometricGraph gg = build_construction(2 * kPi / 3, 0.3, {.d = 3, .gamma = 1.2});
  CHECK(identity_embedding_kappa(gg) == doctest::Approx(3.0).epsilon(1e-12));
  const VectorColoringResult r = chi_vec_upper(gg.graph, {.seed = 1});
  REQUIRE(r.converged);
  CHECK(r.kappa_upper <= 3.0 + 1e-4);

  GeometricGraph broken = gg;
  const Edge e = broken.graph.edges().front();
  for (int j = 0; j < 3; ++j) broken.points[e.v * 3 + j] = broken.points[e.u * 3 + j];
  CHECK_THROWS_AS(identity_embedding_kappa(broken), CorruptionError);

  GeometricGraph right_angle = gg;
  right_angle.params.theta = kPi / 2;
  CHECK_THROWS_AS(identity_embedding_kappa(right_angle), InputError);
}

TEST_CASE("expected hyperplane cut closed forms") {
  const Graph edge(2, {{0, 1}});
  Eigen::MatrixXd anti(2, 2);
  anti << 1, 0, -1, 0;
  CHECK(expected_hyperplane_cut(Embedding(edge, anti), edge) == doctest::Approx(1.0));

  const Graph k3 = families::complete(3);
  Eigen::MatrixXd tri(3, 2);
  for (int k = 0; k < 3; ++k) tri.row(k) << std::cos(2 * kPi * k / 3), std::sin(2 * kPi * k / 3);
  CHECK(expected_hyperplane_cut(Embedding(k3, tri), k3) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hyperplane rounding") {
  const Graph edge(2, {{0, 1}});
  Eigen::MatrixXd anti(2, 3);
  anti << 0, 0, 1, 0, 0, -1;
  const RoundingSummary all = hyperplane_round(Embedding(edge, anti), edge, 1000, 1);
  CHECK(all.mean == 1.0);

  for (double frac : {0.55, 0.7, 0.9}) {
    const double theta = frac * kPi;
    Eigen::MatrixXd x(2, 2);
    x << 1, 0, std::cos(theta), std::sin(theta);
    const RoundingSummary s = hyperplane_round(Embedding(edge, x), edge, 100'000, 17);
    const double sigma = std::sqrt(frac * (1 - frac) / 100'000);
    CHECK(std::abs(s.mean - frac) <= 3 * sigma);
  }

  for (const Graph& g : {families::petersen(), families::cycle(7), families::complete(6)}) {
    const VectorColoringResult r = chi_vec_upper(g, {.seed = 5});
    const RoundingSummary s = hyperplane_round(*r.embedding, g, 20'000, 3);
    CHECK(std::abs(s.mean - expected_hyperplane_cut(*r.embedding, g)) <= 3 * s.std_error + 1e-9);
    CHECK(s.best.value == s.max);
    CHECK(s.max <= maxcut_exact(g).value);
    // Every graph's exact MaxCut is at least the expected hyperplane cut.
    CHECK(static_cast<double>(maxcut_exact(g).value) >= expected_hyperplane_cut(*r.embedding, g) - 1e-9);
  }

  const Graph p = families::petersen();
  const auto r = chi_vec_upper(p, {.seed = 5});
  const RoundingSummary a = hyperplane_round(*r.embedding, p, 3000, 4, 1);
  const RoundingSummary b = hyperplane_round(*r.embedding, p, 3000, 4, 3);
  CHECK(a.mean == b.mean);
  CHECK(a.best.side == b.best.side);
}

TEST_CASE("strict vector chromatic number") {
  for (std::size_t n = 3; n <= 8; ++n) {
    const StrictColoringResult s = theta_complement_upper(families::complete(n), {.seed = 2});
    REQUIRE(s.converged);
    CHECK(std::abs(s.kappa - static_cast<double>(n)) <= 1e-3);
    CHECK(s.max_violation <= 1e-6);
  }
  const StrictColoringResult b = theta_complement_upper(families::complete_bipartite(3, 3), {.seed = 2});
  REQUIRE(b.converged);
  CHECK(std::abs(b.kappa - 2.0) <= 1e-3);

  for (const Graph& g : {families::petersen(), families::cycle(5), families::cycle(9)}) {
    const VectorColoringResult r = chi_vec_upper(g, {.seed = 6});
    const StrictColoringResult s = theta_complement_upper(g, {.seed = 6, .initial = r.embedding->vectors()});
    REQUIRE(s.converged);
    CHECK(s.kappa >= r.kappa_upper - 1e-4);
  }
}

TEST_CASE("embedding file round trip") {
  const Graph g = families::cycle(5);
  const auto r = chi_vec_upper(g, {.seed = 1});
  std::stringstream buffer;
  write_embedding(buffer, *r.embedding);
  const Embedding back(g, parse_embedding(buffer));
  CHECK((back.vectors() - r.embedding->vectors()).cwiseAbs().maxCoeff() <= 1e-15);
  std::istringstream bad("2 3\n1 0 0\n");
  CHECK_THROWS_AS(parse_embedding(bad), IoError);
}
