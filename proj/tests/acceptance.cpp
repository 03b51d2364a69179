// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sphcut/coloring.hpp"
#include "sphcut/construction.hpp"
#include "sphcut/maxcut.hpp"
#include "sphcut/random.hpp"
#include "sphcut/sphere.hpp"
#include "sphcut/verify.hpp"

using namespace sphcut;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Criterion 1
Outcome edwards_tightness() {
  std::string detail;
  bool ok = true;
  for (std::size_t n : {5, 7, 9}) {
    const Graph k = families::complete(n);
    const Rational sp = surplus(k, maxcut_exact(k).value);
    const auto bound = edwards_bound_exact(k.num_edges());
    ok = ok && bound && sp == *bound;
    detail += fmt("K%zu sp=%s bound=%s; ", n, sp.str().c_str(), bound ? bound->str().c_str() : "irrational");
  }
  return {ok, detail};
}

// Criterion 2
Outcome bjs_suite_check() {
  const auto suite = bjs_suite(kSeed);
  std::size_t random = 0;
  std::size_t constructed = 0;
  bool sizes_ok = true;
  for (const SweepInstance& s : suite) {
    if (s.id.rfind("G(", 0) == 0 && !s.initial) {
      ++random;
      sizes_ok = sizes_ok && s.graph.num_vertices() <= 20;
    }
    if (s.initial) {
      ++constructed;
      sizes_ok = sizes_ok && s.graph.num_vertices() <= 30;
    }
  }
  const auto reports = check_bjs_suite(suite, kSeed);
  std::size_t passed = 0;
  std::size_t skipped = 0;
  double min_margin = INFINITY;
  std::string failures;
  for (const CheckReport& r : reports) {
    skipped += r.skipped;
    if (r.skipped) continue;
    if (r.margin >= -1e-9) {
      ++passed;
    } else {
      failures += " " + r.name;
    }
    min_margin = std::min(min_margin, r.margin);
  }
  const bool ok = suite.size() >= 50 && random == 20 && constructed >= 10 && sizes_ok && skipped == 0 &&
                  passed == reports.size();
  return {ok, fmt("%zu graphs (%zu random, %zu constructed), %zu pass, %zu skipped, min margin %.4g%s",
                  suite.size(), random, constructed, passed, skipped, min_margin, failures.c_str())};
}

// Criterion 3
Outcome identity_bound() {
  std::vector<GeometricGraph> graphs;
  for (const ConstructionSpec& spec : standard_construction_specs()) graphs.push_back(build_from_spec(spec));
  graphs.push_back(build_construction(0.7 * kPi, 0.25, {.d = 4, .gamma = 1.4, .partition = {}}));
  graphs.push_back(build_construction(2 * kPi / 3, 0.3, {.d = 3, .gamma = 0.8, .partition = {}}));
  bool ok = true;
  double worst = -INFINITY;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const double bound = identity_embedding_kappa(graphs[i]);
    ColoringOptions co{.seed = derive_seed(kSeed, "identity/" + std::to_string(i)), .initial = {}};
    co.initial = lift_points(graphs[i], default_rank(graphs[i].graph.num_vertices(), graphs[i].graph.num_edges()));
    const VectorColoringResult r = chi_vec_upper(graphs[i].graph, co);
    ok = ok && r.converged && r.kappa_upper <= bound + 1e-4;
    if (r.converged) worst = std::max(worst, r.kappa_upper - bound);
  }
  return {ok, fmt("%zu constructed instances, max kappa_ub - (1 - 1/cos theta) = %.3g", graphs.size(), worst)};
}

// Criterion 4
Outcome coloring_exactness() {
  bool ok = true;
  double worst_complete = 0.0;
  for (std::size_t n = 3; n <= 8; ++n) {
    const VectorColoringResult r = chi_vec_upper(families::complete(n), {.seed = kSeed, .initial = {}});
    const double nn = static_cast<double>(n);
    ok = ok && r.converged && std::abs(r.kappa_upper - nn) <= 1e-3 && std::abs(r.kappa_spectral_lower - nn) <= 1e-3 &&
         r.kappa_spectral_lower <= r.kappa_upper + 1e-9;
    worst_complete = std::max(worst_complete, std::abs(r.kappa_upper - r.kappa_spectral_lower));
  }
  const std::vector<Graph> bipartite{families::complete_bipartite(1, 4), families::complete_bipartite(2, 3),
                                     families::complete_bipartite(3, 3), families::complete_bipartite(4, 5),
                                     families::cycle(4),                 families::cycle(8),
                                     families::cycle(12),                Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}),
                                     Graph(8, {{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3}, {2, 6},
                                               {3, 7}, {4, 5}, {4, 6}, {5, 7}, {6, 7}})};
  double worst_bip = 0.0;
  for (const Graph& g : bipartite) {
    const VectorColoringResult r = chi_vec_upper(g, {.seed = kSeed, .initial = {}});
    ok = ok && r.converged && std::abs(r.kappa_upper - 2.0) <= 1e-6;
    worst_bip = std::max(worst_bip, std::abs(r.kappa_upper - 2.0));
  }
  return {ok, fmt("K3..K8 max sandwich gap %.2g; %zu bipartite graphs max |kappa-2| %.2g", worst_complete,
                  bipartite.size(), worst_bip)};
}

// Criterion 5
Outcome rounding_calibration() {
  bool ok = true;
  std::string detail;
  const Graph edge(2, {{0, 1}});
  for (double frac : {0.55, 0.7, 0.9}) {
    Eigen::MatrixXd x(2, 2);
    x << 1, 0, std::cos(frac * kPi), std::sin(frac * kPi);
    const RoundingSummary s = hyperplane_round(Embedding(edge, x), edge, 100'000, derive_seed(kSeed, "edge"));
    const double sigma = std::sqrt(frac * (1 - frac) / 1e5);
    ok = ok && std::abs(s.mean - frac) <= 3 * sigma;
    detail += fmt("%.2f: %.4f (%.1f sigma); ", frac, s.mean, std::abs(s.mean - frac) / sigma);
  }
  std::vector<Graph> graphs{families::complete(5), families::cycle(5), families::cycle(7), families::petersen(),
                            families::complete_bipartite(3, 3)};
  for (std::uint64_t k = 0; k < 3; ++k) graphs.push_back(families::random_gnp(14, 0.4, derive_seed(kSeed, "rg") + k));
  graphs.push_back(build_from_spec(standard_construction_specs()[0]).graph);
  graphs.push_back(build_from_spec(standard_construction_specs()[8]).graph);
  double worst = 0.0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const VectorColoringResult r = chi_vec_upper(graphs[i], {.seed = kSeed + i, .initial = {}});
    const RoundingSummary s = hyperplane_round(*r.embedding, graphs[i], 20'000, kSeed + i);
    const double expected = expected_hyperplane_cut(*r.embedding, graphs[i]);
    const double z = s.std_error > 0 ? std::abs(s.mean - expected) / s.std_error : 0.0;
    ok = ok && std::abs(s.mean - expected) <= 3 * s.std_error + 1e-9;
    worst = std::max(worst, z);
  }
  detail += fmt("%zu graphs, worst |mean - expected| = %.2f sigma", graphs.size(), worst);
  return {ok, detail};
}

// Criterion 6
Outcome opt_c() {
  const auto reports = check_opt_c(2 * kPi / 3, 0.2, 1'000'000, kSeed);
  const CheckReport& h = reports[1];
  return {h.pass && all_required_pass(reports),
          fmt("d=%d: hemisphere ratio %.5f <= %.5f + %.5f (far edges %.4f <= 0.2)", choose_dimension(2 * kPi / 3, 0.2),
              h.lhs, h.rhs, h.tolerance, reports[0].lhs)};
}

// Criterion 7
Outcome hemisphere() {
  const auto candidates = default_candidates(3, kSeed, 2, 5);
  const auto reports = check_hemisphere_optimality(3, 2 * kPi / 3, 1'000'000, kSeed, candidates);
  double closest = INFINITY;
  for (std::size_t i = 1; i < reports.size(); ++i) closest = std::min(closest, reports[i].margin / reports[i].tolerance * 3);
  return {all_required_pass(reports),
          fmt("%zu candidates (caps 0.25/0.4, 2 two-cap unions, 5 cell colorings); smallest lead %.1f paired sigma",
              candidates.size() - 1, closest)};
}

// Criterion 8
Outcome numerical_lemma() {
  const auto reports = check_numerical_lemma(numerical_lemma_grid(1000));
  double min_margin = INFINITY;
  bool ok = reports.size() == 1000;
  for (const CheckReport& r : reports) {
    ok = ok && r.margin >= 0.0 && r.tolerance == 1e-12;
    min_margin = std::min(min_margin, r.margin);
  }
  return {ok, fmt("1000 grid points, min margin %.3g", min_margin)};
}

// Criterion 9
Outcome oracle_equivalence() {
  bool ok = true;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng = make_stream(kSeed, "oracle", k);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 16)(rng);
    const double p = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    const Graph g = families::random_gnp(n, p, rng());
    ok = ok && maxcut_exact(g).value == oracle::naive_maxcut(g);
  }
  double err2 = 0.0;
  double err3 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double phi = oracle::kPi * i / 999.0;
    err2 = std::max(err2, std::abs(cap_measure(2, phi) - phi / oracle::kPi));
    err3 = std::max(err3, std::abs(cap_measure(3, phi) - (1 - std::cos(phi)) / 2));
  }
  ok = ok && err2 <= 1e-10 && err3 <= 1e-10;
  return {ok, fmt("100 random graphs agree; cap_measure max error d=2 %.2g, d=3 %.2g", err2, err3)};
}

// Criterion 10
Outcome ratio_sweep_check() {
  std::vector<SweepInstance> instances;
  for (std::size_t n = 3; n <= 9; ++n) instances.push_back(complete_instance(n));
  for (const ConstructionSpec& spec : standard_construction_specs()) {
    instances.push_back(constructed_instance(build_from_spec(spec)));
  }
  const auto records = ratio_sweep(instances, {.seed = kSeed});
  bool ok = true;
  std::string constructed;
  for (const RatioRecord& r : records) {
    if (r.kappa_provenance == "exact-family") {
      const auto n = static_cast<std::int64_t>(r.n);
      // Odd n: 2n/(n-1). Even n: mc = n^2/4 makes the ratio exactly 2.
      const Rational expected = n % 2 == 1 ? Rational(2 * n, n - 1) : Rational(2);
      ok = ok && r.ratio_exact && *r.ratio_exact == expected;
    } else {
      ok = ok && r.mc_exact && std::isfinite(r.ratio) && std::abs(r.ratio - r.recompute_ratio()) < 1e-12 &&
           (r.kappa_provenance == "identity-embedding" || r.kappa_provenance == "SDP-feasible");
      constructed += fmt(" %.3f", r.ratio);
    }
  }
  const SweepSummary s = summarize(records);
  return {ok, fmt("K3..K9 exact; constructed ratios:%s; max %.3f (%s)", constructed.c_str(), s.max_ratio,
                  s.max_ratio_id.c_str())};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria{
      {"Edwards tightness", edwards_tightness, 1.0},
      {"BJS inequality suite", bjs_suite_check, 600.0},
      {"identity-embedding bound", identity_bound, INFINITY},
      {"vector coloring exactness", coloring_exactness, INFINITY},
      {"rounding calibration", rounding_calibration, INFINITY},
      {"opt_c hemisphere ratio", opt_c, 60.0},
      {"hemisphere optimality", hemisphere, INFINITY},
      {"numerical lemma grid", numerical_lemma, 1.0},
      {"oracle equivalence", oracle_equivalence, INFINITY},
      {"ratio sweep", ratio_sweep_check, INFINITY},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > criteria[i].budget_seconds) {
      o.pass = false;
      o.detail += fmt(" (over the %.0fs budget)", criteria[i].budget_seconds);
    }
    failures += !o.pass;
    std::printf("%s %2zu %s [%.2fs]: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
