#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphcut/coloring.hpp"
#include "sphcut/construction.hpp"
#include "sphcut/graph.hpp"
#include "sphcut/rational.hpp"

namespace sphcut {

/// One checked inequality lhs <= rhs. margin = rhs - lhs and
/// pass <=> margin >= -tolerance. A skipped check carries its reason and
/// never counts as a required failure.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool required = true;
  bool skipped = false;
  std::string reason;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string provenance;

  [[nodiscard]] bool failed() const { return required && !skipped && !pass; }
};

CheckReport make_check(std::string name, double lhs, double rhs, double tolerance, std::string provenance,
                       std::vector<std::pair<std::string, std::string>> inputs = {}, bool required = true);

/// Shortest decimal text that reads back to the same double.
std::string format_real(double x);

struct BjsOptions {
  std::uint64_t seed = 0;
  std::size_t exact_limit = 30;
  unsigned jobs = 0;
  std::optional<Eigen::MatrixXd> initial;  // warm start for the coloring
};

/// sp(G) >= m / (pi (kappa_ub - 1)) with exact mc and a feasible kappa_ub.
/// Skipped when the coloring did not converge. Throws SizeError when the
/// graph is beyond the exact MaxCut limit.
CheckReport check_bjs(const Graph& g, const std::string& id, const BjsOptions& options = {});

struct ConstructionCheckOptions {
  std::uint64_t seed = 0;
  std::size_t exact_limit = 30;
  unsigned jobs = 0;
  /// delta in the chain; default -pi cos(theta), the numerical lemma's choice.
  std::optional<double> delta;
};

/// Reports, in order: identity-embedding kappa bound; mc <= (theta/pi + 5eps) e(G);
/// the chain mc/m - 1/2 <= theta/pi - 1/2 + 5eps = -arcsin(cos theta)/pi + 5eps
/// <= -cos(theta)/(pi - delta) <= 1/((pi - delta)(kappa - 1)), one report per
/// link. The MaxCut bound and its chain link are required only for an
/// unmodified parameter selection with exact mc; the numerical link is
/// descriptive and records the smallest delta that would close it.
std::vector<CheckReport> check_construction(const GeometricGraph& gg, const ConstructionCheckOptions& options = {});
/// Builds G(theta, epsilon) with `overrides`, then checks it.
std::vector<CheckReport> check_construction(double theta, double epsilon, const ConstructionOverrides& overrides = {},
                                            const ConstructionCheckOptions& options = {});

/// -arcsin(cos theta)/pi + eps <= -cos(theta)/(pi - delta) at
/// -cos(theta) = delta/pi, eps = delta^2 / (2 pi^3). Throws InputError for
/// delta outside (0, 1).
std::vector<CheckReport> check_numerical_lemma(const std::vector<double>& deltas);

/// `count` evenly spaced interior points of (1e-3, 1 - 1e-3).
std::vector<double> numerical_lemma_grid(std::size_t count);

/// Candidate sides for the hemisphere comparison on S^{d-1}: the hemisphere
/// itself, caps of measure 0.25 and 0.4, `unions` random two-cap unions and
/// `colorings` random cell colorings of an equal-area partition.
std::vector<SphereSet> default_candidates(int d, std::uint64_t seed, std::size_t unions = 2,
                                          std::size_t colorings = 5);

/// For every candidate: cut(candidate) <= cut(hemisphere) within 3 paired
/// standard errors, all estimated on one shared sample of N pairs.
std::vector<CheckReport> check_hemisphere_optimality(int d, double theta, std::size_t pairs, std::uint64_t seed,
                                                     const std::vector<SphereSet>& candidates, unsigned jobs = 0);

/// At d = choose_dimension(theta, eps): the fraction of edges at angle above
/// theta + eps is at most eps, and the hemisphere cut ratio is at most
/// theta/pi + 2 eps, each within 3 standard errors.
std::vector<CheckReport> check_opt_c(double theta, double epsilon, std::size_t pairs, std::uint64_t seed,
                                     unsigned jobs = 0);

struct RatioRecord {
  std::string graph_id;
  std::size_t n = 0;
  std::size_t m = 0;
  std::int64_t mc = 0;
  bool mc_exact = false;  // false: local-search lower bound, lower confidence
  Rational sp;
  double kappa = 0.0;
  std::string kappa_provenance;  // exact-family | SDP-feasible | identity-embedding
  double kappa_sdp = 0.0;        // solver value, NaN when not run or not converged
  double ratio = 0.0;            // m / (sp (kappa - 1))
  std::optional<Rational> ratio_exact;

  [[nodiscard]] double recompute_ratio() const;
};

struct SweepInstance {
  std::string id;
  Graph graph;
  /// Closed-form chi_vec when known.
  std::optional<double> kappa_exact;
  /// Identity-embedding kappa and points for constructed instances.
  std::optional<double> kappa_identity;
  std::optional<Eigen::MatrixXd> initial;
};

/// Family generators used by the sweep. Kappa is attached for complete
/// (n), complete bipartite (2) and odd cycles (1 + 1/cos(pi/n)).
SweepInstance complete_instance(std::size_t n);
SweepInstance bipartite_instance(std::size_t a, std::size_t b);
SweepInstance cycle_instance(std::size_t n);
SweepInstance petersen_instance();
SweepInstance constructed_instance(const GeometricGraph& gg);

struct SweepOptions {
  std::uint64_t seed = 0;
  std::size_t exact_limit = 30;
  std::size_t local_search_restarts = 64;
  unsigned jobs = 0;
};

struct SweepSummary {
  std::size_t count = 0;
  std::size_t lower_confidence = 0;
  double max_ratio = 0.0;
  std::string max_ratio_id;
  bool exceeds_three = false;
};

/// Ratio m / (sp (kappa - 1)) per instance, in input order. Instances run
/// concurrently; each draws from its own named substream.
std::vector<RatioRecord> ratio_sweep(const std::vector<SweepInstance>& instances, const SweepOptions& options = {});
SweepSummary summarize(const std::vector<RatioRecord>& records);

/// Small constructed instances (n <= 30) with overridden d and gamma. The
/// circle cases use gamma just above 2 pi / n so that n cells are produced,
/// with n chosen so no multiple of 2 pi / n equals theta.
struct ConstructionSpec {
  double theta_frac = 0.0;
  double epsilon = 0.0;
  int d = 0;
  double gamma = 0.0;
};
std::vector<ConstructionSpec> standard_construction_specs();
GeometricGraph build_from_spec(const ConstructionSpec& spec);

/// Complete graphs K3..K9, complete bipartite graphs, odd cycles C5..C15,
/// Petersen, 20 seeded G(n, p) with n <= 20 and the standard constructions:
/// 52 graphs.
std::vector<SweepInstance> bjs_suite(std::uint64_t seed);
std::vector<CheckReport> check_bjs_suite(const std::vector<SweepInstance>& instances, std::uint64_t seed,
                                         unsigned jobs = 0);

/// Runs independent jobs on up to `jobs` threads and returns results in
/// input order.
std::vector<CheckReport> run_checks(const std::vector<std::function<CheckReport()>>& tasks, unsigned jobs = 0);

bool all_required_pass(const std::vector<CheckReport>& reports);

void write_reports_csv(std::ostream& out, const std::vector<CheckReport>& reports);
void write_reports_json(std::ostream& out, const std::vector<CheckReport>& reports);
void write_ratios_csv(std::ostream& out, const std::vector<RatioRecord>& records);
void write_ratios_json(std::ostream& out, const std::vector<RatioRecord>& records, const SweepSummary& summary);

}  // namespace sphcut
