#include "sphcut/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "sphcut/errors.hpp"
#include "sphcut/maxcut.hpp"
#include "sphcut/partition.hpp"
#include "sphcut/random.hpp"
#include "sphcut/sphere.hpp"

namespace sphcut {

namespace {

using Inputs = std::vector<std::pair<std::string, std::string>>;

unsigned worker_count(unsigned jobs, std::size_t tasks) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned want = jobs == 0 ? hw : jobs;
  return static_cast<unsigned>(std::clamp<std::size_t>(tasks, 1, want));
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  const unsigned workers = worker_count(jobs, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

CheckReport skipped(std::string name, std::string reason, Inputs inputs) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = r.rhs = r.margin = std::numeric_limits<double>::quiet_NaN();
  r.skipped = true;
  r.required = false;
  r.reason = std::move(reason);
  r.inputs = std::move(inputs);
  r.provenance = "not evaluated";
  return r;
}

CheckReport equality_check(std::string name, double lhs, double rhs, double tolerance, std::string provenance,
                           Inputs inputs) {
  CheckReport r = make_check(std::move(name), lhs, rhs, tolerance, std::move(provenance), std::move(inputs));
  r.margin = -std::abs(rhs - lhs);
  r.pass = r.margin >= -tolerance;
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_inputs(const Inputs& inputs) {
  std::string out;
  for (const auto& [k, v] : inputs) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

std::string flag(bool b) { return b ? "true" : "false"; }

nlohmann::ordered_json real_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

CheckReport make_check(std::string name, double lhs, double rhs, double tolerance, std::string provenance,
                       Inputs inputs, bool required) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.pass = r.margin >= -tolerance;
  r.required = required;
  r.inputs = std::move(inputs);
  r.provenance = std::move(provenance);
  return r;
}

CheckReport check_bjs(const Graph& g, const std::string& id, const BjsOptions& options) {
  const std::size_t m = g.num_edges();
  Inputs inputs{{"graph", id},
                {"n", std::to_string(g.num_vertices())},
                {"m", std::to_string(m)},
                {"seed", std::to_string(options.seed)}};
  const std::string name = "bjs/" + id;
  if (m == 0) return skipped(name, "edgeless graph", std::move(inputs));

  const CutResult mc = maxcut_exact(g, {.max_vertices = options.exact_limit, .jobs = options.jobs});
  const Rational sp = surplus(m, mc.value);
  ColoringOptions co{.seed = options.seed, .jobs = options.jobs, .initial = options.initial};
  const VectorColoringResult col = chi_vec_upper(g, co);
  inputs.emplace_back("mc", std::to_string(mc.value));
  inputs.emplace_back("sp", sp.str());
  inputs.emplace_back("kappa_spectral_lower", format_real(col.kappa_spectral_lower));
  if (!col.converged) return skipped(name, "vector coloring did not converge", std::move(inputs));
  inputs.emplace_back("kappa_ub", format_real(col.kappa_upper));

  const double bound = static_cast<double>(m) / (kPi * (col.kappa_upper - 1.0));
  return make_check(name, bound, sp.to_double(), 1e-9,
                    "lhs: m/(pi(kappa_ub-1)) with SDP-feasible kappa_ub; rhs: exact sp", std::move(inputs));
}

std::vector<CheckReport> check_construction(const GeometricGraph& gg, const ConstructionCheckOptions& options) {
  const ConstructionParams& p = gg.params;
  const double theta = p.theta;
  const double eps = p.epsilon;
  const std::size_t n = gg.graph.num_vertices();
  const std::size_t m = gg.graph.num_edges();
  const double delta = options.delta.value_or(-kPi * std::cos(theta));
  const bool modified = p.d_overridden || p.gamma_overridden;
  const std::string tag = "construction[theta=" + format_real(theta) + ",eps=" + format_real(eps) +
                          ",d=" + std::to_string(p.d) + ",n=" + std::to_string(n) + "]";
  const Inputs base{{"theta", format_real(theta)},
                    {"epsilon", format_real(eps)},
                    {"d", std::to_string(p.d)},
                    {"gamma", format_real(p.gamma)},
                    {"n", std::to_string(n)},
                    {"m", std::to_string(m)},
                    {"overridden", flag(modified)},
                    {"seed", std::to_string(options.seed)}};

  std::vector<CheckReport> out;
  const double kappa_id = identity_embedding_kappa(gg);
  std::optional<VectorColoringResult> col;
  if (m > 0) {
    ColoringOptions co{.seed = options.seed, .jobs = options.jobs, .initial = {}};
    co.initial = lift_points(gg, default_rank(n, m));
    col = chi_vec_upper(gg.graph, co);
  }
  const bool converged = col && col->converged;
  {
    Inputs in = base;
    in.emplace_back("kappa_identity", format_real(kappa_id));
    if (!converged) {
      out.push_back(skipped(tag + "/kappa", m == 0 ? "edgeless graph" : "vector coloring did not converge", in));
    } else {
      out.push_back(make_check(tag + "/kappa", col->kappa_upper, kappa_id, 1e-4,
                               "lhs: SDP-feasible kappa_ub; rhs: 1-1/cos(theta), identity embedding verified",
                               std::move(in)));
    }
  }

  const bool exact = n <= options.exact_limit;
  const CutResult mc = m == 0 ? CutResult{{}, 0, true}
                       : exact ? maxcut_exact(gg.graph, {.max_vertices = options.exact_limit, .jobs = options.jobs})
                               : maxcut_local_search(gg.graph, derive_seed(options.seed, "maxcut"), 64);
  const double mixed = potentially_mixed_fraction(gg);
  const bool mc_required = exact && !modified;
  const std::string mc_source = exact ? "exact mc" : "local-search mc (lower bound, descriptive)";
  {
    Inputs in = base;
    in.emplace_back("mc", std::to_string(mc.value));
    in.emplace_back("mc_exact", flag(exact));
    in.emplace_back("mixed_fraction", format_real(mixed));
    in.emplace_back("mixed_bound", format_real(eps));
    out.push_back(make_check(tag + "/maxcut", static_cast<double>(mc.value),
                             (theta / kPi + 5 * eps) * static_cast<double>(m), 1e-9,
                             "lhs: " + mc_source + "; rhs: (theta/pi+5eps)e(G)", std::move(in), mc_required));
  }

  const double eps5 = 5 * eps;
  const double link0 = m == 0 ? 0.0 : static_cast<double>(mc.value) / static_cast<double>(m) - 0.5;
  const double link1 = theta / kPi - 0.5 + eps5;
  const double link2 = -std::asin(std::cos(theta)) / kPi + eps5;
  const double link3 = -std::cos(theta) / (kPi - delta);
  {
    Inputs in = base;
    in.emplace_back("mc", std::to_string(mc.value));
    out.push_back(make_check(tag + "/chain/maxcut", link0, link1, 1e-9,
                             "lhs: " + mc_source + "; rhs: closed form with eps'=5eps", std::move(in), mc_required));
  }
  out.push_back(equality_check(tag + "/chain/identity", link1, link2, 1e-12,
                               "equality: arccos(x)+arcsin(x)=pi/2 evaluated in floating point", base));
  {
    Inputs in = base;
    in.emplace_back("delta", format_real(delta));
    const double needed = link2 > 0 ? kPi + std::cos(theta) / link2 : std::numeric_limits<double>::quiet_NaN();
    in.emplace_back("delta_needed", format_real(needed));
    out.push_back(make_check(tag + "/chain/numerical", link2, link3, 1e-12,
                             "closed form; descriptive at desk parameters", std::move(in), false));
  }
  {
    Inputs in = base;
    in.emplace_back("delta", format_real(delta));
    if (!converged) {
      out.push_back(skipped(tag + "/chain/coloring", "vector coloring did not converge", std::move(in)));
    } else {
      in.emplace_back("kappa_ub", format_real(col->kappa_upper));
      out.push_back(make_check(tag + "/chain/coloring", link3,
                               1.0 / ((kPi - delta) * (col->kappa_upper - 1.0)), 1e-4 / (kPi - delta),
                               "rhs: SDP-feasible kappa_ub; tolerance carries the 1e-4 kappa slack", std::move(in)));
    }
  }
  return out;
}

std::vector<CheckReport> check_construction(double theta, double epsilon, const ConstructionOverrides& overrides,
                                            const ConstructionCheckOptions& options) {
  return check_construction(build_construction(theta, epsilon, overrides), options);
}

std::vector<double> numerical_lemma_grid(std::size_t count) {
  std::vector<double> grid(count);
  const double lo = 1e-3;
  const double hi = 1.0 - 1e-3;
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(count + 1);
  }
  return grid;
}

std::vector<CheckReport> check_numerical_lemma(const std::vector<double>& deltas) {
  std::vector<CheckReport> out;
  out.reserve(deltas.size());
  for (double delta : deltas) {
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
    const double x = delta / kPi;
    const double theta = std::acos(-x);
    const double eps = delta * delta / (2 * kPi * kPi * kPi);
    const double lhs = -std::asin(std::cos(theta)) / kPi + eps;
    const double rhs = -std::cos(theta) / (kPi - delta);
    out.push_back(make_check("numerical_lemma/delta=" + format_real(delta), lhs, rhs, 1e-12,
                             "closed form in floating point",
                             {{"delta", format_real(delta)},
                              {"x", format_real(x)},
                              {"theta", format_real(theta)},
                              {"epsilon", format_real(eps)}}));
  }
  return out;
}

std::vector<SphereSet> default_candidates(int d, std::uint64_t seed, std::size_t unions, std::size_t colorings) {
  std::vector<double> pole(d, 0.0);
  pole[0] = 1.0;
  std::vector<SphereSet> out;
  out.push_back(SphereSet::hemisphere(pole));
  out.push_back(SphereSet::cap_of_measure(pole, 0.25));
  out.push_back(SphereSet::cap_of_measure(pole, 0.4));

  for (std::size_t k = 0; k < unions; ++k) {
    Rng rng = make_stream(seed, "candidates/union", k);
    std::uniform_real_distribution<double> measure(0.1, 0.35);
    std::vector<SphereSet> parts;
    std::string name = "union";
    for (int c = 0; c < 2; ++c) {
      std::vector<double> center(d);
      sample_unit_vector(rng, center);
      const double q = measure(rng);
      parts.push_back(SphereSet::cap_of_measure(center, q));
      name += (c == 0 ? "(" : ",") + format_real(q);
    }
    SphereSet u = SphereSet::union_of(std::move(parts));
    out.emplace_back(name + ")#" + std::to_string(k), [u = std::move(u)](std::span<const double> x) { return u.contains(x); });
  }

  if (colorings > 0) {
    const double gamma = d == 2 ? 0.2 : d == 3 ? 0.5 : 1.0;
    const CellPartition cells = partition_sphere(d, gamma);
    for (std::size_t k = 0; k < colorings; ++k) {
      Rng rng = make_stream(seed, "candidates/coloring", k);
      std::bernoulli_distribution coin(0.5);
      std::vector<bool> colors(cells.size());
      for (std::size_t i = 0; i < colors.size(); ++i) colors[i] = coin(rng);
      SphereSet s = SphereSet::cell_coloring(cells.shared_scheme(), std::move(colors));
      out.emplace_back("cell_coloring#" + std::to_string(k) + "[" + std::to_string(cells.size()) + " cells]",
                       [s = std::move(s)](std::span<const double> x) { return s.contains(x); });
    }
  }
  return out;
}

std::vector<CheckReport> check_hemisphere_optimality(int d, double theta, std::size_t pairs, std::uint64_t seed,
                                                     const std::vector<SphereSet>& candidates, unsigned jobs) {
  const EdgeAngleSample sample = sample_continuous_pairs(d, theta, pairs, seed, jobs);
  std::vector<double> pole(d, 0.0);
  pole[0] = 1.0;
  const SphereSet hemi = SphereSet::hemisphere(pole);
  const Estimate h = estimate_cut_measure(sample, hemi);
  std::vector<CheckReport> out;
  for (const SphereSet& cand : candidates) {
    const Estimate c = estimate_cut_measure(sample, cand);
    const Estimate diff = compare_cut_measures(sample, cand, hemi);
    out.push_back(make_check(
        "hemisphere/" + cand.name(), c.value, h.value, 3 * diff.std_error,
        "Monte Carlo: cut fractions on one shared sample; tolerance 3 paired stderr",
        {{"d", std::to_string(d)},
         {"theta", format_real(theta)},
         {"pairs", std::to_string(pairs)},
         {"retained", std::to_string(sample.retained())},
         {"seed", std::to_string(seed)},
         {"candidate_stderr", format_real(c.std_error)},
         {"hemisphere_stderr", format_real(h.std_error)},
         {"paired_stderr", format_real(diff.std_error)}}));
  }
  return out;
}

std::vector<CheckReport> check_opt_c(double theta, double epsilon, std::size_t pairs, std::uint64_t seed,
                                     unsigned jobs) {
  validate_theta_epsilon(theta, epsilon);
  const int d = choose_dimension(theta, epsilon);
  const EdgeAngleSample sample = sample_continuous_pairs(d, theta, pairs, seed, jobs);
  std::vector<double> pole(d, 0.0);
  pole[0] = 1.0;
  const Estimate far = far_edge_fraction(sample, epsilon);
  const Estimate cut = estimate_cut_measure(sample, SphereSet::hemisphere(pole));
  const Inputs in{{"theta", format_real(theta)},
                  {"epsilon", format_real(epsilon)},
                  {"d", std::to_string(d)},
                  {"pairs", std::to_string(pairs)},
                  {"retained", std::to_string(sample.retained())},
                  {"seed", std::to_string(seed)}};
  Inputs far_in = in;
  far_in.emplace_back("stderr", format_real(far.std_error));
  Inputs cut_in = in;
  cut_in.emplace_back("stderr", format_real(cut.std_error));
  return {make_check("opt_c/far_edges", far.value, epsilon, 3 * far.std_error,
                     "Monte Carlo: fraction of edges above theta+eps; tolerance 3 stderr", std::move(far_in)),
          make_check("opt_c/hemisphere", cut.value, theta / kPi + 2 * epsilon, 3 * cut.std_error,
                     "Monte Carlo: hemisphere cut ratio; tolerance 3 stderr", std::move(cut_in))};
}

double RatioRecord::recompute_ratio() const {
  return static_cast<double>(m) / (sp.to_double() * (kappa - 1.0));
}

SweepInstance complete_instance(std::size_t n) {
  return {"K" + std::to_string(n), families::complete(n), static_cast<double>(n), {}, {}};
}

SweepInstance bipartite_instance(std::size_t a, std::size_t b) {
  return {"K" + std::to_string(a) + "," + std::to_string(b), families::complete_bipartite(a, b), 2.0, {}, {}};
}

SweepInstance cycle_instance(std::size_t n) {
  const std::optional<double> kappa =
      n % 2 == 0 ? 2.0 : 1.0 + 1.0 / std::cos(kPi / static_cast<double>(n));
  return {"C" + std::to_string(n), families::cycle(n), kappa, {}, {}};
}

SweepInstance petersen_instance() { return {"Petersen", families::petersen(), {}, {}, {}}; }

SweepInstance constructed_instance(const GeometricGraph& gg) {
  const ConstructionParams& p = gg.params;
  SweepInstance s{"G(theta=" + format_real(p.theta) + ",eps=" + format_real(p.epsilon) + ",d=" +
                      std::to_string(p.d) + ",n=" + std::to_string(gg.graph.num_vertices()) + ")",
                  gg.graph,
                  {},
                  identity_embedding_kappa(gg),
                  {}};
  if (gg.graph.num_edges() > 0) {
    s.initial = lift_points(gg, default_rank(gg.graph.num_vertices(), gg.graph.num_edges()));
  }
  return s;
}

std::vector<RatioRecord> ratio_sweep(const std::vector<SweepInstance>& instances, const SweepOptions& options) {
  std::vector<RatioRecord> out(instances.size());
  const unsigned outer = worker_count(options.jobs, instances.size());
  const unsigned inner = outer > 1 ? 1 : options.jobs;
  parallel_for(instances.size(), options.jobs, [&](std::size_t i) {
    const SweepInstance& inst = instances[i];
    const Graph& g = inst.graph;
    if (g.num_edges() == 0) throw InputError("ratio sweep: " + inst.id + " has no edges");
    RatioRecord r;
    r.graph_id = inst.id;
    r.n = g.num_vertices();
    r.m = g.num_edges();
    r.mc_exact = r.n <= options.exact_limit;
    r.mc = r.mc_exact ? maxcut_exact(g, {.max_vertices = options.exact_limit, .jobs = inner}).value
                      : maxcut_local_search(g, derive_seed(options.seed, "sweep/maxcut/" + inst.id),
                                            options.local_search_restarts)
                            .value;
    r.sp = surplus(r.m, r.mc);

    ColoringOptions co{.seed = derive_seed(options.seed, "sweep/solve/" + inst.id), .jobs = inner, .initial = inst.initial};
    const VectorColoringResult col = chi_vec_upper(g, co);
    r.kappa_sdp = col.converged ? col.kappa_upper : std::numeric_limits<double>::quiet_NaN();

    if (inst.kappa_exact) {
      r.kappa = *inst.kappa_exact;
      r.kappa_provenance = "exact-family";
    } else if (inst.kappa_identity && !(col.converged && col.kappa_upper < *inst.kappa_identity - 1e-9)) {
      r.kappa = *inst.kappa_identity;
      r.kappa_provenance = "identity-embedding";
    } else if (col.converged) {
      r.kappa = col.kappa_upper;
      r.kappa_provenance = "SDP-feasible";
    } else {
      r.kappa = std::numeric_limits<double>::quiet_NaN();
      r.kappa_provenance = "none";
    }
    r.ratio = r.recompute_ratio();
    if (inst.kappa_exact && r.kappa == std::round(r.kappa)) {
      r.ratio_exact = Rational(static_cast<std::int64_t>(r.m)) /
                      (r.sp * Rational(static_cast<std::int64_t>(r.kappa) - 1));
    }
    out[i] = std::move(r);
  });
  return out;
}

SweepSummary summarize(const std::vector<RatioRecord>& records) {
  SweepSummary s;
  s.count = records.size();
  for (const RatioRecord& r : records) {
    s.lower_confidence += !r.mc_exact;
    if (std::isfinite(r.ratio) && r.ratio > s.max_ratio) {
      s.max_ratio = r.ratio;
      s.max_ratio_id = r.graph_id;
    }
  }
  s.exceeds_three = s.max_ratio > 3.0;
  return s;
}

std::vector<ConstructionSpec> standard_construction_specs() {
  std::vector<ConstructionSpec> out;
  for (double frac : {0.6, 2.0 / 3.0, 0.75}) {
    for (double gamma : {1.2, 1.4}) out.push_back({frac, 0.2, 3, gamma});
  }
  const std::pair<double, int> circle[] = {{0.55, 15}, {0.66, 20}, {0.7, 26}, {0.75, 27}, {0.8, 29}, {0.9, 23}};
  for (const auto& [frac, n] : circle) out.push_back({frac, 0.2, 2, 2 * kPi / n * (1 + 1e-9)});
  return out;
}

GeometricGraph build_from_spec(const ConstructionSpec& spec) {
  return build_construction(spec.theta_frac * kPi, spec.epsilon, {.d = spec.d, .gamma = spec.gamma, .partition = {}});
}

std::vector<SweepInstance> bjs_suite(std::uint64_t seed) {
  std::vector<SweepInstance> out;
  for (std::size_t n = 3; n <= 9; ++n) out.push_back(complete_instance(n));
  for (const auto& [a, b] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}}) {
    out.push_back(bipartite_instance(a, b));
  }
  for (std::size_t n = 5; n <= 15; n += 2) out.push_back(cycle_instance(n));
  out.push_back(petersen_instance());
  for (std::size_t k = 0; k < 20; ++k) {
    Rng rng = make_stream(seed, "bjs/random", k);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(6, 20)(rng);
    const double p = std::array{0.3, 0.5, 0.7}[k % 3];
    const std::uint64_t graph_seed = rng();
    out.push_back({"G(" + std::to_string(n) + "," + format_real(p) + ")#" + std::to_string(k),
                   families::random_gnp(n, p, graph_seed),
                   {},
                   {},
                   {}});
  }
  for (const ConstructionSpec& spec : standard_construction_specs()) {
    out.push_back(constructed_instance(build_from_spec(spec)));
  }
  return out;
}

std::vector<CheckReport> check_bjs_suite(const std::vector<SweepInstance>& instances, std::uint64_t seed,
                                         unsigned jobs) {
  std::vector<CheckReport> out(instances.size());
  const unsigned inner = worker_count(jobs, instances.size()) > 1 ? 1 : jobs;
  parallel_for(instances.size(), jobs, [&](std::size_t i) {
    const SweepInstance& inst = instances[i];
    out[i] = check_bjs(inst.graph, inst.id,
                       {.seed = derive_seed(seed, "bjs/solve/" + inst.id), .exact_limit = 30, .jobs = inner,
                        .initial = inst.initial});
  });
  return out;
}

std::vector<CheckReport> run_checks(const std::vector<std::function<CheckReport()>>& tasks, unsigned jobs) {
  std::vector<CheckReport> out(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) { out[i] = tasks[i](); });
  return out;
}

bool all_required_pass(const std::vector<CheckReport>& reports) {
  return std::none_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.failed(); });
}

void write_reports_csv(std::ostream& out, const std::vector<CheckReport>& reports) {
  out << "name,lhs,rhs,margin,tolerance,pass,required,skipped,provenance,inputs,reason\n";
  for (const CheckReport& r : reports) {
    out << csv_field(r.name) << ',' << format_real(r.lhs) << ',' << format_real(r.rhs) << ','
        << format_real(r.margin) << ',' << format_real(r.tolerance) << ',' << flag(r.pass) << ','
        << flag(r.required) << ',' << flag(r.skipped) << ',' << csv_field(r.provenance) << ','
        << csv_field(join_inputs(r.inputs)) << ',' << csv_field(r.reason) << '\n';
  }
}

void write_reports_json(std::ostream& out, const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  std::size_t failed = 0;
  std::size_t skipped_count = 0;
  for (const CheckReport& r : reports) {
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    checks.push_back({{"name", r.name},
                      {"pass", r.pass},
                      {"required", r.required},
                      {"skipped", r.skipped},
                      {"margin", real_json(r.margin)},
                      {"tolerance", real_json(r.tolerance)},
                      {"inputs", inputs}});
    failed += r.failed();
    skipped_count += r.skipped;
  }
  nlohmann::ordered_json doc{{"checks", reports.size()},
                             {"required_failures", failed},
                             {"skipped", skipped_count},
                             {"all_required_pass", failed == 0},
                             {"results", checks}};
  out << doc.dump(2) << '\n';
}

void write_ratios_csv(std::ostream& out, const std::vector<RatioRecord>& records) {
  out << "graph,n,m,mc,mc_exact,sp,kappa,kappa_provenance,kappa_sdp,ratio,ratio_exact\n";
  for (const RatioRecord& r : records) {
    out << csv_field(r.graph_id) << ',' << r.n << ',' << r.m << ',' << r.mc << ',' << flag(r.mc_exact) << ','
        << r.sp.str() << ',' << format_real(r.kappa) << ',' << r.kappa_provenance << ','
        << format_real(r.kappa_sdp) << ',' << format_real(r.ratio) << ','
        << (r.ratio_exact ? r.ratio_exact->str() : "") << '\n';
  }
}

void write_ratios_json(std::ostream& out, const std::vector<RatioRecord>& records, const SweepSummary& summary) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const RatioRecord& r : records) {
    rows.push_back({{"graph", r.graph_id},
                    {"n", r.n},
                    {"m", r.m},
                    {"mc", r.mc},
                    {"mc_exact", r.mc_exact},
                    {"sp", r.sp.str()},
                    {"kappa", real_json(r.kappa)},
                    {"kappa_provenance", r.kappa_provenance},
                    {"kappa_sdp", real_json(r.kappa_sdp)},
                    {"ratio", real_json(r.ratio)},
                    {"ratio_exact", r.ratio_exact ? nlohmann::ordered_json(r.ratio_exact->str()) : nullptr}});
  }
  nlohmann::ordered_json doc{{"count", summary.count},
                             {"lower_confidence", summary.lower_confidence},
                             {"max_ratio", real_json(summary.max_ratio)},
                             {"max_ratio_graph", summary.max_ratio_id},
                             {"exceeds_three", summary.exceeds_three},
                             {"records", rows}};
  out << doc.dump(2) << '\n';
}

}  // namespace sphcut
