#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sphcut/coloring.hpp"
#include "sphcut/construction.hpp"
#include "sphcut/errors.hpp"
#include "sphcut/maxcut.hpp"
#include "sphcut/partition.hpp"
#include "sphcut/random.hpp"
#include "sphcut/sphere.hpp"
#include "sphcut/verify.hpp"

namespace fs = std::filesystem;
using namespace sphcut;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitRuntime = 4;

struct Common {
  std::string out_dir;
  std::string prefix;
  unsigned jobs = 0;
  std::optional<std::uint64_t> seed;
};

struct Angle {
  std::optional<double> radians;
  std::optional<double> frac;

  [[nodiscard]] bool given() const { return radians || frac; }
  [[nodiscard]] double value() const { return radians ? *radians : *frac * kPi; }
};

using Config = std::vector<std::pair<std::string, std::string>>;

fs::path output_dir(const Common& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv("SPHCUT_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return ".";
}

class Outputs {
 public:
  Outputs(const Common& common, std::string command, Config config)
      : dir_(output_dir(common)), command_(std::move(command)), config_(std::move(config)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  /// Text file starting with the echoed configuration as '#' lines.
  void text(const std::string& name, const std::function<void(std::ostream&)>& body) {
    std::ostringstream buf;
    buf << "# sphcut " << command_ << '\n';
    for (const auto& [k, v] : config_) buf << "# " << k << '=' << v << '\n';
    body(buf);
    write(name, buf.str());
  }

  void json(const std::string& name, Json doc) {
    Json wrapped{{"command", command_}, {"config", config_json()}};
    for (auto& [k, v] : doc.items()) wrapped[k] = std::move(v);
    write(name, wrapped.dump(2) + "\n");
  }

  [[nodiscard]] Json config_json() const {
    Json c = Json::object();
    for (const auto& [k, v] : config_) c[k] = v;
    return c;
  }

 private:
  void write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
    std::cerr << "wrote " << path.string() << '\n';
  }

  fs::path dir_;
  std::string command_;
  Config config_;
};

void add_common(CLI::App* app, Common& c, const std::string& default_prefix) {
  c.prefix = default_prefix;
  app->add_option("--out-dir", c.out_dir, "Output directory (default: $SPHCUT_OUT_DIR, then .)");
  app->add_option("--prefix", c.prefix, "Output file name prefix")->capture_default_str();
  app->add_option("--jobs", c.jobs, "Worker threads, 0 = all cores; results do not depend on it");
}

void add_seed(CLI::App* app, Common& c, bool required) {
  auto* opt = app->add_option("--seed", c.seed, "Root seed; every random stream is derived from it by name");
  if (required) opt->required();
}

void add_angle(CLI::App* app, Angle& a, bool required) {
  auto* r = app->add_option("--theta", a.radians, "Threshold angle in radians");
  auto* f = app->add_option("--theta-frac", a.frac, "Threshold angle as a fraction of pi");
  r->excludes(f);
  f->excludes(r);
  if (required) {
    app->callback([&a] {
      if (!a.given()) throw CLI::RequiredError("--theta or --theta-frac");
    });
  }
}

std::string opt_str(const std::optional<double>& x) { return x ? format_real(*x) : "auto"; }
std::string opt_str(const std::optional<int>& x) { return x ? std::to_string(*x) : "auto"; }

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

// n ranges: "3..9", "5,7,9" or a mix "3..5,9".
std::vector<std::size_t> parse_range(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  auto number = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != s.size()) throw InputError("--n: not a count: '" + s + "'");
    return v;
  };
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(part));
      continue;
    }
    const std::size_t lo = number(part.substr(0, dots));
    const std::size_t hi = number(part.substr(dots + 2));
    if (lo > hi) throw InputError("--n: empty range " + part);
    for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  }
  if (out.empty()) throw InputError("--n: no values");
  return out;
}

GeometricGraph graph_with_points(const Graph& g, const std::string& points_path, double theta) {
  std::ifstream in = open_input(points_path);
  const CellPartition cells = parse_partition(in);
  GeometricGraph gg = build_threshold_graph(cells.representatives(), cells.dimension(), theta);
  if (gg.graph.num_vertices() != g.num_vertices() || gg.graph.edges() != g.edges()) {
    throw CorruptionError("points in " + points_path + " do not reproduce the graph at theta=" + format_real(theta));
  }
  gg.params.gamma = cells.gamma();
  return gg;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  Common common;
  Angle theta;
  double epsilon = 0.0;
  std::optional<int> d;
  std::optional<double> gamma;
  std::size_t max_cells = PartitionOptions{}.max_cells;
  int max_dimension = PartitionOptions{}.max_dimension;
};

int run_construct(const ConstructArgs& a) {
  const double theta = a.theta.value();
  ConstructionOverrides ov{.d = a.d, .gamma = a.gamma, .partition = {.max_dimension = a.max_dimension,
                                                                     .max_cells = a.max_cells}};
  const GeometricGraph gg = build_construction(theta, a.epsilon, ov);
  const ConstructionParams& p = gg.params;
  Config config{{"theta", format_real(theta)},
                {"epsilon", format_real(a.epsilon)},
                {"d", opt_str(a.d)},
                {"gamma", opt_str(a.gamma)},
                {"max_cells", std::to_string(a.max_cells)},
                {"max_dimension", std::to_string(a.max_dimension)}};
  if (a.common.seed) config.emplace_back("seed", std::to_string(*a.common.seed));
  Outputs out(a.common, "construct", config);
  out.text(a.common.prefix + ".graph", [&](std::ostream& os) { write_graph(os, gg.graph); });
  out.text(a.common.prefix + ".points", [&](std::ostream& os) { write_points(os, p.d, gg.points, p.gamma); });
  out.json(a.common.prefix + ".json", {{"theta", theta},
                                       {"epsilon", p.epsilon},
                                       {"d", p.d},
                                       {"gamma", p.gamma},
                                       {"d_overridden", p.d_overridden},
                                       {"gamma_overridden", p.gamma_overridden},
                                       {"n", gg.graph.num_vertices()},
                                       {"m", gg.graph.num_edges()},
                                       {"kappa_identity", identity_embedding_kappa(gg)},
                                       {"potentially_mixed_fraction", potentially_mixed_fraction(gg)}});
  std::cout << "n=" << gg.graph.num_vertices() << " m=" << gg.graph.num_edges() << " d=" << p.d
            << " gamma=" << format_real(p.gamma) << '\n';
  return 0;
}

// -------------------------------------------------------------------- solve

struct SolveArgs {
  Common common;
  std::string graph;
  std::string points;
  Angle theta;
  std::size_t rank = 0;
  std::size_t restarts = ColoringOptions{}.restarts;
  bool strict = false;
  std::size_t rounding_trials = 0;
};

int run_solve(const SolveArgs& a) {
  std::ifstream in = open_input(a.graph);
  const Graph g = parse_graph(in);
  const std::uint64_t seed = *a.common.seed;
  ColoringOptions co{.rank = a.rank, .seed = derive_seed(seed, "solve"), .restarts = a.restarts, .jobs = a.common.jobs,
                     .initial = {}};
  std::optional<double> kappa_identity;
  if (!a.points.empty()) {
    if (!a.theta.given()) throw InputError("--points needs --theta or --theta-frac");
    const GeometricGraph gg = graph_with_points(g, a.points, a.theta.value());
    kappa_identity = identity_embedding_kappa(gg);
    co.initial = lift_points(gg, a.rank ? a.rank : default_rank(g.num_vertices(), g.num_edges()));
  }
  const VectorColoringResult r = chi_vec_upper(g, co);

  Config config{{"graph", a.graph},
                {"points", a.points.empty() ? "none" : a.points},
                {"theta", a.theta.given() ? format_real(a.theta.value()) : "none"},
                {"rank", a.rank ? std::to_string(a.rank) : "auto"},
                {"restarts", std::to_string(a.restarts)},
                {"strict", a.strict ? "true" : "false"},
                {"rounding_trials", std::to_string(a.rounding_trials)},
                {"seed", std::to_string(seed)}};
  Outputs out(a.common, "solve", config);
  Json doc{{"n", g.num_vertices()},
           {"m", g.num_edges()},
           {"rank", r.embedding ? r.embedding->rank() : 0},
           {"converged", r.converged},
           {"kappa_upper", r.converged ? Json(r.kappa_upper) : Json(nullptr)},
           {"kappa_spectral_lower", r.kappa_spectral_lower},
           {"kappa_identity", kappa_identity ? Json(*kappa_identity) : Json(nullptr)},
           {"max_edge_dot", r.embedding ? Json(r.embedding->max_edge_dot()) : Json(nullptr)},
           {"iterations", r.iterations}};
  if (r.embedding) {
    out.text(a.common.prefix + ".embedding", [&](std::ostream& os) { write_embedding(os, *r.embedding); });
  }
  if (a.strict) {
    ColoringOptions so = co;
    so.seed = derive_seed(seed, "solve/strict");
    if (r.embedding) so.initial = r.embedding->vectors();
    const StrictColoringResult s = theta_complement_upper(g, so);
    doc["strict"] = {{"converged", s.converged},
                     {"kappa", s.converged ? Json(s.kappa) : Json(nullptr)},
                     {"target", s.target},
                     {"max_violation", s.max_violation}};
  }
  if (a.rounding_trials > 0 && r.embedding) {
    const RoundingSummary rs =
        hyperplane_round(*r.embedding, g, a.rounding_trials, derive_seed(seed, "rounding"), a.common.jobs);
    doc["rounding"] = {{"trials", rs.trials},
                       {"mean", rs.mean},
                       {"std_error", rs.std_error},
                       {"max", rs.max},
                       {"expected", expected_hyperplane_cut(*r.embedding, g)},
                       {"best_side", rs.best.side}};
  }
  out.json(a.common.prefix + ".json", doc);
  std::cout << "converged=" << (r.converged ? "true" : "false")
            << " kappa_upper=" << (r.converged ? format_real(r.kappa_upper) : "nan")
            << " kappa_spectral_lower=" << format_real(r.kappa_spectral_lower) << '\n';
  return 0;
}

// ------------------------------------------------------------------- maxcut

struct MaxcutArgs {
  Common common;
  std::string graph;
  std::size_t exact_limit = ExactMaxCutOptions{}.max_vertices;
  std::size_t restarts = 64;
};

int run_maxcut(const MaxcutArgs& a) {
  std::ifstream in = open_input(a.graph);
  const Graph g = parse_graph(in);
  const bool exact = g.num_vertices() <= a.exact_limit;
  if (!exact && !a.common.seed) {
    throw InputError("n = " + std::to_string(g.num_vertices()) + " exceeds --exact-limit " +
                     std::to_string(a.exact_limit) + "; the local-search fallback needs --seed");
  }
  const CutResult cut = exact ? maxcut_exact(g, {.max_vertices = a.exact_limit, .jobs = a.common.jobs})
                              : maxcut_local_search(g, derive_seed(*a.common.seed, "maxcut"), a.restarts);
  const Rational sp = surplus(g.num_edges(), cut.value);
  Config config{{"graph", a.graph}, {"exact_limit", std::to_string(a.exact_limit)}};
  if (!exact) {
    config.emplace_back("restarts", std::to_string(a.restarts));
    config.emplace_back("seed", std::to_string(*a.common.seed));
  }
  Outputs out(a.common, "maxcut", config);
  out.text(a.common.prefix + ".cut", [&](std::ostream& os) {
    os << cut.value << ' ' << cut.side.size() << ' ' << (cut.exact ? "exact" : "heuristic") << '\n';
    for (std::size_t i = 0; i < cut.side.size(); ++i) os << (i ? " " : "") << cut.side[i];
    os << '\n';
  });
  const auto edwards_exact = edwards_bound_exact(g.num_edges());
  out.json(a.common.prefix + ".json", {{"n", g.num_vertices()},
                                       {"m", g.num_edges()},
                                       {"mc", cut.value},
                                       {"exact", cut.exact},
                                       {"sp", sp.str()},
                                       {"edwards_bound", edwards_bound(g.num_edges())},
                                       {"edwards_bound_exact", edwards_exact ? Json(edwards_exact->str()) : Json(nullptr)},
                                       {"side", cut.side}});
  std::cout << "mc=" << cut.value << " sp=" << sp << (cut.exact ? " (exact)" : " (local search, lower bound)")
            << '\n';
  return 0;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  std::vector<std::string> suites;
  std::size_t grid = 1000;
  std::vector<double> deltas;
  std::size_t pairs = 1'000'000;
  Angle theta;
  std::optional<double> epsilon;
  std::optional<int> d;
  std::optional<double> gamma;
  std::optional<double> delta;
  std::vector<std::string> graphs;
};

const std::vector<std::string> kSuites{"numerical-lemma", "bjs", "construction", "hemisphere", "opt-c"};

int run_verify(VerifyArgs a) {
  if (std::find(a.suites.begin(), a.suites.end(), "all") != a.suites.end()) a.suites = kSuites;
  const bool stochastic = std::any_of(a.suites.begin(), a.suites.end(), [](const std::string& s) {
    return s != "numerical-lemma";
  });
  if (stochastic && !a.common.seed) throw InputError("--seed is required for suites other than numerical-lemma");
  const std::uint64_t seed = a.common.seed.value_or(0);
  const unsigned jobs = a.common.jobs;

  Config config{{"suites", [&] {
                   std::string s;
                   for (const auto& x : a.suites) s += (s.empty() ? "" : "+") + x;
                   return s;
                 }()}};
  std::vector<CheckReport> reports;
  auto append = [&](std::vector<CheckReport> rs) {
    reports.insert(reports.end(), std::make_move_iterator(rs.begin()), std::make_move_iterator(rs.end()));
  };

  for (const std::string& suite : a.suites) {
    if (suite == "numerical-lemma") {
      if (a.deltas.empty()) {
        config.emplace_back("grid", std::to_string(a.grid));
        append(check_numerical_lemma(numerical_lemma_grid(a.grid)));
      } else {
        std::string list;
        for (double x : a.deltas) list += (list.empty() ? "" : ";") + format_real(x);
        config.emplace_back("deltas", list);
        append(check_numerical_lemma(a.deltas));
      }
    } else if (suite == "bjs") {
      std::vector<SweepInstance> instances;
      if (a.graphs.empty()) {
        instances = bjs_suite(derive_seed(seed, "verify/bjs/suite"));
        config.emplace_back("bjs_graphs", "standard");
      } else {
        std::string list;
        for (const std::string& path : a.graphs) {
          std::ifstream in = open_input(path);
          instances.push_back({path, parse_graph(in), {}, {}, {}});
          list += (list.empty() ? "" : ";") + path;
        }
        config.emplace_back("bjs_graphs", list);
      }
      append(check_bjs_suite(instances, derive_seed(seed, "verify/bjs"), jobs));
    } else if (suite == "construction") {
      std::vector<GeometricGraph> graphs;
      if (a.theta.given() || a.epsilon) {
        if (!a.theta.given() || !a.epsilon) throw InputError("construction suite needs both theta and --epsilon");
        config.emplace_back("construction",
                            "theta=" + format_real(a.theta.value()) + ";epsilon=" + format_real(*a.epsilon) +
                                ";d=" + opt_str(a.d) + ";gamma=" + opt_str(a.gamma));
        graphs.push_back(build_construction(a.theta.value(), *a.epsilon, {.d = a.d, .gamma = a.gamma, .partition = {}}));
      } else {
        config.emplace_back("construction", "standard");
        for (const ConstructionSpec& spec : standard_construction_specs()) graphs.push_back(build_from_spec(spec));
      }
      if (a.delta) config.emplace_back("delta", format_real(*a.delta));
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        append(check_construction(graphs[i], {.seed = derive_seed(seed, "verify/construction/" + std::to_string(i)),
                                              .exact_limit = 30,
                                              .jobs = jobs,
                                              .delta = a.delta}));
      }
    } else if (suite == "hemisphere") {
      const int d = a.d.value_or(3);
      const double theta = a.theta.given() ? a.theta.value() : 2 * kPi / 3;
      config.emplace_back("hemisphere", "d=" + std::to_string(d) + ";theta=" + format_real(theta) +
                                            ";pairs=" + std::to_string(a.pairs));
      append(check_hemisphere_optimality(d, theta, a.pairs, derive_seed(seed, "verify/hemisphere/sample"),
                                         default_candidates(d, derive_seed(seed, "verify/hemisphere/candidates")),
                                         jobs));
    } else if (suite == "opt-c") {
      const double theta = a.theta.given() ? a.theta.value() : 2 * kPi / 3;
      const double eps = a.epsilon.value_or(0.2);
      config.emplace_back("opt_c", "theta=" + format_real(theta) + ";epsilon=" + format_real(eps) +
                                       ";pairs=" + std::to_string(a.pairs));
      append(check_opt_c(theta, eps, a.pairs, derive_seed(seed, "verify/opt-c"), jobs));
    } else {
      throw InputError("unknown suite '" + suite + "'");
    }
  }
  if (stochastic) config.emplace_back("seed", std::to_string(seed));

  Outputs out(a.common, "verify", config);
  out.text(a.common.prefix + ".csv", [&](std::ostream& os) { write_reports_csv(os, reports); });
  std::ostringstream js;
  write_reports_json(js, reports);
  out.json(a.common.prefix + ".json", Json::parse(js.str()));

  std::size_t failed = 0;
  std::size_t skipped = 0;
  for (const CheckReport& r : reports) {
    failed += r.failed();
    skipped += r.skipped;
    if (r.failed()) std::cout << "FAIL " << r.name << " margin=" << format_real(r.margin) << '\n';
  }
  std::cout << reports.size() << " checks, " << failed << " required failures, " << skipped << " skipped\n";
  return failed == 0 ? 0 : kExitCheckFailed;
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
  Common common;
  std::vector<std::string> families;
  std::string n = "3..9";
  std::vector<double> theta_fracs;
  double epsilon = 0.2;
  int d = 3;
  std::vector<double> gammas;
  std::size_t exact_limit = 30;
};

int run_sweep(const SweepArgs& a) {
  const std::uint64_t seed = *a.common.seed;
  std::vector<SweepInstance> instances;
  Config config;
  std::string fams;
  for (const auto& f : a.families) fams += (fams.empty() ? "" : "+") + f;
  config.emplace_back("families", fams);
  bool uses_n = false;
  for (const std::string& family : a.families) {
    if (family == "complete" || family == "cycle" || family == "odd-cycle" || family == "bipartite") {
      uses_n = true;
      for (std::size_t n : parse_range(a.n)) {
        if (family == "complete") {
          if (n < 2) throw InputError("complete family needs n >= 2");
          instances.push_back(complete_instance(n));
        } else if (family == "bipartite") {
          if (n < 2) throw InputError("bipartite family needs n >= 2");
          instances.push_back(bipartite_instance(n / 2, n - n / 2));
        } else {
          if (n < 3) throw InputError("cycle family needs n >= 3");
          if (family == "odd-cycle" && n % 2 == 0) continue;
          instances.push_back(cycle_instance(n));
        }
      }
    } else if (family == "petersen") {
      instances.push_back(petersen_instance());
    } else if (family == "constructed") {
      if (a.theta_fracs.empty() || a.gammas.empty()) {
        config.emplace_back("constructed", "standard");
        for (const ConstructionSpec& spec : standard_construction_specs()) {
          instances.push_back(constructed_instance(build_from_spec(spec)));
        }
      } else {
        std::string list;
        for (double frac : a.theta_fracs) {
          for (double gamma : a.gammas) {
            instances.push_back(constructed_instance(build_from_spec({frac, a.epsilon, a.d, gamma})));
            list += (list.empty() ? "" : ";") + format_real(frac) + "pi/" + format_real(gamma);
          }
        }
        config.emplace_back("constructed", "epsilon=" + format_real(a.epsilon) + ";d=" + std::to_string(a.d) +
                                               ";theta_frac/gamma=" + list);
      }
    } else {
      throw InputError("unknown family '" + family + "'");
    }
  }
  if (uses_n) config.emplace_back("n", a.n);
  config.emplace_back("exact_limit", std::to_string(a.exact_limit));
  config.emplace_back("seed", std::to_string(seed));

  const auto records =
      ratio_sweep(instances, {.seed = derive_seed(seed, "sweep"), .exact_limit = a.exact_limit,
                              .local_search_restarts = 64, .jobs = a.common.jobs});
  const SweepSummary summary = summarize(records);
  Outputs out(a.common, "sweep", config);
  out.text(a.common.prefix + ".csv", [&](std::ostream& os) { write_ratios_csv(os, records); });
  std::ostringstream js;
  write_ratios_json(js, records, summary);
  out.json(a.common.prefix + ".json", Json::parse(js.str()));
  for (const RatioRecord& r : records) {
    std::cout << r.graph_id << " ratio=" << format_real(r.ratio)
              << (r.ratio_exact ? " (" + r.ratio_exact->str() + ")" : "") << " kappa=" << format_real(r.kappa) << " ["
              << r.kappa_provenance << "]" << (r.mc_exact ? "" : " mc heuristic") << '\n';
  }
  std::cout << "max ratio " << format_real(summary.max_ratio) << " at " << summary.max_ratio_id
            << (summary.exceeds_three ? " (exceeds 3)" : "") << '\n';
  return 0;
}

// ------------------------------------------------------------------- report

struct ReportArgs {
  Common common;
  std::vector<std::string> inputs;
};

int run_report(const ReportArgs& a) {
  std::vector<std::string> files = a.inputs;
  if (files.empty()) {
    const fs::path dir = output_dir(a.common);
    if (fs::is_directory(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json" && entry.path().stem() != a.common.prefix) {
          files.push_back(entry.path().string());
        }
      }
    }
    std::sort(files.begin(), files.end());
  }
  if (files.empty()) throw IoError("report: no JSON outputs to merge");

  Json merged = Json::array();
  bool all_pass = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  Config config;
  for (const std::string& path : files) {
    std::ifstream in = open_input(path);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw IoError(path + ": " + e.what());
    }
    Json entry{{"file", fs::path(path).filename().string()}, {"command", doc.value("command", "unknown")}};
    if (doc.contains("all_required_pass")) {
      entry["all_required_pass"] = doc["all_required_pass"];
      entry["checks"] = doc.value("checks", 0);
      entry["required_failures"] = doc.value("required_failures", 0);
      all_pass = all_pass && doc["all_required_pass"].get<bool>();
      checks += doc.value("checks", std::size_t{0});
      failures += doc.value("required_failures", std::size_t{0});
    }
    if (doc.contains("max_ratio")) {
      entry["max_ratio"] = doc["max_ratio"];
      entry["max_ratio_graph"] = doc["max_ratio_graph"];
      entry["exceeds_three"] = doc["exceeds_three"];
    }
    for (const char* key : {"kappa_upper", "mc", "sp", "n", "m"}) {
      if (doc.contains(key)) entry[key] = doc[key];
    }
    if (doc.contains("config")) entry["config"] = doc["config"];
    merged.push_back(entry);
    config.emplace_back("input", fs::path(path).filename().string());
  }
  Outputs out(a.common, "report", config);
  out.json(a.common.prefix + ".json", {{"sources", merged.size()},
                                       {"checks", checks},
                                       {"required_failures", failures},
                                       {"all_required_pass", all_pass},
                                       {"entries", merged}});
  std::cout << merged.size() << " sources, " << checks << " checks, " << failures << " required failures\n";
  return all_pass ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sphere threshold graphs: construction, MaxCut, vector coloring and bound checks"};
  app.require_subcommand(1);

  ConstructArgs construct;
  auto* c = app.add_subcommand("construct", "Build G(theta, eps) and write graph + points");
  add_common(c, construct.common, "construction");
  add_seed(c, construct.common, false);
  add_angle(c, construct.theta, true);
  c->add_option("--epsilon", construct.epsilon, "Epsilon in (0, 1)")->required();
  c->add_option("--d", construct.d, "Override the ambient dimension");
  c->add_option("--gamma", construct.gamma, "Override the cell diameter target");
  c->add_option("--max-cells", construct.max_cells)->capture_default_str();
  c->add_option("--max-dimension", construct.max_dimension)->capture_default_str();

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Vector coloring upper bound, spectral lower bound, optional rounding");
  add_common(s, solve.common, "solve");
  add_seed(s, solve.common, true);
  s->add_option("--graph", solve.graph, "Edge-list graph file")->required();
  s->add_option("--points", solve.points, "Points file: warm start and identity-embedding kappa");
  add_angle(s, solve.theta, false);
  s->add_option("--rank", solve.rank, "Embedding rank, 0 = automatic");
  s->add_option("--restarts", solve.restarts)->capture_default_str();
  s->add_flag("--strict", solve.strict, "Also bound the strict vector chromatic number");
  s->add_option("--rounding-trials", solve.rounding_trials, "Random hyperplane trials");

  MaxcutArgs maxcut;
  auto* m = app.add_subcommand("maxcut", "Exact MaxCut (local search above the exact limit)");
  add_common(m, maxcut.common, "maxcut");
  add_seed(m, maxcut.common, false);
  m->add_option("--graph", maxcut.graph, "Edge-list graph file")->required();
  m->add_option("--exact-limit", maxcut.exact_limit)->capture_default_str()->check(
      CLI::Range(std::size_t{1}, kExactMaxCutHardLimit));
  m->add_option("--restarts", maxcut.restarts, "Local-search restarts")->capture_default_str();

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run check suites and write CSV/JSON reports");
  add_common(v, verify.common, "verify");
  add_seed(v, verify.common, false);
  v->add_option("--suite", verify.suites, "numerical-lemma | bjs | construction | hemisphere | opt-c | all")
      ->required()
      ->check(CLI::IsMember({"numerical-lemma", "bjs", "construction", "hemisphere", "opt-c", "all"}));
  v->add_option("--grid", verify.grid, "Numerical-lemma grid size")->capture_default_str()->check(
      CLI::PositiveNumber);
  v->add_option("--delta", verify.deltas, "Explicit delta values (numerical lemma)");
  v->add_option("--chain-delta", verify.delta, "Delta used in the construction chain");
  v->add_option("--pairs", verify.pairs, "Monte Carlo pairs")->capture_default_str()->check(CLI::PositiveNumber);
  add_angle(v, verify.theta, false);
  v->add_option("--epsilon", verify.epsilon);
  v->add_option("--d", verify.d);
  v->add_option("--gamma", verify.gamma);
  v->add_option("--graph", verify.graphs, "Graph files for the bjs suite (default: standard suite)");

  SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "Ratio m / (sp (kappa - 1)) over graph families");
  add_common(w, sweep.common, "sweep");
  add_seed(w, sweep.common, true);
  w->add_option("--family", sweep.families, "complete | cycle | odd-cycle | bipartite | petersen | constructed")
      ->required()
      ->check(CLI::IsMember({"complete", "cycle", "odd-cycle", "bipartite", "petersen", "constructed"}));
  w->add_option("--n", sweep.n, "Sizes, e.g. 3..9 or 5,7,9")->capture_default_str();
  w->add_option("--theta-frac", sweep.theta_fracs, "Constructed family: theta / pi values");
  w->add_option("--epsilon", sweep.epsilon, "Constructed family epsilon")->capture_default_str();
  w->add_option("--d", sweep.d, "Constructed family dimension")->capture_default_str();
  w->add_option("--gamma", sweep.gammas, "Constructed family cell diameters");
  w->add_option("--exact-limit", sweep.exact_limit)->capture_default_str()->check(
      CLI::Range(std::size_t{1}, kExactMaxCutHardLimit));

  ReportArgs report;
  auto* r = app.add_subcommand("report", "Merge JSON outputs into one summary");
  add_common(r, report.common, "report");
  r->add_option("inputs", report.inputs, "JSON files (default: every *.json in the output directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*c) return run_construct(construct);
    if (*s) return run_solve(solve);
    if (*m) return run_maxcut(maxcut);
    if (*v) return run_verify(verify);
    if (*w) return run_sweep(sweep);
    if (*r) return run_report(report);
  } catch (const InputError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
