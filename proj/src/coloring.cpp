#include "sphcut/coloring.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <istream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "sphcut/errors.hpp"
#include "sphcut/random.hpp"

namespace sphcut {

namespace {

constexpr double kArmijo = 1e-4;

void normalize_rows(Eigen::MatrixXd& x) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm == 0.0) throw InputError("embedding row " + std::to_string(i) + " is zero");
    x.row(i) /= norm;
  }
}

// Tangent projection: removes the radial component of each row.
Eigen::MatrixXd project_tangent(const Eigen::MatrixXd& x, const Eigen::MatrixXd& g) {
  const Eigen::VectorXd radial = (x.array() * g.array()).rowwise().sum();
  return g - x.cwiseProduct(radial.replicate(1, x.cols()));
}

Eigen::MatrixXd random_embedding(std::size_t n, std::size_t r, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd x(n, r);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = normal(rng);
  normalize_rows(x);
  return x;
}

Eigen::MatrixXd fit_rank(const Eigen::MatrixXd& x, std::size_t r) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), static_cast<Eigen::Index>(r));
  const Eigen::Index cols = std::min<Eigen::Index>(x.cols(), out.cols());
  out.leftCols(cols) = x.leftCols(cols);
  normalize_rows(out);
  return out;
}

struct EdgeArrays {
  std::vector<Eigen::Index> u;
  std::vector<Eigen::Index> v;
  explicit EdgeArrays(const Graph& g) {
    for (const Edge& e : g.edges()) {
      u.push_back(e.u);
      v.push_back(e.v);
    }
  }
  [[nodiscard]] std::size_t size() const { return u.size(); }
};

// Smooth surrogate tau * log(sum_e exp(dot_e / tau)) and its Euclidean gradient.
struct SoftMax {
  const EdgeArrays& edges;
  double tau;
  mutable std::vector<double> dots;
  mutable std::vector<double> weights;

  double value(const Eigen::MatrixXd& x, double* hard_max) const {
    dots.resize(edges.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      dots[e] = x.row(edges.u[e]).dot(x.row(edges.v[e]));
      top = std::max(top, dots[e]);
    }
    double z = 0.0;
    weights.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      weights[e] = std::exp((dots[e] - top) / tau);
      z += weights[e];
    }
    for (double& w : weights) w /= z;
    if (hard_max) *hard_max = top;
    return top + tau * std::log(z);
  }

  // Uses the weights of the last value() call.
  Eigen::MatrixXd gradient(const Eigen::MatrixXd& x) const {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(x.rows(), x.cols());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (weights[e] == 0.0) continue;
      g.row(edges.u[e]) += weights[e] * x.row(edges.v[e]);
      g.row(edges.v[e]) += weights[e] * x.row(edges.u[e]);
    }
    return g;
  }
};

struct DescentResult {
  Eigen::MatrixXd best;
  double best_max = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
};

// Riemannian gradient descent on the product of spheres with
// Barzilai-Borwein step proposals and Armijo backtracking.
DescentResult minimize_max_dot(const EdgeArrays& edges, Eigen::MatrixXd x, const ColoringOptions& options) {
  DescentResult out;
  out.best = x;
  double step = 1.0;
  for (double tau = options.initial_temperature; tau >= options.final_temperature * 0.999;
       tau *= options.temperature_decay) {
    const SoftMax f{edges, tau, {}, {}};
    double hard = 0.0;
    double fx = f.value(x, &hard);
    if (hard < out.best_max) {
      out.best_max = hard;
      out.best = x;
    }
    Eigen::MatrixXd grad = project_tangent(x, f.gradient(x));
    for (std::size_t it = 0; it < options.iterations_per_stage; ++it) {
      const double gnorm2 = grad.squaredNorm();
      if (gnorm2 < 1e-26) break;
      double alpha = std::clamp(step, 1e-14, 1e4);
      Eigen::MatrixXd next;
      double fn = 0.0;
      bool accepted = false;
      for (int bt = 0; bt < 50; ++bt) {
        next = x - alpha * grad;
        normalize_rows(next);
        fn = f.value(next, &hard);
        if (fn <= fx - kArmijo * alpha * gnorm2) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      ++out.iterations;
      if (!accepted) break;
      const Eigen::MatrixXd next_grad = project_tangent(next, f.gradient(next));
      const Eigen::MatrixXd s = next - x;
      const double sy = (s.array() * (next_grad - grad).array()).sum();
      step = sy > 0.0 ? s.squaredNorm() / sy : 2.0 * alpha;
      const bool stalled = fx - fn <= 1e-15 * std::max(1.0, std::abs(fx));
      x = std::move(next);
      grad = next_grad;
      fx = fn;
      if (hard < out.best_max) {
        out.best_max = hard;
        out.best = x;
      }
      if (stalled) break;
    }
  }
  return out;
}

std::size_t resolve_rank(const Graph& g, std::size_t rank) {
  const std::size_t r = rank == 0 ? default_rank(g.num_vertices(), g.num_edges()) : rank;
  if (r < 2) throw InputError("embedding rank must be >= 2");
  return r;
}

unsigned worker_count(unsigned jobs, std::size_t tasks) {
  const unsigned w = jobs != 0 ? jobs : std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(w, tasks)));
}

template <typename Fn>
void run_indexed(std::size_t tasks, unsigned jobs, Fn&& fn) {
  const unsigned workers = worker_count(jobs, tasks);
  if (workers == 1) {
    for (std::size_t t = 0; t < tasks; ++t) fn(t);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t t = w; t < tasks; t += workers) fn(t);
    });
  }
}

}  // namespace

double max_edge_dot(const Graph& g, const Eigen::MatrixXd& vectors) {
  double top = -std::numeric_limits<double>::infinity();
  for (const Edge& e : g.edges()) top = std::max(top, vectors.row(e.u).dot(vectors.row(e.v)));
  return top;
}

Embedding::Embedding(const Graph& g, Eigen::MatrixXd vectors) : vectors_(std::move(vectors)) {
  if (vectors_.rows() != static_cast<Eigen::Index>(g.num_vertices())) {
    throw InputError("embedding has " + std::to_string(vectors_.rows()) + " rows for " +
                     std::to_string(g.num_vertices()) + " vertices");
  }
  normalize_rows(vectors_);
  max_edge_dot_ = sphcut::max_edge_dot(g, vectors_);
}

std::optional<double> Embedding::kappa() const {
  if (!(max_edge_dot_ < 0.0)) return std::nullopt;
  return std::max(2.0, 1.0 - 1.0 / max_edge_dot_);
}

std::size_t default_rank(std::size_t n, std::size_t m) {
  const auto base = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(n)))) + 1;
  // Barvinok-Pataki: an optimum of rank r exists with r(r+1)/2 <= n + (active edge constraints).
  std::size_t pataki = 1;
  while (pataki * (pataki + 1) / 2 < n + m) ++pataki;
  return std::max<std::size_t>(2, std::min(n, std::max(base, pataki)));
}

VectorColoringResult chi_vec_upper(const Graph& g, const ColoringOptions& options) {
  if (g.num_edges() == 0) throw InputError("vector coloring needs at least one edge");
  const std::size_t r = resolve_rank(g, options.rank);
  if (options.restarts < 1 && !options.initial) throw InputError("need at least one start");
  const EdgeArrays edges(g);

  // Start 0 is the warm start when given, then the seeded random restarts.
  const std::size_t offset = options.initial ? 1 : 0;
  const std::size_t starts = options.restarts + offset;
  std::vector<DescentResult> results(starts);
  run_indexed(starts, options.jobs, [&](std::size_t k) {
    Eigen::MatrixXd x0;
    if (k < offset) {
      x0 = fit_rank(*options.initial, r);
    } else {
      Rng rng = make_stream(options.seed, "coloring", k - offset);
      x0 = random_embedding(g.num_vertices(), r, rng);
    }
    results[k] = minimize_max_dot(edges, std::move(x0), options);
  });

  std::size_t winner = 0;
  std::size_t iterations = 0;
  for (std::size_t k = 0; k < starts; ++k) {
    iterations += results[k].iterations;
    if (results[k].best_max < results[winner].best_max) winner = k;
  }

  VectorColoringResult out;
  out.embedding.emplace(g, std::move(results[winner].best));
  out.iterations = iterations;
  out.kappa_spectral_lower = chi_vec_spectral_lower(g);
  if (const auto k = out.embedding->kappa()) {
    out.converged = true;
    out.kappa_upper = *k;
  } else {
    out.kappa_upper = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double chi_vec_spectral_lower(const Graph& g) {
  if (g.num_edges() == 0) throw InputError("spectral bound needs at least one edge");
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return 1.0 + ev.maxCoeff() / std::abs(ev.minCoeff());
}

double identity_embedding_kappa(const GeometricGraph& gg) {
  const double theta = gg.params.theta;
  if (!(theta > 0.5 * kPi && theta < kPi)) {
    throw InputError("identity embedding bound needs theta in (pi/2, pi)");
  }
  const double c = std::cos(theta);
  for (const Edge& e : gg.graph.edges()) {
    if (dot(gg.point(e.u), gg.point(e.v)) > c) {
      throw CorruptionError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") has inner product above cos(theta)");
    }
  }
  return 1.0 - 1.0 / c;
}

Eigen::MatrixXd lift_points(const GeometricGraph& gg, std::size_t rank) {
  const auto n = static_cast<Eigen::Index>(gg.graph.num_vertices());
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(std::max<std::size_t>(rank, gg.d)));
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < gg.d; ++j) x(i, j) = gg.points[i * gg.d + j];
  return x;
}

namespace {

struct StrictRun {
  Eigen::MatrixXd x;
  double target = 0.0;
  double violation = std::numeric_limits<double>::infinity();
};

// Augmented Lagrangian for: minimize t subject to <x_u, x_v> = t on edges.
StrictRun strict_descent(const EdgeArrays& edges, Eigen::MatrixXd x) {
  const std::size_t m = edges.size();
  std::vector<double> lambda(m, 1.0 / static_cast<double>(m));
  std::vector<double> dots(m);
  auto compute_dots = [&](const Eigen::MatrixXd& y) {
    for (std::size_t e = 0; e < m; ++e) dots[e] = y.row(edges.u[e]).dot(y.row(edges.v[e]));
  };
  compute_dots(x);
  double t = 0.0;
  for (const double d : dots) t += d;
  t /= static_cast<double>(m);

  double rho = 10.0;
  double last_violation = std::numeric_limits<double>::infinity();

  auto lagrangian = [&](const Eigen::MatrixXd& y, double s) {
    compute_dots(y);
    double value = s;
    for (std::size_t e = 0; e < m; ++e) {
      const double c = dots[e] - s;
      value += lambda[e] * c + 0.5 * rho * c * c;
    }
    return value;
  };
  // Gradient at the dots of the last lagrangian() call.
  auto gradient = [&](const Eigen::MatrixXd& y, double s, Eigen::MatrixXd& gx, double& gs) {
    gx.setZero(y.rows(), y.cols());
    gs = 1.0;
    for (std::size_t e = 0; e < m; ++e) {
      const double w = lambda[e] + rho * (dots[e] - s);
      gx.row(edges.u[e]) += w * y.row(edges.v[e]);
      gx.row(edges.v[e]) += w * y.row(edges.u[e]);
      gs -= w;
    }
    gx = project_tangent(y, gx);
  };

  for (int outer = 0; outer < 80; ++outer) {
    double value = lagrangian(x, t);
    Eigen::MatrixXd gx;
    double gs = 0.0;
    gradient(x, t, gx, gs);
    double step = 1.0 / rho;
    for (int it = 0; it < 2000; ++it) {
      const double gnorm2 = gx.squaredNorm() + gs * gs;
      if (gnorm2 < 1e-24) break;
      double alpha = std::clamp(step, 1e-16, 1e4);
      Eigen::MatrixXd nx;
      double nt = 0.0;
      double nv = 0.0;
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        nx = x - alpha * gx;
        normalize_rows(nx);
        nt = std::clamp(t - alpha * gs, -1.0, 0.0);
        nv = lagrangian(nx, nt);
        if (nv <= value - kArmijo * alpha * gnorm2) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;
      Eigen::MatrixXd ngx;
      double ngs = 0.0;
      gradient(nx, nt, ngx, ngs);
      const Eigen::MatrixXd sx = nx - x;
      const double st = nt - t;
      const double sy = (sx.array() * (ngx - gx).array()).sum() + st * (ngs - gs);
      step = sy > 0.0 ? (sx.squaredNorm() + st * st) / sy : 2.0 * alpha;
      const bool stalled = value - nv <= 1e-16 * std::max(1.0, std::abs(value));
      x = std::move(nx);
      t = nt;
      value = nv;
      gx = std::move(ngx);
      gs = ngs;
      if (stalled) break;
    }

    compute_dots(x);
    double violation = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      const double c = dots[e] - t;
      lambda[e] += rho * c;
      violation = std::max(violation, std::abs(c));
    }
    if (violation <= 1e-9) break;
    if (violation > 0.25 * last_violation) rho = std::min(rho * 10.0, 1e9);
    last_violation = violation;
  }

  compute_dots(x);
  StrictRun run{x, t, 0.0};
  for (const double d : dots) run.violation = std::max(run.violation, std::abs(d - t));
  return run;
}

}  // namespace

StrictColoringResult theta_complement_upper(const Graph& g, const ColoringOptions& options) {
  if (g.num_edges() == 0) throw InputError("strict vector coloring needs at least one edge");
  const std::size_t r = resolve_rank(g, options.rank);
  const EdgeArrays edges(g);

  const std::size_t offset = options.initial ? 1 : 0;
  const std::size_t starts = std::max<std::size_t>(options.restarts + offset, 1);
  std::vector<StrictRun> runs(starts);
  run_indexed(starts, options.jobs, [&](std::size_t k) {
    Eigen::MatrixXd x0;
    if (k < offset) {
      x0 = fit_rank(*options.initial, r);
    } else {
      Rng rng = make_stream(options.seed, "strict_coloring", k - offset);
      x0 = random_embedding(g.num_vertices(), r, rng);
    }
    runs[k] = strict_descent(edges, std::move(x0));
  });

  constexpr double kTolerance = 1e-6;
  std::optional<std::size_t> winner;
  for (std::size_t k = 0; k < starts; ++k) {
    if (runs[k].violation > kTolerance || !(runs[k].target < 0.0)) continue;
    if (!winner || runs[k].target < runs[*winner].target) winner = k;
  }

  StrictColoringResult out;
  const std::size_t pick = winner.value_or(0);
  out.target = runs[pick].target;
  out.max_violation = runs[pick].violation;
  out.embedding.emplace(g, std::move(runs[pick].x));
  out.converged = winner.has_value();
  out.kappa = out.converged ? std::max(2.0, 1.0 - 1.0 / out.target) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

RoundingSummary hyperplane_round(const Embedding& e, const Graph& g, std::size_t trials, std::uint64_t seed,
                                 unsigned jobs) {
  if (trials < 1) throw InputError("rounding needs at least one trial");
  if (e.vectors().rows() != static_cast<Eigen::Index>(g.num_vertices())) {
    throw InputError("embedding does not cover every vertex");
  }
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  const Eigen::MatrixXd& x = e.vectors();
  std::vector<std::int64_t> values(trials);

  run_indexed(chunks, jobs, [&](std::size_t c) {
    Rng rng = make_stream(seed, "rounding", c);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd direction(x.cols());
    std::vector<char> positive(g.num_vertices());
    const std::size_t end = std::min(trials, (c + 1) * kChunk);
    for (std::size_t t = c * kChunk; t < end; ++t) {
      for (Eigen::Index j = 0; j < direction.size(); ++j) direction(j) = normal(rng);
      const Eigen::VectorXd proj = x * direction;
      for (Eigen::Index i = 0; i < proj.size(); ++i) positive[i] = proj(i) >= 0.0;
      std::int64_t cut = 0;
      for (const Edge& edge : g.edges()) cut += positive[edge.u] != positive[edge.v];
      values[t] = cut;
    }
  });

  RoundingSummary out;
  out.trials = trials;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t best_trial = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    sum += static_cast<double>(values[t]);
    sum_sq += static_cast<double>(values[t]) * static_cast<double>(values[t]);
    if (values[t] > values[best_trial]) best_trial = t;
  }
  const double n = static_cast<double>(trials);
  out.mean = sum / n;
  const double variance = trials > 1 ? std::max(0.0, (sum_sq - n * out.mean * out.mean) / (n - 1.0)) : 0.0;
  out.std_error = std::sqrt(variance / n);
  out.max = values[best_trial];

  // Replay the winning trial to recover its side.
  Rng rng = make_stream(seed, "rounding", best_trial / kChunk);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd direction(x.cols());
  for (std::size_t t = (best_trial / kChunk) * kChunk; t <= best_trial; ++t)
    for (Eigen::Index j = 0; j < direction.size(); ++j) direction(j) = normal(rng);
  const Eigen::VectorXd proj = x * direction;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (proj(v) >= 0.0) out.best.side.push_back(v);
  out.best.value = cut_value(g, out.best.side);
  out.best.exact = false;
  return out;
}

double expected_hyperplane_cut(const Embedding& e, const Graph& g) {
  const Eigen::MatrixXd& x = e.vectors();
  double total = 0.0;
  for (const Edge& edge : g.edges()) {
    total += std::acos(std::clamp(x.row(edge.u).dot(x.row(edge.v)), -1.0, 1.0)) / kPi;
  }
  return total;
}

void write_embedding(std::ostream& out, const Embedding& e) {
  const Eigen::MatrixXd& x = e.vectors();
  out << x.rows() << ' ' << x.cols() << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) out << (j ? " " : "") << x(i, j);
    out << '\n';
  }
}

Eigen::MatrixXd parse_embedding(std::istream& in) {
  std::string line;
  auto next_data_line = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_data_line()) throw IoError("embedding file: missing \"n r\" header");
  Eigen::Index n = 0;
  Eigen::Index r = 0;
  {
    std::istringstream header(line);
    if (!(header >> n >> r) || n < 1 || r < 1) throw IoError("embedding file: malformed header");
  }
  Eigen::MatrixXd x(n, r);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!next_data_line()) throw IoError("embedding file: expected " + std::to_string(n) + " vectors");
    std::istringstream row(line);
    for (Eigen::Index j = 0; j < r; ++j)
      if (!(row >> x(i, j))) throw IoError("embedding file: short vector");
  }
  return x;
}

}  // namespace sphcut
