#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "sphcut/construction.hpp"
#include "sphcut/graph.hpp"
#include "sphcut/maxcut.hpp"

namespace sphcut {

/// One unit vector per vertex (rows of `vectors`, dimension r = cols).
class Embedding {
 public:
  /// Rows are renormalized; throws InputError on a zero row or a row count
  /// that does not match the graph.
  Embedding(const Graph& g, Eigen::MatrixXd vectors);

  [[nodiscard]] const Eigen::MatrixXd& vectors() const { return vectors_; }
  [[nodiscard]] Eigen::Index rank() const { return vectors_.cols(); }
  [[nodiscard]] double max_edge_dot() const { return max_edge_dot_; }
  /// 1 - 1/max_edge_dot floored at 2; nullopt when max_edge_dot >= 0.
  [[nodiscard]] std::optional<double> kappa() const;

 private:
  Eigen::MatrixXd vectors_;
  double max_edge_dot_;
};

double max_edge_dot(const Graph& g, const Eigen::MatrixXd& vectors);

struct ColoringOptions {
  std::size_t rank = 0;  // 0: default_rank(n, m)
  std::uint64_t seed = 0;
  std::size_t restarts = 5;
  double initial_temperature = 0.05;
  double final_temperature = 1e-7;
  double temperature_decay = 0.5;
  std::size_t iterations_per_stage = 400;
  unsigned jobs = 0;
  /// Extra starting point tried before the random restarts (zero-padded or
  /// truncated to `rank` columns).
  std::optional<Eigen::MatrixXd> initial;
};

struct VectorColoringResult {
  double kappa_upper = 0.0;  // meaningful only when converged
  std::optional<Embedding> embedding;
  double kappa_spectral_lower = 0.0;
  std::size_t iterations = 0;
  bool converged = false;  // max_edge_dot < 0 was reached
};

/// max(ceil(sqrt(2n)) + 1, smallest r with r(r+1)/2 >= n + m), capped at n.
std::size_t default_rank(std::size_t n, std::size_t m);

/// Feasible vector chromatic value with its witness. Minimizes a
/// temperature-scheduled soft maximum of edge inner products over products
/// of unit spheres; kappa is read from the hard maximum of the best iterate.
/// Throws InputError on an edgeless graph or rank < 2.
VectorColoringResult chi_vec_upper(const Graph& g, const ColoringOptions& options = {});

/// 1 + lambda_max / |lambda_min| of the adjacency matrix, a lower bound on
/// chi_vec. Throws InputError on an edgeless graph.
double chi_vec_spectral_lower(const Graph& g);

/// 1 - 1/cos(theta) after checking that the stored points witness it.
/// Throws CorruptionError when some edge has dot > cos(theta).
double identity_embedding_kappa(const GeometricGraph& gg);

/// Lift construction points into an n x rank matrix (zero padding).
Eigen::MatrixXd lift_points(const GeometricGraph& gg, std::size_t rank);

struct StrictColoringResult {
  double kappa = 0.0;            // 1 - 1/target
  double target = 0.0;           // common edge inner product
  double max_violation = 0.0;    // max |dot_e - target|
  std::optional<Embedding> embedding;
  bool converged = false;        // max_violation <= 1e-6 and target < 0
};

/// Strict vector chromatic number (theta of the complement), upper bound by
/// an augmented Lagrangian on edge dot == t with t optimized jointly.
StrictColoringResult theta_complement_upper(const Graph& g, const ColoringOptions& options = {});

struct RoundingSummary {
  std::size_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t max = 0;
  CutResult best;
};

/// Random-hyperplane rounding: each trial draws a Gaussian normal and puts
/// vertex i on the side of sign(<x_i, normal>), zero counting as positive.
RoundingSummary hyperplane_round(const Embedding& e, const Graph& g, std::size_t trials, std::uint64_t seed,
                                 unsigned jobs = 0);

/// Sum over edges of arccos(<x_i, x_j>) / pi.
double expected_hyperplane_cut(const Embedding& e, const Graph& g);

/// "n r" header, then one vector per line.
void write_embedding(std::ostream& out, const Embedding& e);
Eigen::MatrixXd parse_embedding(std::istream& in);

}  // namespace sphcut
