#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sphcut/graph.hpp"
#include "sphcut/partition.hpp"
#include "sphcut/sphere.hpp"

namespace sphcut {

/// Threshold graph on sphere points: i ~ j iff <x_i, x_j> <= cos(theta).
struct GeometricGraph {
  Graph graph;
  int d = 0;
  std::vector<double> points;  // row-major, one unit vector per vertex
  ConstructionParams params;

  [[nodiscard]] std::span<const double> point(std::size_t i) const {
    return {points.data() + i * d, static_cast<std::size_t>(d)};
  }
};

/// Closed edge criterion: an inner product equal to cos(theta) is an edge.
/// Throws InputError for fewer than two points, non-unit points, or theta
/// outside (pi/2, pi).
GeometricGraph build_threshold_graph(std::span<const double> points, int d, double theta);

/// Recomputes every pairwise inner product and checks that edges satisfy
/// dot <= cos(theta) + tolerance and non-edges dot > cos(theta) - tolerance.
bool validate_threshold_graph(const GeometricGraph& gg, double tolerance);

struct ConstructionOverrides {
  std::optional<int> d;
  std::optional<double> gamma;
  PartitionOptions partition;
};

/// G(theta, epsilon): choose_dimension -> choose_gamma -> partition_sphere ->
/// cell centers as vertices -> threshold graph. Overrides replace the chosen
/// d and/or gamma. Deterministic.
GeometricGraph build_construction(double theta, double epsilon, const ConstructionOverrides& overrides = {});

/// Fraction of cell pairs (over all unordered pairs) whose representative
/// angle lies within 2*gamma of theta. These are the only pairs that can
/// straddle the threshold, so this bounds the mixed-pair fraction.
double potentially_mixed_fraction(const GeometricGraph& gg);

/// Uniform pairs on S^{d-1} x S^{d-1}, keeping those at angle >= theta.
struct EdgeAngleSample {
  int d = 0;
  double theta = 0.0;
  std::size_t pair_count = 0;  // N pairs drawn
  std::uint64_t seed = 0;
  std::vector<double> angles;  // retained angles, all >= theta
  std::vector<double> first;   // retained first endpoints, row-major
  std::vector<double> second;  // retained second endpoints

  [[nodiscard]] std::size_t retained() const { return angles.size(); }
  /// Estimate of mu^2(E(G_c)), the measure of the continuous edge set.
  [[nodiscard]] double retained_fraction() const;
  [[nodiscard]] double retained_fraction_stderr() const;
};

/// Draws in fixed chunks of pairs, each from its own seeded substream, so
/// the result does not depend on `jobs`.
EdgeAngleSample sample_continuous_pairs(int d, double theta, std::size_t pairs, std::uint64_t seed,
                                        unsigned jobs = 0);

/// A measurable subset of the sphere given by a membership test.
class SphereSet {
 public:
  SphereSet(std::string name, std::function<bool(std::span<const double>)> contains)
      : name_(std::move(name)), contains_(std::move(contains)) {}

  [[nodiscard]] bool contains(std::span<const double> x) const { return contains_(x); }
  [[nodiscard]] const std::string& name() const { return name_; }

  static SphereSet whole_sphere();
  /// {x : <x, normal> >= 0}.
  static SphereSet hemisphere(std::vector<double> normal);
  /// Points within angle `radius` of unit vector `center`.
  static SphereSet cap(std::vector<double> center, double radius);
  /// Cap around `center` with normalized measure `measure` on S^{d-1}.
  static SphereSet cap_of_measure(std::vector<double> center, double measure);
  static SphereSet union_of(std::vector<SphereSet> parts);
  /// Union of the cells whose color is true ("disco ball" coloring).
  static SphereSet cell_coloring(std::shared_ptr<const ZonalPartition> scheme, std::vector<bool> colors);

 private:
  std::string name_;
  std::function<bool(std::span<const double>)> contains_;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

/// Fraction of retained pairs with exactly one endpoint in `side`: an
/// estimate of mu_theta(A) / mu^2(E(G_c)). Throws DegenerateSampleError on an
/// empty sample.
Estimate estimate_cut_measure(const EdgeAngleSample& sample, const SphereSet& side);

/// Paired difference estimate(a) - estimate(b) on the same sample, with the
/// standard error of the per-pair difference.
Estimate compare_cut_measures(const EdgeAngleSample& sample, const SphereSet& a, const SphereSet& b);

/// Fraction of retained edges with angle above theta + epsilon (the edges
/// not covered by the (theta + epsilon)/pi hyperplane bound).
Estimate far_edge_fraction(const EdgeAngleSample& sample, double epsilon);

}  // namespace sphcut
