#include "sphcut/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sphcut/errors.hpp"
#include "sphcut/sphere.hpp"

namespace sphcut {

struct ZonalPartition::Node {
  int dim = 1;  // partitions S^dim, embedded in R^{dim+1}
  std::size_t n = 1;

  // dim >= 2 only. Zone z spans colatitudes [lower(z), bounds[z]].
  std::vector<double> bounds;
  std::vector<std::size_t> offsets;  // first region of each zone, plus a final n
  std::vector<std::shared_ptr<const Node>> children;  // null for a zone that is one whole cap
  std::vector<double> zone_measure;

  double max_diameter = kPi;

  [[nodiscard]] double lower(std::size_t z) const { return z == 0 ? 0.0 : bounds[z - 1]; }

  [[nodiscard]] std::size_t zone_of_region(std::size_t r) const {
    return static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), r) -
                                    offsets.begin()) -
           1;
  }
};

namespace {

using Node = ZonalPartition::Node;

double circle_diameter(std::size_t n) { return std::min(2.0 * kPi / static_cast<double>(n), kPi); }

double cap_diameter(double radius) { return radius <= 0.5 * kPi ? 2.0 * radius : kPi; }

// Bound on the angle between (sin t u, cos t) and (sin s v, cos s) for t, s in
// [t1, t2] and angle(u, v) <= alpha:
//   cos = cos(t - s) - sin t sin s (1 - cos angle(u, v))
//       >= cos(t2 - t1) - S^2 (1 - cos alpha),  S = max sin on [t1, t2].
double collar_diameter(double t1, double t2, double alpha) {
  const double s = (t1 <= 0.5 * kPi && t2 >= 0.5 * kPi) ? 1.0 : std::max(std::sin(t1), std::sin(t2));
  const double c = std::cos(t2 - t1) - s * s * (1.0 - std::cos(std::min(alpha, kPi)));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// Memoized construction of nodes; sub-partitions with equal (dim, n) repeat
// across collars.
class NodeBuilder {
 public:
  std::shared_ptr<const Node> get(int dim, std::size_t n) {
    const auto key = std::make_pair(dim, n);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto node = build(dim, n);
    cache_.emplace(key, node);
    return node;
  }

 private:
  std::shared_ptr<const Node> build(int dim, std::size_t n) {
    auto node = std::make_shared<Node>();
    node->dim = dim;
    node->n = n;
    if (dim == 1) {
      node->max_diameter = circle_diameter(n);
      return node;
    }
    const int d = dim + 1;  // ambient dimension for cap_measure
    if (n == 1) {
      node->bounds = {kPi};
      node->offsets = {0, 1};
      node->children = {nullptr};
      node->zone_measure = {1.0};
      node->max_diameter = kPi;
      return node;
    }

    const double region = 1.0 / static_cast<double>(n);
    const double polar = cap_radius_for_measure(d, region);

    // Ideal collar height is the side of a region of the unnormalized sphere.
    const double sphere_area = 2.0 * std::pow(kPi, 0.5 * (dim + 1)) / std::tgamma(0.5 * (dim + 1));
    const double ideal_angle = std::pow(sphere_area * region, 1.0 / dim);
    std::size_t collars = 0;
    if (n > 2 && ideal_angle > 0.0) {
      collars = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::llround((kPi - 2.0 * polar) / ideal_angle)));
    }
    const double fitting = collars > 0 ? (kPi - 2.0 * polar) / static_cast<double>(collars) : 0.0;

    std::vector<double> ideal(collars + 2, 1.0);
    for (std::size_t c = 0; c < collars; ++c) {
      const double top = polar + static_cast<double>(c) * fitting;
      const double bottom = c + 1 == collars ? kPi - polar : top + fitting;
      ideal[c + 1] = (cap_measure(d, bottom) - cap_measure(d, top)) * static_cast<double>(n);
    }
    std::vector<std::size_t> counts(ideal.size());
    double discrepancy = 0.0;
    for (std::size_t z = 0; z < ideal.size(); ++z) {
      const double rounded = std::round(ideal[z] + discrepancy);
      counts[z] = static_cast<std::size_t>(std::max(0.0, rounded));
      discrepancy += ideal[z] - static_cast<double>(counts[z]);
    }

    std::size_t subtotal = 0;
    for (std::size_t z = 0; z < counts.size(); ++z) {
      if (counts[z] == 0) continue;
      node->offsets.push_back(subtotal);
      subtotal += counts[z];
      const bool is_last = z + 1 == counts.size();
      const double upper = is_last ? kPi
                                   : cap_radius_for_measure(
                                         d, static_cast<double>(subtotal) * region);
      const double lower = node->bounds.empty() ? 0.0 : node->bounds.back();
      node->bounds.push_back(upper);
      const bool cap_zone = (z == 0 || is_last) && counts[z] == 1;
      node->children.push_back(cap_zone ? nullptr : get(dim - 1, counts[z]));
      const double upper_measure = is_last ? 1.0 : cap_measure(d, upper);
      const double lower_measure = z == 0 ? 0.0 : cap_measure(d, lower);
      node->zone_measure.push_back(upper_measure - lower_measure);
    }
    if (subtotal != n) throw std::logic_error("zonal partition: region counts do not sum to n");
    node->offsets.push_back(n);

    double worst = 0.0;
    for (std::size_t z = 0; z < node->bounds.size(); ++z) {
      worst = std::max(worst, zone_diameter(*node, z, std::nullopt));
    }
    node->max_diameter = worst;
    return node;
  }

 public:
  // Diameter of a region of zone z; `child_region` selects a region of the
  // cross-section, or its worst case when absent.
  static double zone_diameter(const Node& node, std::size_t z, std::optional<std::size_t> child_region);

 private:
  std::map<std::pair<int, std::size_t>, std::shared_ptr<const Node>> cache_;
};

double region_diameter(const Node& node, std::size_t r);

double NodeBuilder::zone_diameter(const Node& node, std::size_t z,
                                  std::optional<std::size_t> child_region) {
  const double lo = node.lower(z);
  const double hi = node.bounds[z];
  const auto& child = node.children[z];
  if (!child) {
    if (lo == 0.0 && hi == kPi) return kPi;
    return cap_diameter(lo == 0.0 ? hi : kPi - lo);
  }
  const double alpha = child_region ? region_diameter(*child, *child_region) : child->max_diameter;
  return collar_diameter(lo, hi, alpha);
}

double region_diameter(const Node& node, std::size_t r) {
  if (node.dim == 1) return circle_diameter(node.n);
  const std::size_t z = node.zone_of_region(r);
  if (!node.children[z]) return NodeBuilder::zone_diameter(node, z, std::nullopt);
  return NodeBuilder::zone_diameter(node, z, r - node.offsets[z]);
}

std::size_t locate_in(const Node& node, std::span<const double> x) {
  if (node.dim == 1) {
    double phi = std::atan2(x[1], x[0]);
    if (phi < 0.0) phi += 2.0 * kPi;
    const auto r = static_cast<std::size_t>(phi * static_cast<double>(node.n) / (2.0 * kPi));
    return std::min(r, node.n - 1);
  }
  const double t = std::acos(std::clamp(x[node.dim], -1.0, 1.0));
  std::size_t z = static_cast<std::size_t>(std::upper_bound(node.bounds.begin(), node.bounds.end(), t) -
                                           node.bounds.begin());
  z = std::min(z, node.bounds.size() - 1);
  const auto& child = node.children[z];
  if (!child) return node.offsets[z];

  std::vector<double> cross(x.begin(), x.begin() + node.dim);
  double norm = 0.0;
  for (const double v : cross) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0.0) return node.offsets[z];
  for (double& v : cross) v /= norm;
  return node.offsets[z] + locate_in(*child, cross);
}

void center_of(const Node& node, std::size_t r, std::span<double> out) {
  if (node.dim == 1) {
    const double phi = (static_cast<double>(r) + 0.5) * 2.0 * kPi / static_cast<double>(node.n);
    out[0] = std::cos(phi);
    out[1] = std::sin(phi);
    return;
  }
  const std::size_t z = node.zone_of_region(r);
  const auto& child = node.children[z];
  std::fill(out.begin(), out.end(), 0.0);
  if (!child) {
    const bool south = node.lower(z) > 0.0;
    out[node.dim] = south ? -1.0 : 1.0;
    return;
  }
  const double t = 0.5 * (node.lower(z) + node.bounds[z]);
  center_of(*child, r - node.offsets[z], out.first(node.dim));
  const double s = std::sin(t);
  for (int i = 0; i < node.dim; ++i) out[i] *= s;
  out[node.dim] = std::cos(t);
}

double measure_of(const Node& node, std::size_t r) {
  if (node.dim == 1) return 1.0 / static_cast<double>(node.n);
  const std::size_t z = node.zone_of_region(r);
  const auto& child = node.children[z];
  if (!child) return node.zone_measure[z];
  return node.zone_measure[z] * measure_of(*child, r - node.offsets[z]);
}

void check_unit_rows(int d, std::span<const double> points) {
  for (std::size_t i = 0; i * d < points.size(); ++i) {
    double norm2 = 0.0;
    for (int j = 0; j < d; ++j) norm2 += points[i * d + j] * points[i * d + j];
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) {
      throw InputError("point " + std::to_string(i) + " is not a unit vector");
    }
  }
}

}  // namespace

ZonalPartition::ZonalPartition(int d, std::size_t n) : d_(d), n_(n) {
  if (d < 2) throw InputError("zonal partition needs d >= 2");
  if (n < 1) throw InputError("zonal partition needs at least one region");
  NodeBuilder builder;
  root_ = builder.get(d - 1, n);
}

std::size_t ZonalPartition::locate(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(d_)) throw InputError("locate: dimension mismatch");
  return locate_in(*root_, x);
}

void ZonalPartition::center(std::size_t r, std::span<double> out) const {
  if (r >= n_ || out.size() != static_cast<std::size_t>(d_)) throw InputError("center: bad region or buffer");
  center_of(*root_, r, out);
}

double ZonalPartition::diameter_bound(std::size_t r) const {
  if (r >= n_) throw InputError("diameter_bound: region out of range");
  return region_diameter(*root_, r);
}

double ZonalPartition::max_diameter_bound() const { return root_->max_diameter; }

double ZonalPartition::measure(std::size_t r) const {
  if (r >= n_) throw InputError("measure: region out of range");
  return measure_of(*root_, r);
}

CellPartition::CellPartition(int d, std::vector<double> representatives, double gamma,
                             double volume_tolerance, std::shared_ptr<const ZonalPartition> scheme)
    : d_(d),
      representatives_(std::move(representatives)),
      gamma_(gamma),
      volume_tolerance_(volume_tolerance),
      scheme_(std::move(scheme)) {
  if (d_ < 2) throw InputError("partition dimension must be >= 2");
  if (representatives_.empty() || representatives_.size() % d_ != 0) {
    throw InputError("representatives must hold a positive multiple of d values");
  }
  check_unit_rows(d_, representatives_);
}

double CellPartition::realized_constant() const {
  return gamma_ * std::pow(static_cast<double>(size()), 1.0 / d_);
}

const ZonalPartition& CellPartition::scheme() const {
  if (!scheme_) throw std::logic_error("partition has no zonal scheme attached (read from file?)");
  return *scheme_;
}

CellPartition partition_sphere(int d, double gamma, const PartitionOptions& options) {
  if (d < 2) throw InputError("partition needs d >= 2");
  if (d > options.max_dimension) {
    throw SizeError("partition dimension " + std::to_string(d) + " exceeds limit " +
                    std::to_string(options.max_dimension));
  }
  if (!(gamma > 0.0 && gamma < 0.5 * kPi)) throw InputError("partition gamma must lie in (0, pi/2)");

  std::size_t n = 0;
  if (d == 2) {
    n = static_cast<std::size_t>(std::ceil(2.0 * kPi / gamma));
  } else {
    NodeBuilder builder;
    auto fits = [&](std::size_t count) { return builder.get(d - 1, count)->max_diameter <= gamma; };
    const std::size_t ceiling = 2 * options.max_cells;
    std::size_t hi = 2;
    while (!fits(hi)) {
      if (hi > ceiling) {
        throw SizeError("partition of S^" + std::to_string(d - 1) + " with diameter " +
                        std::to_string(gamma) + " needs more than " +
                        std::to_string(options.max_cells) + " cells");
      }
      hi *= 2;
    }
    std::size_t lo = hi / 2;  // fails (or is the trivial lower end)
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (fits(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    n = hi;
  }
  if (n > options.max_cells) {
    throw SizeError("partition needs " + std::to_string(n) + " cells, above the limit " +
                    std::to_string(options.max_cells));
  }

  auto scheme = std::make_shared<const ZonalPartition>(d, n);
  std::vector<double> reps(n * d);
  double worst_volume = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    scheme->center(r, std::span<double>(reps.data() + r * d, d));
    worst_volume = std::max(worst_volume, std::abs(scheme->measure(r) * static_cast<double>(n) - 1.0));
  }
  const double certified = scheme->max_diameter_bound();
  return CellPartition(d, std::move(reps), certified, worst_volume, std::move(scheme));
}

void write_points(std::ostream& out, int d, std::span<const double> points, double gamma) {
  const std::size_t n = points.size() / d;
  out << d << ' ' << n << ' ' << std::setprecision(17) << gamma << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) out << (j ? " " : "") << points[i * d + j];
    out << '\n';
  }
}

void write_partition(std::ostream& out, const CellPartition& partition) {
  write_points(out, partition.dimension(), partition.representatives(), partition.gamma());
}

CellPartition parse_partition(std::istream& in) {
  std::string line;
  auto next_data_line = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_data_line()) throw IoError("points file: missing \"d n gamma\" header");
  int d = 0;
  std::size_t n = 0;
  double gamma = 0.0;
  {
    std::istringstream header(line);
    if (!(header >> d >> n >> gamma) || d < 2 || n < 1) {
      throw IoError("points file: malformed header \"" + line + "\"");
    }
  }
  std::vector<double> values;
  values.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_data_line()) throw IoError("points file: expected " + std::to_string(n) + " vectors");
    std::istringstream row(line);
    for (int j = 0; j < d; ++j) {
      double v = 0.0;
      if (!(row >> v)) throw IoError("points file: short vector on line \"" + line + "\"");
      values.push_back(v);
    }
  }
  return CellPartition(d, std::move(values), gamma, std::numeric_limits<double>::quiet_NaN());
}

CellPartition read_partition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open points file " + path);
  return parse_partition(in);
}

}  // namespace sphcut
