#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sphcut {

/// Recursive zonal equal-area partition of S^{d-1} into n regions.
///
/// The sphere is cut into a north polar cap, a sequence of collars and a
/// south polar cap, each zone holding an integer number of regions whose
/// total measure is exact. A collar with m regions is split by recursively
/// partitioning its (d-2)-sphere cross-section into m regions; the circle is
/// split into equal arcs. Polar angle is measured from the last coordinate.
class ZonalPartition {
 public:
  struct Node;

  /// Throws InputError unless d >= 2 and n >= 1.
  ZonalPartition(int d, std::size_t n);

  [[nodiscard]] int dimension() const { return d_; }
  [[nodiscard]] std::size_t size() const { return n_; }

  /// Index of the region containing unit vector `x`.
  [[nodiscard]] std::size_t locate(std::span<const double> x) const;
  /// Construction-time center of region `r`; lies inside the region.
  void center(std::size_t r, std::span<double> out) const;
  /// Certified upper bound on the angular diameter of region `r`.
  [[nodiscard]] double diameter_bound(std::size_t r) const;
  [[nodiscard]] double max_diameter_bound() const;
  /// Normalized measure of region `r`, from the zone boundaries.
  [[nodiscard]] double measure(std::size_t r) const;

 private:
  int d_;
  std::size_t n_;
  std::shared_ptr<const Node> root_;
};

struct PartitionOptions {
  int max_dimension = 8;
  std::size_t max_cells = 200'000;
};

/// Equal-volume cells with one representative unit vector per cell.
///
/// A partition read back from disk has no zonal scheme attached; it carries
/// representatives and certificates only.
class CellPartition {
 public:
  CellPartition(int d, std::vector<double> representatives, double gamma, double volume_tolerance,
                std::shared_ptr<const ZonalPartition> scheme = nullptr);

  [[nodiscard]] int dimension() const { return d_; }
  [[nodiscard]] std::size_t size() const { return representatives_.size() / d_; }
  [[nodiscard]] std::span<const double> representative(std::size_t i) const {
    return {representatives_.data() + i * d_, static_cast<std::size_t>(d_)};
  }
  [[nodiscard]] const std::vector<double>& representatives() const { return representatives_; }
  /// Certified maximum cell diameter.
  [[nodiscard]] double gamma() const { return gamma_; }
  /// Certified max relative deviation of a cell volume from 1/n.
  [[nodiscard]] double volume_tolerance() const { return volume_tolerance_; }
  /// gamma * n^(1/d): the realized constant c in n <= (c / gamma)^d.
  [[nodiscard]] double realized_constant() const;

  [[nodiscard]] bool has_scheme() const { return scheme_ != nullptr; }
  /// Throws std::logic_error when no scheme is attached.
  [[nodiscard]] const ZonalPartition& scheme() const;
  [[nodiscard]] std::shared_ptr<const ZonalPartition> shared_scheme() const { return scheme_; }
  [[nodiscard]] std::size_t locate(std::span<const double> x) const { return scheme().locate(x); }

 private:
  int d_;
  std::vector<double> representatives_;
  double gamma_;
  double volume_tolerance_;
  std::shared_ptr<const ZonalPartition> scheme_;
};

/// Realized constants stay below this on every configuration exercised by the
/// test suite (d <= 8, gamma in the desk-scale range).
inline constexpr double kPartitionConstant = 12.0;

/// Partition S^{d-1} into the fewest equal-volume cells (found by doubling
/// and bisection on n) whose certified diameters are at most `gamma`.
/// On the circle this is ceil(2 pi / gamma) equal arcs. Throws SizeError above
/// the configured dimension or cell-count limits.
CellPartition partition_sphere(int d, double gamma, const PartitionOptions& options = {});

/// Text format: header "d n gamma", then one unit vector per line.
void write_points(std::ostream& out, int d, std::span<const double> points, double gamma);
CellPartition parse_partition(std::istream& in);
CellPartition read_partition(const std::string& path);
void write_partition(std::ostream& out, const CellPartition& partition);

}  // namespace sphcut
