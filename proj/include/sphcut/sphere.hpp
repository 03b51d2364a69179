#pragma once

#include <cstddef>
#include <span>

namespace sphcut {

inline constexpr double kPi = 3.14159265358979323846;

/// Geodesic distance arccos(<x, y>) with the inner product clamped to [-1, 1].
/// Throws InputError unless both inputs have unit norm within 1e-9.
double angle(std::span<const double> x, std::span<const double> y);

double dot(std::span<const double> x, std::span<const double> y);

/// Normalized measure of a spherical cap of angular radius `phi` on S^{d-1}:
/// int_0^phi sin^{d-2} t dt / int_0^pi sin^{d-2} t dt.
double cap_measure(int d, double phi);

/// Natural log of cap_measure; finite for caps whose measure underflows a double.
double log_cap_measure(int d, double phi);

/// Angular radius of the cap on S^{d-1} with normalized measure `q` in [0, 1].
double cap_radius_for_measure(int d, double q);

/// Parameters of the threshold-graph construction G(theta, epsilon).
struct ConstructionParams {
  double theta = 0.0;    // edge threshold angle, in (pi/2, pi)
  double epsilon = 0.0;  // in (0, 1)
  int d = 0;             // ambient dimension of the sphere S^{d-1}
  double gamma = 0.0;    // certified cell diameter bound
  std::size_t n_cells = 0;
  bool d_overridden = false;
  bool gamma_overridden = false;
};

/// Smallest d >= 2 with cap(d, pi-theta-epsilon) <= epsilon * cap(d, pi-theta).
/// Throws InputError when pi - theta - epsilon <= 0.
int choose_dimension(double theta, double epsilon);

/// Largest gamma on the grid (eps/(d|cot theta|)) * 0.9^j, j = 0, 1, ..., with
/// cap(d, pi-theta-gamma) >= (1-epsilon) * cap(d, pi-theta+gamma).
/// Throws InfeasibleError if no grid point qualifies.
double choose_gamma(double theta, double epsilon, int d);

/// Upper end of the gamma search grid, eps / (d |cot theta|).
double gamma_ceiling(double theta, double epsilon, int d);

/// Throws InputError unless theta in (pi/2, pi) and epsilon in (0, 1).
void validate_theta_epsilon(double theta, double epsilon);

}  // namespace sphcut
