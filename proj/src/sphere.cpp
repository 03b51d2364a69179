#include "sphcut/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sphcut/errors.hpp"

namespace sphcut {

namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr double kRelativeTolerance = 1e-13;
constexpr int kMaxDepth = 48;
constexpr int kMaxDimension = 1'000'000;

// sin^k(t) / sin^k(phi); phi <= pi/2 so the integrand peaks at the right end.
struct ScaledPower {
  int k;
  double log_peak;
  double operator()(double t) const {
    if (k == 0) return 1.0;
    const double s = std::sin(t);
    if (s <= 0.0) return 0.0;
    return std::exp(k * (std::log(s) - log_peak));
  }
};

template <typename F>
double simpson_step(const F& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, kMaxDepth);
}

// log of int_0^pi sin^k t dt (Wallis integral).
double log_full_integral(int k) {
  return 0.5 * std::log(kPi) + std::lgamma(0.5 * (k + 1)) - std::lgamma(0.5 * k + 1.0);
}

void check_dimension(int d) {
  if (d < 2 || d > kMaxDimension) {
    throw InputError("sphere dimension d = " + std::to_string(d) + " must be >= 2");
  }
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double angle(std::span<const double> x, std::span<const double> y) {
  if (std::abs(std::sqrt(dot(x, x)) - 1.0) > kUnitTolerance ||
      std::abs(std::sqrt(dot(y, y)) - 1.0) > kUnitTolerance) {
    throw InputError("angle: inputs must be unit vectors");
  }
  return std::acos(std::clamp(dot(x, y), -1.0, 1.0));
}

double log_cap_measure(int d, double phi) {
  check_dimension(d);
  if (!(phi >= 0.0 && phi <= kPi)) {
    throw InputError("cap radius " + std::to_string(phi) + " outside [0, pi]");
  }
  if (phi == 0.0) return -std::numeric_limits<double>::infinity();
  const int k = d - 2;
  if (k == 0) return std::log(phi / kPi);
  // Beyond the hemisphere work with the complementary cap so small tails
  // keep their relative accuracy.
  if (phi > 0.5 * kPi) return std::log1p(-std::exp(log_cap_measure(d, kPi - phi)));

  const ScaledPower f{k, std::log(std::sin(phi))};

  // Split into panels so the relative tolerance can be set from a coarse
  // estimate before adapting.
  constexpr int kPanels = 16;
  const double h = phi / kPanels;
  double coarse = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double a = i * h;
    coarse += h / 6.0 * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h));
  }
  const double tol = std::max(kRelativeTolerance * coarse, std::numeric_limits<double>::min());
  double scaled = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    scaled += adaptive_simpson(f, i * h, (i + 1) * h, tol / kPanels);
  }
  const double result = k * f.log_peak + std::log(scaled) - log_full_integral(k);
  return std::min(result, 0.0);
}

double cap_measure(int d, double phi) {
  return std::clamp(std::exp(log_cap_measure(d, phi)), 0.0, 1.0);
}

double cap_radius_for_measure(int d, double q) {
  check_dimension(d);
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("cap measure must lie in [0, 1]");
  if (q == 0.0) return 0.0;
  if (q == 1.0) return kPi;
  const int k = d - 2;
  const double log_norm = log_full_integral(k);

  // Safeguarded Newton on cap_measure(phi) - q; d/dphi = sin^k(phi) / W_k.
  double lo = 0.0;
  double hi = kPi;
  double phi = 0.5 * kPi;
  for (int iter = 0; iter < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon(); ++iter) {
    const double value = cap_measure(d, phi) - q;
    if (value == 0.0) return phi;
    if (value > 0.0) {
      hi = phi;
    } else {
      lo = phi;
    }
    const double s = std::sin(phi);
    const double slope = s > 0.0 ? std::exp(k * std::log(s) - log_norm) : 0.0;
    double next = slope > 0.0 ? phi - value / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - phi) <= 1e-16 * std::max(1.0, phi)) return next;
    phi = next;
  }
  return 0.5 * (lo + hi);
}

void validate_theta_epsilon(double theta, double epsilon) {
  if (!(theta > 0.5 * kPi && theta < kPi)) {
    throw InputError("theta = " + std::to_string(theta) + " must lie strictly between pi/2 and pi");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InputError("epsilon = " + std::to_string(epsilon) + " must lie in (0, 1)");
  }
}

int choose_dimension(double theta, double epsilon) {
  validate_theta_epsilon(theta, epsilon);
  const double inner = kPi - theta - epsilon;
  if (inner <= 0.0) {
    throw InputError("epsilon too large for theta: pi - theta - epsilon = " +
                     std::to_string(inner) + " <= 0");
  }
  const double outer = kPi - theta;
  const double log_eps = std::log(epsilon);
  for (int d = 2; d <= kMaxDimension; ++d) {
    if (log_cap_measure(d, inner) <= log_eps + log_cap_measure(d, outer)) return d;
  }
  throw InfeasibleError("no dimension up to " + std::to_string(kMaxDimension) +
                        " satisfies the cap ratio condition");
}

double gamma_ceiling(double theta, double epsilon, int d) {
  return epsilon / (d * std::abs(std::cos(theta) / std::sin(theta)));
}

double choose_gamma(double theta, double epsilon, int d) {
  validate_theta_epsilon(theta, epsilon);
  check_dimension(d);
  const double outer = kPi - theta;
  const double log_keep = std::log1p(-epsilon);
  double gamma = gamma_ceiling(theta, epsilon, d);
  for (int j = 0; j < 1000 && gamma > 0.0; ++j, gamma *= 0.9) {
    if (outer - gamma <= 0.0 || outer + gamma > kPi) continue;
    if (log_cap_measure(d, outer - gamma) >= log_keep + log_cap_measure(d, outer + gamma)) {
      return gamma;
    }
  }
  throw InfeasibleError("no positive gamma on the search grid satisfies the cap ratio condition");
}

}  // namespace sphcut
