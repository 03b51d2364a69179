#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "sphcut/errors.hpp"
#include "sphcut/sphere.hpp"

using namespace sphcut;

TEST_CASE("angle") {
  const std::vector<double> x{1.0, 0.0};
  const std::vector<double> y{0.0, 1.0};
  const std::vector<double> minus_x{-1.0, 0.0};
  CHECK(angle(x, x) == 0.0);
  CHECK(angle(x, minus_x) == doctest::Approx(kPi));
  CHECK(angle(x, y) == doctest::Approx(kPi / 2));
  CHECK(angle(x, y) == angle(y, x));
  const std::vector<double> bad{2.0, 0.0};
  CHECK_THROWS_AS(angle(x, bad), InputError);
  // Drift just past the unit sphere is clamped rather than producing NaN.
  const std::vector<double> almost{1.0 + 1e-12, 0.0};
  CHECK(angle(x, almost) == 0.0);
}

TEST_CASE("cap_measure closed forms") {
  CHECK(cap_measure(3, kPi / 3) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(cap_measure(5, kPi / 2) == doctest::Approx(0.5).epsilon(1e-13));
  double worst2 = 0.0;
  double worst3 = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double phi = kPi * i / 1000.0;
    worst2 = std::max(worst2, std::abs(cap_measure(2, phi) - phi / kPi));
    worst3 = std::max(worst3, std::abs(cap_measure(3, phi) - (1 - std::cos(phi)) / 2));
  }
  CHECK(worst2 <= 1e-10);
  CHECK(worst3 <= 1e-10);
  CHECK_THROWS_AS(cap_measure(3, -0.1), InputError);
  CHECK_THROWS_AS(cap_measure(3, 4.0), InputError);
  CHECK_THROWS_AS(cap_measure(1, 1.0), InputError);
}

TEST_CASE("cap_measure is monotone and antipodally complementary") {
  for (int d = 2; d <= 41; ++d) {
    double previous = -1.0;
    for (int i = 0; i <= 25; ++i) {
      const double phi = kPi * i / 25.0;
      const double value = cap_measure(d, phi);
      CHECK(std::abs(value + cap_measure(d, kPi - phi) - 1.0) <= 1e-10);
      CHECK(value >= previous);
      if (previous > 0.0 && previous < 1.0 - 1e-12) CHECK(value > previous);
      previous = value;
    }
    CHECK(cap_measure(d, kPi / 2) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("cap_measure matches composite Simpson at moderate d") {
  for (int d : {4, 7, 12, 30}) {
    for (double phi : {0.3, 1.0, 2.0, 3.0}) {
      CHECK(cap_measure(d, phi) == doctest::Approx(oracle::cap_fraction(d, phi)).epsilon(1e-9));
    }
  }
}

TEST_CASE("log_cap_measure stays finite for tiny caps") {
  const double v = log_cap_measure(400, 0.2);
  CHECK(std::isfinite(v));
  CHECK(v < -300.0);
}

TEST_CASE("cap_radius_for_measure inverts cap_measure") {
  for (int d : {2, 3, 5, 9}) {
    for (double q : {0.001, 0.1, 0.25, 0.5, 0.9}) {
      CHECK(cap_measure(d, cap_radius_for_measure(d, q)) == doctest::Approx(q).epsilon(1e-12));
    }
  }
  CHECK(cap_radius_for_measure(3, 0.25) == doctest::Approx(kPi / 3).epsilon(1e-12));
}

TEST_CASE("choose_dimension") {
  // Frozen from the composite-Simpson linear scan (oracle::scan_dimension).
  CHECK(choose_dimension(2 * kPi / 3, 0.1) == 35);
  CHECK(choose_dimension(2 * kPi / 3, 0.2) == 11);
  CHECK(choose_dimension(2 * kPi / 3, 0.1) == oracle::scan_dimension(2 * kPi / 3, 0.1));
  CHECK(choose_dimension(2 * kPi / 3, 0.3) == oracle::scan_dimension(2 * kPi / 3, 0.3));

  // epsilon large enough that the circle already satisfies the ratio
  CHECK(choose_dimension(0.6 * kPi, 0.6) == 2);

  for (double eps : {0.05, 0.1, 0.2}) {
    const double theta = 2 * kPi / 3;
    const int d = choose_dimension(theta, eps);
    const double heuristic = std::log(1 / eps) / (eps * (theta - kPi / 2));
    CHECK(d <= 4 * heuristic);
    CHECK(d >= heuristic / 4);
    // Minimality.
    CHECK(cap_measure(d, kPi - theta - eps) <= eps * cap_measure(d, kPi - theta));
    if (d > 2) CHECK(cap_measure(d - 1, kPi - theta - eps) > eps * cap_measure(d - 1, kPi - theta));
  }

  CHECK_THROWS_AS(choose_dimension(2.9, 0.3), InputError);
  CHECK_THROWS_AS(choose_dimension(kPi / 2, 0.1), InputError);
  CHECK_THROWS_AS(choose_dimension(2.0, 1.0), InputError);
}

TEST_CASE("choose_gamma") {
  const double theta = 3 * kPi / 4;
  const double eps = 0.2;
  const double gamma = choose_gamma(theta, eps, 3);
  // Dense-grid oracle over (0, eps/(d|cot theta|)]: the feasible set is
  // (0, 0.0461584...], and the first qualifying geometric grid point is
  // (0.2/3) * 0.9^4.
  CHECK(gamma == doctest::Approx(0.2 / 3 * std::pow(0.9, 4)).epsilon(1e-12));
  CHECK(gamma <= 0.0461585);
  CHECK(gamma > 0.9 * 0.0461584);

  const double theta2 = 2 * kPi / 3;
  const int d = choose_dimension(theta2, 0.1);
  const double g2 = choose_gamma(theta2, 0.1, d);
  CHECK(g2 > 0.0);
  CHECK(g2 <= gamma_ceiling(theta2, 0.1, d));
  CHECK(cap_measure(d, kPi - theta2 - g2) >= (1 - 0.1) * cap_measure(d, kPi - theta2 + g2));
}

TEST_CASE("choose_gamma oracle grid scan") {
  const double theta = 3 * kPi / 4;
  const double eps = 0.2;
  const double ceiling = gamma_ceiling(theta, eps, 3);
  auto cap3 = [](double phi) { return (1 - std::cos(phi)) / 2; };
  double largest = 0.0;
  for (int i = 1; i <= 200000; ++i) {
    const double g = ceiling * i / 200000.0;
    if (cap3(kPi - theta - g) >= (1 - eps) * cap3(kPi - theta + g)) largest = g;
  }
  const double gamma = choose_gamma(theta, eps, 3);
  CHECK(gamma <= largest);
  CHECK(gamma / 0.9 > largest);
}
