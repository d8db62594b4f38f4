#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "rotosc/special_functions.hpp"

using rotosc::gauss_hermite;
using rotosc::hermite_function;
using rotosc::overlap;
using Complex = std::complex<double>;

namespace {

// Reference values from tests/oracles/mp_oracle.py (60-digit mpmath).
void check_close(Complex got, Complex want, double rel) {
  CHECK(std::abs(got - want) <= rel * std::abs(want));
}

}  // namespace

TEST_CASE("hermite function matches the arbitrary-precision reference") {
  check_close(hermite_function(25, Complex(1.3, 0.4)).to_complex(),
              Complex(0.45401864247246128698, -2.4499082043514080976), 1e-12);
  check_close(hermite_function(60, Complex(2.5, -1.5)).to_complex(),
              Complex(-877591.30768050896815, 846342.09599117067451), 1e-12);
}

TEST_CASE("scaled hermite recurrence survives large arguments") {
  const auto v = hermite_function(150, Complex(8.0, 6.0));
  CHECK(v.log_abs() == doctest::Approx(92.863672790820533143).epsilon(1e-13));
  CHECK(v.arg() == doctest::Approx(-1.200351061586345085).epsilon(1e-10));
}

TEST_CASE("hermite functions on the real line are orthonormal under Gauss-Hermite") {
  const auto rule = gauss_hermite(60);
  for (int j = 0; j < 20; ++j) {
    for (int k = j; k < 20; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double x = rule.nodes[i];
        sum += rule.scaled_weights[i] * hermite_function(j, Complex(x)).to_complex().real() *
               hermite_function(k, Complex(x)).to_complex().real();
      }
      CHECK(std::abs(sum - (j == k ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("gauss-hermite rule integrates polynomials exactly") {
  const auto rule = gauss_hermite(20);
  REQUIRE(rule.size() == 20u);
  double m0 = 0.0;
  double m2 = 0.0;
  double m38 = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    m0 += rule.weights[i];
    m2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    m38 += rule.weights[i] * std::pow(rule.nodes[i], 38);
    CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[rule.size() - 1 - i]).epsilon(1e-14));
  }
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  CHECK(m0 == doctest::Approx(sqrt_pi).epsilon(1e-14));
  CHECK(m2 == doctest::Approx(sqrt_pi / 2).epsilon(1e-14));
  // Gamma(39/2) = 37!! sqrt(pi) / 2^19
  double double_factorial = 1.0;
  for (int k = 37; k > 1; k -= 2) double_factorial *= k;
  CHECK(m38 == doctest::Approx(double_factorial * sqrt_pi / std::pow(2.0, 19)).epsilon(1e-11));
}

TEST_CASE("large rules stay usable through the scaled weights") {
  const auto rule = gauss_hermite(400);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.scaled_weights[i] * std::exp(-rule.nodes[i] * rule.nodes[i]);
  CHECK(sum == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("overlap closed form matches the reference quadrature") {
  check_close(overlap(2, 0, std::numbers::pi / 4), Complex(-0.059448016583090958019, -0.29886536149672549288), 1e-13);
  check_close(overlap(7, 5, std::numbers::pi / 4), Complex(-0.5583396813790313356, -2.8069631302177672448), 1e-13);
  check_close(overlap(30, 20, 0.3), Complex(-0.028336042481033770017, -0.37710523289230001985), 1e-12);
  check_close(overlap(3, 11, -0.7), Complex(0.15132688776596847779, 0.02675589776027299889), 1e-12);
  CHECK(overlap(3, 4, 0.5) == Complex(0.0));
}

TEST_CASE("overlap agrees with the library quadrature route") {
  for (int k = 0; k < 24; k += 3) {
    for (int n = 0; n < 16; n += 2) {
      const Complex a = overlap(k, n, 0.6);
      const Complex b = rotosc::overlap_by_quadrature(k, n, 0.6);
      CHECK(std::abs(a - b) < 1e-11 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("overlap reduces to the identity at theta = 0") {
  for (int k = 0; k < 10; ++k) {
    for (int n = 0; n < 10; ++n) CHECK(std::abs(overlap(k, n, 0.0) - Complex(k == n ? 1.0 : 0.0)) < 1e-15);
  }
}

TEST_CASE("rotated norms match the reference values") {
  const double pi4 = std::numbers::pi / 4;
  CHECK(rotosc::rotated_norm_sq_log(10, pi4) == doctest::Approx(7.3505770816714568379).epsilon(1e-12));
  CHECK(rotosc::rotated_norm_sq_log(20, pi4) == doctest::Approx(15.821077213189333125).epsilon(1e-12));
  CHECK(rotosc::rotated_norm_sq_log(30, pi4) == doctest::Approx(24.433245658933458384).epsilon(1e-12));
  CHECK(rotosc::rotated_norm_sq_log(40, pi4) == doctest::Approx(33.103731849698091157).epsilon(1e-12));
  CHECK(rotosc::rotated_norm_sq_log(25, 0.2) == doctest::Approx(3.4318954137720469765).epsilon(1e-12));
  const auto series = rotosc::rotated_norm_sq_log_series(40, pi4);
  REQUIRE(series.size() == 41u);
  CHECK(series[40] == doctest::Approx(33.103731849698091157).epsilon(1e-12));
  CHECK(std::abs(series[0] - std::log(1.0 / std::sqrt(std::cos(pi4)))) < 1e-13);
}

TEST_CASE("rotated norms are Parseval sums of overlaps") {
  for (int n : {0, 5, 12}) {
    double sum = 0.0;
    for (int k = 0; k < n + 120; ++k) sum += std::norm(overlap(k, n, 0.9));
    CHECK(std::log(sum) == doctest::Approx(rotosc::rotated_norm_sq_log(n, 0.9)).epsilon(1e-12));
  }
}

TEST_CASE("inadmissible arguments throw") {
  CHECK_THROWS_AS(hermite_function(-1, Complex(0.0)), std::domain_error);
  CHECK_THROWS_AS(overlap(1, 1, std::numbers::pi / 2), std::domain_error);
  CHECK_THROWS_AS(overlap(-1, 1, 0.1), std::domain_error);
}
