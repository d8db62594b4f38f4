#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "rotosc/contour.hpp"
#include "rotosc/operators.hpp"
#include "rotosc/parallel.hpp"
#include "rotosc/pseudospectra.hpp"
#include "rotosc/sigma_min.hpp"

using namespace rotosc;
using Complex = std::complex<double>;

namespace {

constexpr double kPi4 = std::numbers::pi / 4;

}  // namespace

TEST_CASE("banded LU solves match dense solves") {
  const auto h = build_dirac({0.6, 1.0}, 24);
  const Eigen::MatrixXcd a = h.entries - Complex(0.3, 0.8) * Eigen::MatrixXcd::Identity(h.dim(), h.dim());
  const Eigen::Index n = a.rows();
  int band = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a(i, j) != Complex(0)) band = std::max<int>(band, static_cast<int>(std::abs(i - j)));
    }
  }
  BandedLU<Complex> lu(static_cast<int>(n), band, band);
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - band); j <= std::min<int>(static_cast<int>(n) - 1, i + band); ++j) lu.at(i, j) = a(i, j);
  }
  REQUIRE(lu.factor());
  const Eigen::VectorXcd b = Eigen::VectorXcd::LinSpaced(n, Complex(1, 0), Complex(0, 2));
  Eigen::VectorXcd x = b;
  lu.solve(x.data());
  CHECK((a * x - b).norm() < 1e-12 * b.norm());
  Eigen::VectorXcd y = b;
  lu.solve_adjoint(y.data());
  CHECK((a.adjoint() * y - b).norm() < 1e-12 * b.norm());
}

TEST_CASE("fast smallest singular value agrees with the dense SVD") {
  const auto h = build_dirac({kPi4, 1.0}, 64);
  const ResolventEvaluator fast(h);
  for (Complex z : {Complex(0.5, 0.7), Complex(-2.0, 0.1), Complex(3.0, -2.0), Complex(0.0, 4.0)}) {
    const Eigen::MatrixXcd a = h.entries - z * Eigen::MatrixXcd::Identity(h.dim(), h.dim());
    CHECK(fast.sigma_min(z) == doctest::Approx(sigma_min_dense(a)).epsilon(1e-9));
  }
  CHECK(fast.operator_norm() == doctest::Approx(norm2_estimate(h.entries)).epsilon(1e-12));
}

TEST_CASE("self-adjoint resolvent norm is the inverse distance to the spectrum") {
  const auto h = build_dirac({0.0, 1.0}, 64);
  CHECK(resolvent_norm(h, Complex(0, 1)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(ResolventEvaluator(h).resolvent_norm(Complex(0.5, 0.25)) == doctest::Approx(1.0 / std::abs(Complex(0.5, 0.25) - 1.0)).epsilon(1e-9));
}

TEST_CASE("resolvent norm at an eigenvalue is the infinity sentinel") {
  const auto h = build_dirac({0.0, 1.0}, 32);
  CHECK(std::isinf(ResolventEvaluator(h).resolvent_norm(Complex(1.0, 0.0))));
}

TEST_CASE("grid parsing and geometry") {
  const GridSpec g = parse_grid("-2:2:-1:1:5:3");
  CHECK(g.nx == 5);
  CHECK(g.ny == 3);
  CHECK(g.point(0, 0) == Complex(-2, -1));
  CHECK(g.point(4, 2) == Complex(2, 1));
  CHECK(g.point(2, 1) == Complex(0, 0));
  CHECK(g.antipodal_symmetric());
  CHECK(parse_grid("0:2:-1:1:3:3").conjugation_symmetric());
  CHECK_FALSE(parse_grid("0:2:-1:1:3:3").antipodal_symmetric());
  CHECK_THROWS(parse_grid("1:0:-1:1:3:3"));
  CHECK_THROWS(parse_grid("0:1:-1:1:1:3"));
  CHECK_THROWS(parse_grid("0:1:-1:1"));
}

TEST_CASE("reliability window") {
  CHECK(is_reliable(Complex(3, 4), 1.0, 26));
  CHECK_FALSE(is_reliable(Complex(3, 4), 1.0, 25));
}

TEST_CASE("pseudospectrum field is symmetric, nested and thread-count independent") {
  const GridSpec grid = parse_grid("-3:3:-3:3:13:13");
  const auto one = pseudospectrum_grid({kPi4, 1.0}, 64, grid, 1);
  const auto three = pseudospectrum_grid({kPi4, 1.0}, 64, grid, 3);
  REQUIRE(one.values.size() == grid.size());
  for (std::size_t k = 0; k < one.values.size(); ++k) {
    const double a = one.values[k];
    const double b = three.values[k];
    CHECK(((a == b) || (std::isnan(a) && std::isnan(b))));
  }
  CHECK(one.failures == 0);
  CHECK(antipodal_deviation(one) < 1e-8);
  CHECK(conjugation_deviation(one) < 1e-8);
  CHECK(superlevel_sets_nested(one, {0.1, 0.01, 0.001}));
}

TEST_CASE("parallel_for visits every index once and propagates exceptions") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("transition angle") {
  CHECK(std::abs(transition_angle(kPi4) - 0.615480) < 1e-6);
  CHECK(transition_angle(0.0) == 0.0);
  CHECK(transition_angle(-0.5) == transition_angle(0.5));
  for (int k = 1; k < 50; ++k) {
    const double theta = 1.5 * k / 50;
    CHECK(transition_angle(theta) >= theta / 2);
  }
}

TEST_CASE("region predicates") {
  const RegionParams rp{0.1, 1.0, 1.0, 0.01};
  CHECK(inner_region_member(Complex(20, 0.5), kPi4, 1.0, rp));
  CHECK_FALSE(inner_region_member(Complex(0, 20), kPi4, 1.0, rp));
  CHECK_FALSE(inner_region_member(Complex(1.5, 0), kPi4, 1.0, rp));
  CHECK_THROWS_AS(inner_region_member(Complex(20, 0), 0.05, 1.0, rp), std::domain_error);
  CHECK(outer_region_member(Complex(5, 0.1), kPi4, 1.0, 0.01));
  CHECK_FALSE(outer_region_member(Complex(0, 10), kPi4, 1.0, 0.01));
  const double t = std::tan(kPi4 / 2);
  CHECK(resolvent_upper_bound(Complex(0, 10), kPi4, 1.0) == doctest::Approx(1.0 / ((1 - t) * 10 - t)));
  CHECK(std::isinf(resolvent_upper_bound(Complex(5, 0.1), kPi4, 1.0)));
}

TEST_CASE("outer bound holds on a coarse grid") {
  const auto field = pseudospectrum_grid({kPi4, 2.0}, 128, parse_grid("-5:5:-5:5:21:21"), 2);
  const RegionReport r = region_consistency(field, 0.01, {0.1, 1.0, 1.0, 0.01});
  CHECK(r.bound_points > 0);
  CHECK(r.bound_violations == 0);
  CHECK(r.outer_violations == 0);
}

TEST_CASE("rays inside the spectral sector grow and rays outside obey the bound") {
  const OscillatorParams p{kPi4, 0.0};
  const RayScan inside = ray_scan(p, 128, std::numbers::pi / 16, {2, 4, 6, 8});
  CHECK(inside.strictly_increasing());
  CHECK_FALSE(inside.any_unreliable);
  const RayScan outside = ray_scan(p, 128, 1.1 * transition_angle(kPi4), {2, 4, 6, 8}, -1);
  CHECK(outside.below_upper_bound(kPi4, 0.0));
  CHECK_THROWS_AS(ray_scan(p, 128, 0.1, {2, 1}), std::domain_error);
}

TEST_CASE("marching squares finds a circle") {
  PseudospectrumField f;
  f.grid = parse_grid("-2:2:-2:2:41:41");
  f.values.resize(f.grid.size());
  f.reliable.assign(f.grid.size(), 1);
  for (int iy = 0; iy < f.grid.ny; ++iy) {
    for (int ix = 0; ix < f.grid.nx; ++ix) f.values[std::size_t(iy) * f.grid.nx + ix] = -std::abs(f.grid.point(ix, iy));
  }
  const auto segments = marching_squares(f, -1.0);
  REQUIRE(!segments.empty());
  double worst = 0.0;
  double length = 0.0;
  for (const auto& s : segments) {
    worst = std::max({worst, std::abs(std::abs(s.a) - 1.0), std::abs(std::abs(s.b) - 1.0)});
    length += std::abs(s.b - s.a);
  }
  CHECK(worst < 5e-3);
  CHECK(length == doctest::Approx(2 * std::numbers::pi).epsilon(1e-2));
}

TEST_CASE("marching squares caps infinite values and skips failed cells") {
  PseudospectrumField f;
  f.grid = parse_grid("0:1:0:1:2:2");
  f.values = {0.0, std::numeric_limits<double>::infinity(), 0.0, 0.0};
  f.reliable.assign(4, 1);
  CHECK(marching_squares(f, 1.0).size() == 1u);
  f.values[2] = std::numeric_limits<double>::quiet_NaN();
  CHECK(marching_squares(f, 1.0).empty());
}
