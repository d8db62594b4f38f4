#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rotosc/limits.hpp"
#include "rotosc/operators.hpp"

using namespace rotosc;

TEST_CASE("positive mass projector is an orthogonal projector of half rank") {
  const Eigen::MatrixXcd p = positive_mass_projector(16);
  CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(p.trace().real() == doctest::Approx(32.0));
}

TEST_CASE("limit operator is the scaled rotated oscillator plus the spin term") {
  const int n = 24;
  const auto lim = build_limit_operator(0.5, 1.0, 2.0, n);
  const auto s = build_schrodinger(0.5, n);
  const Eigen::MatrixXcd expected =
      spinor_kron(Eigen::Matrix4cd::Identity(), s.entries) +
      spinor_kron(DiracMatrices::standard().i_alpha1_alpha2, Eigen::MatrixXd::Identity(n, n));
  CHECK((lim.entries - expected).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(lim.bandwidth == 2);
}

TEST_CASE("non-relativistic resolvent difference decays with c") {
  const auto r = nonrel_convergence(std::numbers::pi / 4, 1.0, 1.0, {0.0, 1.0}, {1, 2, 4, 8, 16}, 64);
  REQUIRE(r.diff_norms.size() == 5u);
  CHECK(r.monotone);
  CHECK(r.diff_norms.back() / r.diff_norms.front() < 0.1);
  CHECK(r.compared_modes == 32);
}

TEST_CASE("self-adjoint limit converges at the first-order rate") {
  const auto r = nonrel_convergence(0.0, 1.0, 1.0, {0.5, 1.0}, {4, 8, 16}, 64);
  CHECK(r.monotone);
  CHECK(r.diff_norms[2] / r.diff_norms[1] == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("limit check rejects bad input") {
  CHECK_THROWS_AS(nonrel_convergence(0.3, 1.0, 1.0, {1.0, 0.0}, {1, 2}, 64), std::domain_error);
  CHECK_THROWS_AS(nonrel_convergence(0.3, 1.0, 1.0, {0.0, 1.0}, {1, 2}, 32), std::domain_error);
}
