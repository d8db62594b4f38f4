#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rotosc/eigensystem.hpp"
#include "rotosc/operators.hpp"

using namespace rotosc;

namespace {

constexpr double kPi4 = std::numbers::pi / 4;

}  // namespace

TEST_CASE("block eigenvectors diagonalize the 4x4 restriction") {
  for (double mass : {0.0, 1.0, 2.5}) {
    for (int n = 1; n <= 60; n += 7) {
      const BlockEigensystem b = block_eigensystem(n, mass);
      const double e = std::sqrt(2.0 * n + mass * mass);
      for (int j = 0; j < 4; ++j) {
        CHECK(b.eigenvalues[j] == doctest::Approx(j < 2 ? e : -e));
        CHECK(b.u[j].norm() == doctest::Approx(1.0));
        CHECK((b.matrix * b.u[j] - b.eigenvalues[j] * b.u[j]).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("exact eigenfunctions are eigenvectors of the truncation") {
  const int basis = 140;
  const auto h = build_dirac({kPi4, 1.0}, basis);
  const auto adjoint = build_dirac({-kPi4, 1.0}, basis);
  for (int n : {0, 1, 4, 10}) {
    for (int j = 1; j <= (n == 0 ? 2 : 4); ++j) {
      const ExactEigenfunction fn = exact_eigenfunction(n, j, 1.0);
      const Eigen::VectorXcd v = eigenfunction_coeff_vector(fn, kPi4, basis);
      CHECK((h.entries * v - fn.eigenvalue * v).norm() < 1e-12 * v.norm());
      const ExactEigenfunction gn = exact_eigenfunction(n, j, 1.0, true);
      const Eigen::VectorXcd w = eigenfunction_coeff_vector(gn, kPi4, basis);
      CHECK((adjoint.entries * w - gn.eigenvalue * w).norm() < 1e-12 * w.norm());
    }
  }
}

TEST_CASE("small basis is reported instead of silently truncating") {
  const ExactEigenfunction fn = exact_eigenfunction(30, 1, 1.0);
  CHECK_THROWS_AS(eigenfunction_coeff_vector(fn, kPi4, 100), InsufficientBasis);
  CHECK_THROWS_AS(eigenfunction_coeff_vector(fn, kPi4, 60), std::domain_error);
}

TEST_CASE("ground-state projector norm is 1/sqrt(cos theta)") {
  const double theta = std::numbers::pi / 3;
  CHECK(std::abs(std::exp(projector_norm_log(0, theta, 1.0)) - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(std::exp(projector_norm_log(0, 0.4, 2.0)) - 1.0 / std::sqrt(std::cos(0.4))) < 1e-12);
}

TEST_CASE("projector norms are one in the self-adjoint case") {
  for (int n : {0, 3, 50}) CHECK(std::abs(projector_norm_log(n, 0.0, 1.0)) < 1e-12);
}

TEST_CASE("closed-form rate") {
  CHECK(projector_rate(kPi4) == doctest::Approx(0.88137358701954302).epsilon(1e-14));
  CHECK(projector_rate(0.2) == doctest::Approx(std::atanh(std::sin(0.2))).epsilon(1e-14));
  CHECK(projector_rate(-0.2) == doctest::Approx(projector_rate(0.2)));
}

TEST_CASE("increment estimator approaches the closed-form rate") {
  for (double theta : {0.2, kPi4}) {
    for (double mass : {0.0, 1.0}) {
      const ProjectorNormSeries s = estimate_rate(theta, mass, 200);
      REQUIRE(s.entries.size() == 201u);
      CHECK(std::abs(s.rate_estimate - projector_rate(theta)) < 2e-2);
      CHECK(s.entries.back().increment == s.rate_estimate);
    }
  }
}

TEST_CASE("plus and minus projectors share their norm and respect the bounds") {
  for (int n = 1; n <= 40; n += 3) {
    CHECK(projector_norm_symmetry_check(n, kPi4, 1.0) < 1e-12);
    const ProjectorBounds b = projector_norm_bounds(n, kPi4, 1.0);
    const double v = projector_norm_log(n, kPi4, 1.0);
    CHECK(b.lower <= v + 1e-12);
    CHECK(v <= b.upper + 1e-12);
  }
}

TEST_CASE("matrix route to the projector norm agrees with the closed form") {
  for (double mass : {0.0, 1.0}) {
    for (int n : {0, 1, 7, 20}) {
      const double a = projector_norm_log(n, kPi4, mass);
      const double b = projector_matrix_norm_log(n, kPi4, mass, 2 * n + 80);
      CHECK(std::abs(std::expm1(a - b)) < 1e-6);
    }
  }
}

TEST_CASE("finite-rank projector is idempotent") {
  for (int n : {0, 5, 15}) CHECK(projector_idempotency_defect(n, kPi4, 1.0, 2 * n + 80) < 1e-6);
}

TEST_CASE("biorthonormality of the eigenfunction families") {
  CHECK(biorthonormality_defect(12, kPi4, 1.0, 110) < 1e-8);
  CHECK(biorthonormality_defect(6, -0.5, 0.0, 100) < 1e-8);
}

TEST_CASE("Galerkin eigenvalues are accurate at low levels only") {
  const auto rotated = galerkin_instability_profile(kPi4, 1.0, 96);
  REQUIRE(rotated.size() == 49u);
  CHECK(rotated[0].error < 1e-8);
  CHECK(rotated[2].error < 1e-8);
  CHECK(rotated[40].error > 1e-2);
  const auto plain = galerkin_instability_profile(0.0, 1.0, 96);
  for (const auto& e : plain) CHECK(e.error < 1e-10);
}
