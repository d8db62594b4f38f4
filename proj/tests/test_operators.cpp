#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "rotosc/operators.hpp"

using namespace rotosc;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("gamma matrices obey the Clifford relations") {
  const auto& g = DiracMatrices::standard();
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const Eigen::Matrix4cd anti = g.alpha(mu) * g.alpha(nu) + g.alpha(nu) * g.alpha(mu);
      CHECK(max_abs(anti - (mu == nu ? 2.0 : 0.0) * id) < 1e-15);
    }
    CHECK(max_abs(g.alpha(mu) - g.alpha(mu).adjoint()) < 1e-15);
  }
  CHECK(max_abs(g.i_alpha1_alpha2 - std::complex<double>(0, 1) * g.alpha1 * g.alpha2) < 1e-15);
}

TEST_CASE("ladder matrices have the documented entries") {
  const Eigen::MatrixXd d = derivative_matrix(6);
  const Eigen::MatrixXd x = position_matrix(6);
  CHECK(d(2, 3) == doctest::Approx(std::sqrt(1.5)));
  CHECK(d(3, 2) == doctest::Approx(-std::sqrt(1.5)));
  CHECK(x(2, 3) == doctest::Approx(std::sqrt(1.5)));
  CHECK(x(3, 2) == doctest::Approx(std::sqrt(1.5)));
  CHECK((d + d.transpose()).cwiseAbs().maxCoeff() == 0.0);
  // [d, x] = 1 away from the truncation corner
  const Eigen::MatrixXd comm = d * x - x * d;
  for (int i = 0; i < 5; ++i) CHECK(comm(i, i) == doctest::Approx(1.0));
}

TEST_CASE("rotated Schrodinger truncation reproduces its real spectrum at low levels") {
  const TruncatedOperator s = build_schrodinger(0.5, 96);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(s.entries);
  for (int n = 0; n < 4; ++n) {
    double best = 1e9;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      best = std::min(best, std::abs(es.eigenvalues()(k) - std::complex<double>(2 * n + 1)));
    }
    CHECK(best < 1e-8);
  }
}

TEST_CASE("self-adjoint case is Hermitian and has the exact spectrum") {
  const TruncatedOperator h = build_dirac({0.0, 1.0}, 64);
  CHECK(max_abs(h.entries - h.entries.adjoint()) < 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.entries);
  const auto exact = exact_spectrum(1.0, 5);
  for (double e : exact) {
    double best = 1e9;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) best = std::min(best, std::abs(es.eigenvalues()(k) - e));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("exact spectrum lists each level once") {
  const auto with_mass = exact_spectrum(1.0, 2);
  REQUIRE(with_mass.size() == 6u);
  CHECK(with_mass.front() == doctest::Approx(-std::sqrt(5.0)));
  CHECK(with_mass.back() == doctest::Approx(std::sqrt(5.0)));
  const auto massless = exact_spectrum(0.0, 2);
  REQUIRE(massless.size() == 5u);
  CHECK(massless[2] == 0.0);
}

TEST_CASE("adjoint flips the rotation angle") {
  for (double theta : {0.3, -0.9}) {
    const auto h = build_dirac({theta, 1.5}, 40);
    const auto hm = build_dirac({-theta, 1.5}, 40);
    CHECK(max_abs(h.entries.adjoint() - hm.entries) < 1e-14);
  }
}

TEST_CASE("alpha0 anticommutes with the massless operator and conjugation symmetry holds") {
  const int n = 64;
  const auto& g = DiracMatrices::standard();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXcd a0 = spinor_kron(g.alpha0, id);
  const Eigen::MatrixXd parity = parity_signs(n).asDiagonal();
  const Eigen::MatrixXcd p = spinor_kron(Eigen::Matrix4cd::Identity(), parity);
  for (double mass : {0.0, 2.0}) {
    const auto h = build_dirac({std::numbers::pi / 4, mass}, n);
    CHECK(max_abs(a0 * h.entries * a0 + h.entries) < 1e-14);
    CHECK(max_abs(p * h.entries.conjugate() * p - h.entries.adjoint()) < 1e-14);
  }
}

TEST_CASE("operator square reproduces the rotated oscillator on the interior block") {
  for (double theta : {0.0, std::numbers::pi / 4, -1.2}) {
    for (double mass : {0.0, 1.0, 2.0}) CHECK(square_identity_residual({theta, mass}, 64) < 1e-12);
  }
}

TEST_CASE("split into Hermitian and anti-Hermitian parts") {
  const auto [a, b] = split_symmetric_antisymmetric(0.7, 32);
  const auto h = build_dirac({0.7, 0.0}, 32);
  CHECK(max_abs(a.entries + b.entries - h.entries) < 1e-15);
  CHECK(max_abs(a.entries - a.entries.adjoint()) < 1e-15);
  CHECK(max_abs(b.entries + b.entries.adjoint()) < 1e-15);
}

TEST_CASE("numerical range grows with the basis for theta != 0") {
  const double small = numerical_range_max_imag(build_dirac({0.5, 1.0}, 32));
  const double large = numerical_range_max_imag(build_dirac({0.5, 1.0}, 128));
  CHECK(small > 0.5);
  CHECK(large > 1.5 * small);
  CHECK(std::abs(numerical_range_max_imag(build_dirac({0.0, 1.0}, 64))) < 1e-10);
}

TEST_CASE("dimensionful operator rescales the massless operator") {
  const RelativisticParams p{0.4, 1.0, 3.0, 2.0};
  const auto h = build_dimensionful(p, 32);
  const auto h0 = build_dirac({0.4, 0.0}, 32);
  const Eigen::MatrixXcd mass_term =
      p.mass * p.c * p.c * spinor_kron(DiracMatrices::standard().alpha3, Eigen::MatrixXd::Identity(32, 32));
  CHECK(max_abs(h.entries - (p.c * std::sqrt(p.mass * p.omega) * h0.entries + mass_term)) < 1e-12);
}

TEST_CASE("matrix dump lists nonzero entries with full precision") {
  const auto h = build_dirac({0.3, 1.0}, 4);
  std::ostringstream out;
  write_matrix_dump(out, h);
  std::istringstream in(out.str());
  int rows = 0;
  int r = 0;
  int c = 0;
  double re = 0.0;
  double im = 0.0;
  while (in >> r >> c >> re >> im) {
    CHECK(h.entries(r, c) == std::complex<double>(re, im));
    ++rows;
  }
  CHECK(rows == (h.entries.array() != std::complex<double>(0)).count());
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(build_dirac({std::numbers::pi / 2, 1.0}, 16), std::domain_error);
  CHECK_THROWS_AS(build_dirac({0.1, -1.0}, 16), std::domain_error);
  CHECK_THROWS_AS(build_dirac({0.1, 1.0}, 0), std::domain_error);
}
