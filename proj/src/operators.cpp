#include "rotosc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "rotosc/errors.hpp"

namespace rotosc {

using Complex = std::complex<double>;

void OscillatorParams::validate() const {
  require_admissible_angle(theta, "OscillatorParams");
  if (!(mass >= 0.0)) throw std::domain_error("OscillatorParams: mass must be nonnegative");
}

void RelativisticParams::validate() const {
  require_admissible_angle(theta, "RelativisticParams");
  if (!(mass > 0.0)) throw std::domain_error("RelativisticParams: mass must be positive");
  if (!(c > 0.0)) throw std::domain_error("RelativisticParams: c must be positive");
  if (!(omega > 0.0)) throw std::domain_error("RelativisticParams: omega must be positive");
}

const DiracMatrices& DiracMatrices::standard() {
  static const DiracMatrices matrices = [] {
    const Complex i(0, 1);
    DiracMatrices d;
    d.alpha0 << 1, 0, 0, 0,
                0, 1, 0, 0,
                0, 0, -1, 0,
                0, 0, 0, -1;
    d.alpha1 << 0, 0, 0, 1,
                0, 0, 1, 0,
                0, 1, 0, 0,
                1, 0, 0, 0;
    d.alpha2 << 0, 0, 0, -i,
                0, 0, i, 0,
                0, -i, 0, 0,
                i, 0, 0, 0;
    d.alpha3 << 0, 0, 1, 0,
                0, 0, 0, -1,
                1, 0, 0, 0,
                0, -1, 0, 0;
    d.i_alpha1_alpha2 = i * d.alpha1 * d.alpha2;
    return d;
  }();
  return matrices;
}

const Eigen::Matrix4cd& DiracMatrices::alpha(int mu) const {
  switch (mu) {
    case 0: return alpha0;
    case 1: return alpha1;
    case 2: return alpha2;
    case 3: return alpha3;
    default: throw std::out_of_range("DiracMatrices::alpha: index must be 0..3");
  }
}

namespace {

void require_basis_size(int basis_size, int minimum, const char* where) {
  if (basis_size < minimum) {
    throw std::domain_error(std::string(where) + ": basis size must be at least " + std::to_string(minimum));
  }
}

// -i e^{-i theta/2} alpha_1 D - e^{i theta/2} alpha_2 X, scaled by `scale`.
Eigen::MatrixXcd kinetic_part(double theta, double scale, int basis_size) {
  const auto& d = DiracMatrices::standard();
  const Complex i(0, 1);
  const Eigen::MatrixXd deriv = derivative_matrix(basis_size);
  const Eigen::MatrixXd pos = position_matrix(basis_size);
  return spinor_kron((-i * std::polar(scale, -theta / 2)) * d.alpha1, deriv) -
         spinor_kron(std::polar(scale, theta / 2) * d.alpha2, pos);
}

}  // namespace

Eigen::MatrixXd derivative_matrix(int basis_size) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(basis_size, basis_size);
  for (int n = 0; n + 1 < basis_size; ++n) {
    const double v = std::sqrt(0.5 * (n + 1));
    d(n, n + 1) = v;
    d(n + 1, n) = -v;
  }
  return d;
}

Eigen::MatrixXd position_matrix(int basis_size) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(basis_size, basis_size);
  for (int n = 0; n + 1 < basis_size; ++n) {
    const double v = std::sqrt(0.5 * (n + 1));
    x(n, n + 1) = v;
    x(n + 1, n) = v;
  }
  return x;
}

Eigen::VectorXd parity_signs(int basis_size) {
  Eigen::VectorXd p(basis_size);
  for (int n = 0; n < basis_size; ++n) p(n) = (n % 2 == 0) ? 1.0 : -1.0;
  return p;
}

TruncatedOperator build_schrodinger(double theta, int basis_size) {
  require_admissible_angle(theta, "build_schrodinger");
  require_basis_size(basis_size, 3, "build_schrodinger");

  TruncatedOperator op;
  op.basis_size = basis_size;
  op.spinor_dim = 1;
  op.bandwidth = 2;
  op.entries = Eigen::MatrixXcd::Zero(basis_size, basis_size);
  const double c = std::cos(theta);
  const Complex off(0, std::sin(theta));
  for (int n = 0; n < basis_size; ++n) {
    op.entries(n, n) = (2.0 * n + 1.0) * c;
    if (n + 2 < basis_size) {
      const double ladder = std::sqrt((n + 1.0) * (n + 2.0));
      op.entries(n, n + 2) = off * ladder;
      op.entries(n + 2, n) = off * ladder;
    }
  }
  return op;
}

TruncatedOperator build_dirac(const OscillatorParams& params, int basis_size) {
  params.validate();
  require_basis_size(basis_size, 3, "build_dirac");

  TruncatedOperator op;
  op.basis_size = basis_size;
  op.spinor_dim = 4;
  op.bandwidth = 1;
  op.entries = kinetic_part(params.theta, 1.0, basis_size);
  if (params.mass != 0.0) {
    op.entries += spinor_kron(params.mass * DiracMatrices::standard().alpha3, Eigen::MatrixXd::Identity(basis_size, basis_size));
  }
  return op;
}

TruncatedOperator build_dimensionful(const RelativisticParams& params, int basis_size) {
  params.validate();
  require_basis_size(basis_size, 3, "build_dimensionful");

  TruncatedOperator op;
  op.basis_size = basis_size;
  op.spinor_dim = 4;
  op.bandwidth = 1;
  const double kinetic_scale = params.c * std::sqrt(params.mass * params.omega);
  const double rest_energy = params.mass * params.c * params.c;
  op.entries = kinetic_part(params.theta, kinetic_scale, basis_size) +
               spinor_kron(rest_energy * DiracMatrices::standard().alpha3, Eigen::MatrixXd::Identity(basis_size, basis_size));
  return op;
}

std::pair<TruncatedOperator, TruncatedOperator> split_symmetric_antisymmetric(double theta, int basis_size) {
  require_admissible_angle(theta, "split_symmetric_antisymmetric");
  require_basis_size(basis_size, 3, "split_symmetric_antisymmetric");

  const auto& d = DiracMatrices::standard();
  const Complex i(0, 1);
  const Eigen::MatrixXd deriv = derivative_matrix(basis_size);
  const Eigen::MatrixXd pos = position_matrix(basis_size);

  TruncatedOperator a;
  a.basis_size = basis_size;
  a.spinor_dim = 4;
  a.bandwidth = 1;
  TruncatedOperator b = a;
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  a.entries = spinor_kron((-i * c) * d.alpha1, deriv) - spinor_kron(c * d.alpha2, pos);
  b.entries = spinor_kron(-s * d.alpha1, deriv) - spinor_kron((i * s) * d.alpha2, pos);
  return {std::move(a), std::move(b)};
}

std::vector<double> exact_spectrum(double mass, int n_max) {
  if (n_max < 0) throw std::domain_error("exact_spectrum: n_max must be nonnegative");
  std::vector<double> levels;
  levels.reserve(2 * n_max + 2);
  for (int n = 0; n <= n_max; ++n) {
    const double e = std::sqrt(2.0 * n + mass * mass);
    levels.push_back(e);
    if (e != 0.0) levels.push_back(-e);
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

Eigen::MatrixXcd square_identity_defect(const OscillatorParams& params, int basis_size) {
  const TruncatedOperator h = build_dirac(params, basis_size);
  const TruncatedOperator s = build_schrodinger(params.theta, basis_size);
  const Eigen::MatrixXcd shifted =
      s.entries + params.mass * params.mass * Eigen::MatrixXcd::Identity(basis_size, basis_size);
  Eigen::MatrixXcd defect = h.entries * h.entries;
  defect -= spinor_kron(Eigen::Matrix4cd::Identity(), shifted);
  defect -= spinor_kron(DiracMatrices::standard().i_alpha1_alpha2, Eigen::MatrixXd::Identity(basis_size, basis_size));
  return defect;
}

double square_identity_residual(const OscillatorParams& params, int basis_size) {
  require_basis_size(basis_size, 4, "square_identity_residual");
  const Eigen::MatrixXcd defect = square_identity_defect(params, basis_size);
  double worst = 0.0;
  for (Eigen::Index r = 0; r < defect.rows(); ++r) {
    if (r % basis_size > basis_size - 2) continue;
    for (Eigen::Index c = 0; c < defect.cols(); ++c) {
      if (c % basis_size > basis_size - 2) continue;
      worst = std::max(worst, std::abs(defect(r, c)));
    }
  }
  return worst;
}

double numerical_range_max_imag(const TruncatedOperator& op) {
  const Eigen::MatrixXcd skew = (op.entries - op.entries.adjoint()) / Complex(0, 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(skew, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("numerical_range_max_imag: eigensolver failed");
  return solver.eigenvalues().maxCoeff();
}

void write_matrix_dump(std::ostream& out, const TruncatedOperator& op) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (Eigen::Index r = 0; r < op.dim(); ++r) {
    for (Eigen::Index c = 0; c < op.dim(); ++c) {
      const Complex v = op.entries(r, c);
      if (v == Complex(0)) continue;
      out << r << ' ' << c << ' ' << v.real() << ' ' << v.imag() << '\n';
    }
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace rotosc
