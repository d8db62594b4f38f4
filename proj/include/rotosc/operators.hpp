#pragma once

#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rotosc {

/// Rotation angle and mass of H_theta (and S_theta, which ignores the mass).
struct OscillatorParams {
  double theta = 0.0;
  double mass = 0.0;

  /// Throws std::domain_error unless |theta| < pi/2 and mass >= 0.
  void validate() const;
};

/// Dimensionful configuration: rotation angle, mass, speed of light, frequency.
struct RelativisticParams {
  double theta = 0.0;
  double mass = 1.0;
  double c = 1.0;
  double omega = 1.0;

  void validate() const;
};

/// Finite Hermite-Galerkin section of an operator.
///
/// Spinor-major layout: row k * basis_size + i is spinor component k paired
/// with Hermite function h_i. Entries vanish whenever the Hermite indices of
/// row and column differ by more than `bandwidth`.
struct TruncatedOperator {
  int basis_size = 0;
  int spinor_dim = 1;
  int bandwidth = 0;
  Eigen::MatrixXcd entries;

  Eigen::Index dim() const { return entries.rows(); }
  int hermite_index(Eigen::Index row) const { return static_cast<int>(row % basis_size); }
  int spinor_index(Eigen::Index row) const { return static_cast<int>(row / basis_size); }
};

/// alpha_0..alpha_3 in the standard representation and i alpha_1 alpha_2.
struct DiracMatrices {
  Eigen::Matrix4cd alpha0;
  Eigen::Matrix4cd alpha1;
  Eigen::Matrix4cd alpha2;
  Eigen::Matrix4cd alpha3;
  Eigen::Matrix4cd i_alpha1_alpha2;

  static const DiracMatrices& standard();
  const Eigen::Matrix4cd& alpha(int mu) const;
};

/// d/dx in the basis {h_n}: (n, n+1) -> sqrt((n+1)/2), (n+1, n) -> -sqrt((n+1)/2).
Eigen::MatrixXd derivative_matrix(int basis_size);
/// x in the basis {h_n}: (n, n+1) = (n+1, n) = sqrt((n+1)/2).
Eigen::MatrixXd position_matrix(int basis_size);
/// diag((-1)^n): the parity x -> -x in the basis {h_n}.
Eigen::VectorXd parity_signs(int basis_size);

/// alpha (4x4) tensored with a scalar block, in spinor-major layout.
template <typename Block>
Eigen::MatrixXcd spinor_kron(const Eigen::Matrix4cd& alpha, const Eigen::MatrixBase<Block>& block) {
  const Eigen::Index n = block.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4 * n, 4 * block.cols());
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (alpha(r, c) == std::complex<double>(0)) continue;
      out.block(r * n, c * block.cols(), n, block.cols()) = alpha(r, c) * block.template cast<std::complex<double>>();
    }
  }
  return out;
}

/// S_theta = -e^{-i theta} d^2/dx^2 + e^{i theta} x^2, pentadiagonal.
TruncatedOperator build_schrodinger(double theta, int basis_size);

/// H_theta = -i e^{-i theta/2} alpha_1 d/dx - e^{i theta/2} alpha_2 x + m alpha_3.
TruncatedOperator build_dirac(const OscillatorParams& params, int basis_size);

/// c sqrt(m omega) H_theta(m = 0) + m c^2 alpha_3: the dimensionful operator
/// written in the length unit 1/sqrt(m omega).
TruncatedOperator build_dimensionful(const RelativisticParams& params, int basis_size);

/// Hermitian part A and anti-Hermitian part B of H_theta at m = 0.
std::pair<TruncatedOperator, TruncatedOperator> split_symmetric_antisymmetric(double theta, int basis_size);

/// {+-sqrt(2n + m^2)}_{n=0..n_max}, ascending; 0 appears once when m = 0.
std::vector<double> exact_spectrum(double mass, int n_max);

/// H^2 - (S_theta + m^2) I_4 - i alpha_1 alpha_2, full matrix. The truncation
/// only corrupts rows and columns of the last Hermite mode.
Eigen::MatrixXcd square_identity_defect(const OscillatorParams& params, int basis_size);

/// Max-abs entry of square_identity_defect on Hermite indices <= N - 2.
double square_identity_residual(const OscillatorParams& params, int basis_size);

/// Largest imaginary part over the numerical range of the truncation.
double numerical_range_max_imag(const TruncatedOperator& op);

/// Writes one "row col re im" line per nonzero entry, row-major, 17 significant digits.
void write_matrix_dump(std::ostream& out, const TruncatedOperator& op);

}  // namespace rotosc
