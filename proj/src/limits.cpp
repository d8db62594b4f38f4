#include "rotosc/limits.hpp"

#include <stdexcept>

#include "rotosc/errors.hpp"

namespace rotosc {

TruncatedOperator build_limit_operator(double theta, double mass, double omega, int basis_size) {
  require_admissible_angle(theta, "build_limit_operator");
  if (!(mass > 0.0)) throw std::domain_error("build_limit_operator: mass must be positive");
  if (!(omega > 0.0)) throw std::domain_error("build_limit_operator: omega must be positive");

  const TruncatedOperator s = build_schrodinger(theta, basis_size);
  TruncatedOperator op;
  op.basis_size = basis_size;
  op.spinor_dim = 4;
  op.bandwidth = 2;
  op.entries = spinor_kron(Eigen::Matrix4cd::Identity(), (0.5 * omega) * s.entries) +
               spinor_kron((0.5 * omega) * DiracMatrices::standard().i_alpha1_alpha2,
                           Eigen::MatrixXd::Identity(basis_size, basis_size));
  return op;
}

Eigen::MatrixXcd positive_mass_projector(int basis_size) {
  const Eigen::Matrix4cd p = 0.5 * (Eigen::Matrix4cd::Identity() + DiracMatrices::standard().alpha3);
  return spinor_kron(p, Eigen::MatrixXd::Identity(basis_size, basis_size));
}

LimitCheckResult nonrel_convergence(double theta, double mass, double omega, std::complex<double> z,
                                    const std::vector<double>& c_values, int basis_size) {
  if (z.imag() == 0.0) throw std::domain_error("nonrel_convergence: z must be non-real");
  if (basis_size < 64) throw std::domain_error("nonrel_convergence: basis size must be at least 64");
  if (c_values.empty()) throw std::domain_error("nonrel_convergence: no c values");
  for (std::size_t k = 0; k < c_values.size(); ++k) {
    if (!(c_values[k] > 0.0) || (k > 0 && !(c_values[k] > c_values[k - 1]))) {
      throw std::domain_error("nonrel_convergence: c values must be positive and increasing");
    }
  }

  const Eigen::Index dim = 4 * Eigen::Index(basis_size);
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);
  const TruncatedOperator limit = build_limit_operator(theta, mass, omega, basis_size);

  Eigen::PartialPivLU<Eigen::MatrixXcd> limit_lu(limit.entries - z * identity);
  const Eigen::MatrixXcd limit_resolvent = limit_lu.inverse() * positive_mass_projector(basis_size);

  const int kept = basis_size / 2;
  std::vector<Eigen::Index> rows;
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < kept; ++i) rows.push_back(Eigen::Index(k) * basis_size + i);
  }

  LimitCheckResult result;
  result.z = z;
  result.c_values = c_values;
  result.compared_modes = kept;
  for (double c : c_values) {
    const TruncatedOperator h = build_dimensionful({theta, mass, c, omega}, basis_size);
    const Eigen::MatrixXcd shifted = h.entries - (mass * c * c + z) * identity;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    const double pivot_floor = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(pivot_floor > 0.0)) throw NumericalError("nonrel_convergence: singular shift");
    const Eigen::MatrixXcd diff = lu.inverse() - limit_resolvent;
    const Eigen::MatrixXcd block = diff(rows, rows);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
    result.diff_norms.push_back(svd.singularValues()(0));
  }
  result.monotone = true;
  for (std::size_t k = 1; k < result.diff_norms.size(); ++k) {
    result.monotone = result.monotone && result.diff_norms[k] < result.diff_norms[k - 1];
  }
  return result;
}

}  // namespace rotosc
