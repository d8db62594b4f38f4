#pragma once

#include <complex>
#include <vector>

#include "rotosc/operators.hpp"

namespace rotosc {

/// I_4 (x) S^_theta + (omega/2) i alpha_1 alpha_2 (x) I, where in the length
/// unit 1/sqrt(m omega) S^_theta = (1/2m)(-e^{-i theta} d^2 + m^2 omega^2 e^{i theta} x^2)
/// becomes (omega/2) S_theta. Block diagonal in the spinor index.
TruncatedOperator build_limit_operator(double theta, double mass, double omega, int basis_size);

/// P_+ = (I + alpha_3)/2 tensored with the identity.
Eigen::MatrixXcd positive_mass_projector(int basis_size);

struct LimitCheckResult {
  std::complex<double> z;
  std::vector<double> c_values;
  std::vector<double> diff_norms;
  bool monotone = false;  // strictly decreasing
  int compared_modes = 0;  // Hermite modes per spinor component entering the norm
};

/// For each c: || (H^(c) - mc^2 - z)^{-1} - (L - z)^{-1} P_+ ||_2 with L the
/// limit operator, both on the same N-mode section.
///
/// The norm is taken on the Hermite modes below N/2. The section Q_N of the
/// kinetic part squares to the section of Q^2 only away from the last mode,
/// where Q_N^2 picks up a spurious near-zero level; on the full matrix that
/// artefact leaves an O(1) floor that has nothing to do with c.
LimitCheckResult nonrel_convergence(double theta, double mass, double omega, std::complex<double> z,
                                    const std::vector<double>& c_values, int basis_size);

}  // namespace rotosc
