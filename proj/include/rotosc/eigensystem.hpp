#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotosc/special_functions.hpp"

namespace rotosc {

/// Restriction of H_theta to W_n = span{(phi_n,0,0,0), (0,phi_{n-1},0,0),
/// (0,0,phi_n,0), (0,0,0,phi_{n-1})}; theta-independent.
struct BlockEigensystem {
  int n = 1;
  double mass = 0.0;
  Eigen::Matrix4d matrix;
  std::array<Eigen::Vector4d, 4> u;     // u[0..1] for +sqrt(2n+m^2), u[2..3] for -sqrt(2n+m^2)
  std::array<double, 4> eigenvalues{};
};

Eigen::Matrix4d dirac_block(int n, double mass);

/// Closed-form eigenvectors with real positive normalizations. n >= 1.
BlockEigensystem block_eigensystem(int n, double mass);

/// chi^j_n (or the adjoint-side chi~^j_n): spinor components u_k * phi_{deg_k}.
struct ExactEigenfunction {
  int n = 0;
  int j = 1;           // 1..4, or 1..2 when n = 0
  bool tilde = false;  // built on phi~ (eigenfunction of the adjoint)
  std::array<double, 4> factors{};
  std::array<int, 4> degrees{};  // -1 marks a vanishing component
  double eigenvalue = 0.0;
};

/// n = 0: chi^1 = (phi_0, 0, phi_0, 0)/sqrt2 (eigenvalue +m), chi^2 = (phi_0, 0, -phi_0, 0)/sqrt2 (-m).
ExactEigenfunction exact_eigenfunction(int n, int j, double mass, bool tilde = false);

/// Thrown when the basis is too small to hold an eigenfunction's coefficients.
class InsufficientBasis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficients of an exact eigenfunction on the Galerkin basis (spinor-major).
///
/// The rotated functions carry the unimodular factor e^{+-i theta/4}, i.e.
/// phi_n(x) = e^{i theta/4} h_n(e^{i theta/2} x); without it the pairing
/// (phi~_n, phi_n) equals e^{-i theta/2} instead of 1. Norms are unaffected.
/// The phi_{n-1} components carry a factor -i: the ladder couplings of H are
/// imaginary while the block eigenvectors u are real.
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> eigenfunction_coeff_vector(const ExactEigenfunction& fn,
                                                                                  double theta, int basis_size) {
  using Complex = std::complex<Scalar>;
  if (!(std::abs(theta) < std::numbers::pi / 2)) {
    throw std::domain_error("eigenfunction_coeff_vector: |theta| must be below pi/2");
  }
  if (basis_size < fn.n + 60) {
    throw std::domain_error("eigenfunction_coeff_vector: basis size must be at least n + 60");
  }
  const Scalar angle = fn.tilde ? -Scalar(theta) : Scalar(theta);
  const Complex phase = std::polar(Scalar(1), angle / 4);
  const Complex spin[4] = {Complex(1), Complex(0, -1), Complex(1), Complex(0, -1)};

  Eigen::Matrix<Complex, Eigen::Dynamic, 1> out = Eigen::Matrix<Complex, Eigen::Dynamic, 1>::Zero(4 * basis_size);
  Scalar total = 0;
  Scalar tail = 0;
  for (int k = 0; k < 4; ++k) {
    if (fn.degrees[k] < 0 || fn.factors[k] == 0.0) continue;
    for (int i = 0; i < basis_size; ++i) {
      const Complex v = spin[k] * phase * Scalar(fn.factors[k]) * overlap<Scalar>(i, fn.degrees[k], angle);
      out(k * basis_size + i) = v;
      total += std::norm(v);
      if (i > basis_size - 10) tail += std::norm(v);
    }
  }
  if (tail > Scalar(1e-16) * total) {
    throw InsufficientBasis("eigenfunction_coeff_vector: basis of size " + std::to_string(basis_size) +
                            " truncates the eigenfunction (n = " + std::to_string(fn.n) + ")");
  }
  return out;
}

/// log ||P_n^+|| = log max_j ||chi^j_n|| ||chi~^j_n||; exact given the norms of phi.
double projector_norm_log(int n, double theta, double mass);

/// Closed-form growth rate log sqrt((1 + |sin theta|) / (1 - |sin theta|)).
double projector_rate(double theta);

struct ProjectorNormEntry {
  int n = 0;
  double log_norm = 0.0;
  double increment = 0.0;  // log_norm(n) - log_norm(n-1); 0 for n = 0
};

struct ProjectorNormSeries {
  double theta = 0.0;
  double mass = 0.0;
  std::vector<ProjectorNormEntry> entries;
  double rate_estimate = 0.0;
};

/// Series for n = 0..n_max; the rate estimate is the last increment.
ProjectorNormSeries estimate_rate(double theta, double mass, int n_max);

/// |log ||P_n^+|| - log ||P_n^-|||, the minus side built from u^3, u^4.
double projector_norm_symmetry_check(int n, double theta, double mass);

/// Lower (single-eigenfunction) and upper (sqrt8 sum) bounds on log ||P_n||, n >= 1.
struct ProjectorBounds {
  double lower = 0.0;
  double upper = 0.0;
};
ProjectorBounds projector_norm_bounds(int n, double theta, double mass);

/// Largest singular value of sum_j coeff(chi^j_n) coeff(chi~^j_n)^H, as a log.
/// Independent matrix route to projector_norm_log.
double projector_matrix_norm_log(int n, double theta, double mass, int basis_size);

/// || M^2 - M ||_2 for the finite-rank projector matrix M of level n, evaluated
/// in the factored form C (C~^H C - I) C~^H in extended precision.
double projector_idempotency_defect(int n, double theta, double mass, int basis_size);

/// max |<chi~^i_n, chi^j_n'> - delta| over all eigenfunctions with n, n' <= n_max.
double biorthonormality_defect(int n_max, double theta, double mass, int basis_size);

struct LevelError {
  int n = 0;
  double error = 0.0;
};

/// Galerkin eigenvalues of build_dirac matched greedily (low levels first) to
/// the exact +-sqrt(2n+m^2); per-level worst error for n = 0..N/2.
std::vector<LevelError> galerkin_instability_profile(double theta, double mass, int basis_size);

}  // namespace rotosc
