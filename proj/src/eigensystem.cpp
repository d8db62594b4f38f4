#include "rotosc/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <quadmath.h>

#include "rotosc/errors.hpp"
#include "rotosc/operators.hpp"

namespace rotosc {

namespace {

// log(w e^a + (1 - w) e^b) without overflow.
double log_mix(double w, double log_a, double log_b) {
  const double top = std::max(log_a, log_b);
  return top + std::log(w * std::exp(log_a - top) + (1.0 - w) * std::exp(log_b - top));
}

// Weight of the degree-n components, |u_1|^2 + |u_3|^2.
double degree_n_weight(const Eigen::Vector4d& u) { return u(0) * u(0) + u(2) * u(2); }

// Eigenfunction coefficients in binary128. With the e^{+-i theta/4} factor the
// complex phase of every coefficient collapses to a power of i, so they are
// stored as exact quarter turns times a real magnitude; pairings then lose
// nothing to phase rounding and the cancellation down to O(1) is resolved.
struct QuadColumn {
  std::vector<__float128> magnitude;  // per Hermite slot, spinor-major
  std::vector<int> quarter;
};

QuadColumn quad_coefficients(const ExactEigenfunction& fn, double theta, int basis_size) {
  // The double path validates the basis size (tail check) and the angle.
  (void)eigenfunction_coeff_vector<double>(fn, theta, basis_size);

  const __float128 half = __float128(fn.tilde ? -theta : theta) / 2;
  const __float128 t = fabsq(tanq(half));
  const __float128 beta = 1 / cosq(half);
  const __float128 prefactor = 1 / sqrtq(cosq(half));
  auto sqrt_fn = [](__float128 x) { return sqrtq(x); };

  QuadColumn col;
  col.magnitude.assign(static_cast<std::size_t>(4 * basis_size), 0);
  col.quarter.assign(static_cast<std::size_t>(4 * basis_size), 0);
  for (int k = 0; k < 4; ++k) {
    if (fn.degrees[k] < 0 || fn.factors[k] == 0.0) continue;
    for (int i = 0; i < basis_size; ++i) {
      const auto series = overlap_series<__float128>(i, fn.degrees[k], t, beta, fn.tilde ? theta > 0 : theta < 0, sqrt_fn);
      const auto slot = static_cast<std::size_t>(k * basis_size + i);
      col.magnitude[slot] = __float128(fn.factors[k]) * prefactor * series.sum;
      col.quarter[slot] = (series.quarter + (k % 2 == 1 ? 3 : 0)) % 4;  // spinor factor -i
    }
  }
  return col;
}

// <a, b> - delta, rounded to double at the end.
std::complex<double> quad_pairing_defect(const QuadColumn& a, const QuadColumn& b, bool same) {
  __float128 acc[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < a.magnitude.size(); ++i) {
    if (a.magnitude[i] == 0 || b.magnitude[i] == 0) continue;
    // conj(i^qa) i^qb = i^(qb - qa)
    acc[(b.quarter[i] - a.quarter[i] + 4) % 4] += a.magnitude[i] * b.magnitude[i];
  }
  const __float128 re = acc[0] - acc[2] - (same ? 1 : 0);
  const __float128 im = acc[1] - acc[3];
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::vector<int> projector_members(int n, double mass) {
  if (n == 0) return mass > 0.0 ? std::vector<int>{1} : std::vector<int>{1, 2};
  return {1, 2};
}

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> stacked_coefficients(
    int n, const std::vector<int>& members, double theta, double mass, int basis_size, bool tilde) {
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> out(4 * basis_size,
                                                                          static_cast<Eigen::Index>(members.size()));
  for (std::size_t c = 0; c < members.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) =
        eigenfunction_coeff_vector<Scalar>(exact_eigenfunction(n, members[c], mass, tilde), theta, basis_size);
  }
  return out;
}

}  // namespace

Eigen::Matrix4d dirac_block(int n, double mass) {
  const double a = std::sqrt(2.0 * n);
  Eigen::Matrix4d h;
  h << 0, 0, mass, a,
       0, 0, a, -mass,
       mass, a, 0, 0,
       a, -mass, 0, 0;
  return h;
}

BlockEigensystem block_eigensystem(int n, double mass) {
  if (n < 1) throw std::domain_error("block_eigensystem: n must be positive (n = 0 has its own eigenfunctions)");
  if (!(mass >= 0.0)) throw std::domain_error("block_eigensystem: mass must be nonnegative");

  const double a = std::sqrt(2.0 * n);
  const double s = std::sqrt(2.0 * n + mass * mass);
  BlockEigensystem out;
  out.n = n;
  out.mass = mass;
  out.matrix = dirac_block(n, mass);
  out.u[0] << a, s - mass, a, s - mass;
  out.u[1] << -a, s + mass, a, -s - mass;
  out.u[2] << -a, s + mass, -a, s + mass;
  out.u[3] << a, s - mass, -a, -s + mass;
  for (auto& u : out.u) u.normalize();
  out.eigenvalues = {s, s, -s, -s};
  return out;
}

ExactEigenfunction exact_eigenfunction(int n, int j, double mass, bool tilde) {
  if (n < 0) throw std::domain_error("exact_eigenfunction: n must be nonnegative");
  ExactEigenfunction fn;
  fn.n = n;
  fn.j = j;
  fn.tilde = tilde;
  if (n == 0) {
    if (j != 1 && j != 2) throw std::domain_error("exact_eigenfunction: n = 0 admits j = 1, 2 only");
    const double r = std::sqrt(0.5);
    fn.factors = {r, 0.0, j == 1 ? r : -r, 0.0};
    fn.degrees = {0, -1, 0, -1};
    fn.eigenvalue = j == 1 ? mass : -mass;
    return fn;
  }
  if (j < 1 || j > 4) throw std::domain_error("exact_eigenfunction: j must be 1..4");
  const BlockEigensystem block = block_eigensystem(n, mass);
  const Eigen::Vector4d& u = block.u[j - 1];
  fn.factors = {u(0), u(1), u(2), u(3)};
  fn.degrees = {n, n - 1, n, n - 1};
  fn.eigenvalue = block.eigenvalues[j - 1];
  return fn;
}

double projector_rate(double theta) {
  require_admissible_angle(theta, "projector_rate");
  const double s = std::abs(std::sin(theta));
  return 0.5 * std::log((1.0 + s) / (1.0 - s));
}

namespace {

double projector_log_from_norms(int n, double mass, const std::vector<double>& norm_logs, bool minus_side) {
  if (n == 0) return norm_logs[0];
  const BlockEigensystem block = block_eigensystem(n, mass);
  const int first = minus_side ? 2 : 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int j = first; j < first + 2; ++j) {
    best = std::max(best, log_mix(degree_n_weight(block.u[j]), norm_logs[n], norm_logs[n - 1]));
  }
  return best;
}

}  // namespace

double projector_norm_log(int n, double theta, double mass) {
  require_admissible_angle(theta, "projector_norm_log");
  if (n < 0) throw std::domain_error("projector_norm_log: n must be nonnegative");
  return projector_log_from_norms(n, mass, rotated_norm_sq_log_series(n, theta), false);
}

ProjectorNormSeries estimate_rate(double theta, double mass, int n_max) {
  require_admissible_angle(theta, "estimate_rate");
  if (n_max < 20) throw std::domain_error("estimate_rate: n_max must be at least 20");

  const std::vector<double> norm_logs = rotated_norm_sq_log_series(n_max, theta);
  ProjectorNormSeries series;
  series.theta = theta;
  series.mass = mass;
  series.entries.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    ProjectorNormEntry e;
    e.n = n;
    e.log_norm = projector_log_from_norms(n, mass, norm_logs, false);
    e.increment = n == 0 ? 0.0 : e.log_norm - series.entries.back().log_norm;
    series.entries.push_back(e);
  }
  series.rate_estimate = series.entries.back().increment;
  return series;
}

double projector_norm_symmetry_check(int n, double theta, double mass) {
  require_admissible_angle(theta, "projector_norm_symmetry_check");
  const std::vector<double> norm_logs = rotated_norm_sq_log_series(n, theta);
  if (n == 0) {
    // P_0^- pairs chi^2_0 = (phi_0, 0, -phi_0, 0)/sqrt2 with its adjoint partner.
    return 0.0 * norm_logs[0];
  }
  return std::abs(projector_log_from_norms(n, mass, norm_logs, false) -
                  projector_log_from_norms(n, mass, norm_logs, true));
}

ProjectorBounds projector_norm_bounds(int n, double theta, double mass) {
  require_admissible_angle(theta, "projector_norm_bounds");
  if (n < 1) throw std::domain_error("projector_norm_bounds: n must be positive");
  const std::vector<double> norm_logs = rotated_norm_sq_log_series(n, theta);
  const BlockEigensystem block = block_eigensystem(n, mass);
  ProjectorBounds b;
  b.lower = log_mix(degree_n_weight(block.u[0]), norm_logs[n], norm_logs[n - 1]);
  b.upper = 0.5 * std::log(8.0) + log_mix(0.5, norm_logs[n], norm_logs[n - 1]) + std::log(2.0);
  return b;
}

double projector_matrix_norm_log(int n, double theta, double mass, int basis_size) {
  const std::vector<int> members = projector_members(n, mass);
  const Eigen::MatrixXcd right = stacked_coefficients<double>(n, members, theta, mass, basis_size, false);
  const Eigen::MatrixXcd left = stacked_coefficients<double>(n, members, theta, mass, basis_size, true);
  // M = right * left^H; with thin QR factors only the small core matters.
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr_right(right);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr_left(left);
  const Eigen::Index r = right.cols();
  const Eigen::MatrixXcd r1 = qr_right.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  const Eigen::MatrixXcd r2 = qr_left.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r1 * r2.adjoint());
  return std::log(svd.singularValues()(0));
}

double projector_idempotency_defect(int n, double theta, double mass, int basis_size) {
  const std::vector<int> members = projector_members(n, mass);
  const Eigen::MatrixXcd right = stacked_coefficients<double>(n, members, theta, mass, basis_size, false);
  const Eigen::MatrixXcd left = stacked_coefficients<double>(n, members, theta, mass, basis_size, true);
  const Eigen::Index r = right.cols();

  std::vector<QuadColumn> right_quad;
  std::vector<QuadColumn> left_quad;
  for (int j : members) {
    right_quad.push_back(quad_coefficients(exact_eigenfunction(n, j, mass, false), theta, basis_size));
    left_quad.push_back(quad_coefficients(exact_eigenfunction(n, j, mass, true), theta, basis_size));
  }
  // M^2 - M = C (C~^H C - I) C~^H; the Gram defect carries all the cancellation.
  Eigen::MatrixXcd gram_minus_identity(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      gram_minus_identity(i, j) = quad_pairing_defect(left_quad[i], right_quad[j], i == j);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr_right(right);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr_left(left);
  const Eigen::MatrixXcd r1 = qr_right.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  const Eigen::MatrixXcd r2 = qr_left.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r1 * gram_minus_identity * r2.adjoint());
  return svd.singularValues()(0);
}

double biorthonormality_defect(int n_max, double theta, double mass, int basis_size) {
  if (n_max < 0) throw std::domain_error("biorthonormality_defect: n_max must be nonnegative");
  struct Labeled {
    int n;
    int j;
    QuadColumn right;
    QuadColumn left;
  };
  std::vector<Labeled> functions;
  for (int n = 0; n <= n_max; ++n) {
    const int count = n == 0 ? 2 : 4;
    for (int j = 1; j <= count; ++j) {
      functions.push_back({n, j, quad_coefficients(exact_eigenfunction(n, j, mass, false), theta, basis_size),
                           quad_coefficients(exact_eigenfunction(n, j, mass, true), theta, basis_size)});
    }
  }
  double worst = 0.0;
  for (const auto& a : functions) {
    for (const auto& b : functions) {
      const bool same = a.n == b.n && a.j == b.j;
      worst = std::max(worst, std::abs(quad_pairing_defect(a.left, b.right, same)));
    }
  }
  return worst;
}

std::vector<LevelError> galerkin_instability_profile(double theta, double mass, int basis_size) {
  if (basis_size < 32) throw std::domain_error("galerkin_instability_profile: basis size must be at least 32");
  const TruncatedOperator h = build_dirac({theta, mass}, basis_size);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h.entries, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("galerkin_instability_profile: nonsymmetric eigensolver did not converge");
  }
  const Eigen::VectorXcd computed = solver.eigenvalues();
  std::vector<bool> claimed(static_cast<std::size_t>(computed.size()), false);

  auto claim = [&](double target) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index best_index = -1;
    for (Eigen::Index i = 0; i < computed.size(); ++i) {
      if (claimed[static_cast<std::size_t>(i)]) continue;
      const double d = std::abs(computed(i) - target);
      if (d < best) {
        best = d;
        best_index = i;
      }
    }
    if (best_index >= 0) claimed[static_cast<std::size_t>(best_index)] = true;
    return best;
  };

  const int levels = basis_size / 2;
  std::vector<LevelError> profile;
  profile.reserve(levels + 1);
  for (int n = 0; n <= levels; ++n) {
    const double e = std::sqrt(2.0 * n + mass * mass);
    double worst = 0.0;
    if (n == 0) {
      worst = std::max(claim(e), claim(-e));
    } else {
      for (double target : {e, e, -e, -e}) worst = std::max(worst, claim(target));
    }
    profile.push_back({n, worst});
  }
  return profile;
}

}  // namespace rotosc
