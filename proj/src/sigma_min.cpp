#include "rotosc/sigma_min.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "rotosc/errors.hpp"

namespace rotosc {

using Complex = std::complex<double>;

double sigma_min_dense(const Eigen::MatrixXcd& a) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  if (svd.info() != Eigen::Success) throw NumericalError("sigma_min_dense: SVD did not converge");
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double norm2_estimate(const Eigen::MatrixXcd& a, int iterations) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols()).normalized();
  double estimate = 0.0;
  for (int k = 0; k < iterations; ++k) {
    const Eigen::VectorXcd w = a.adjoint() * (a * v);
    const double len = w.norm();
    if (len == 0.0) return 0.0;
    estimate = std::sqrt(len);
    v = w / len;
  }
  return estimate;
}

ResolventEvaluator::ResolventEvaluator(const TruncatedOperator& op, LanczosOptions options)
    : dim_(op.dim()), entries_(op.entries), options_(options) {
  const int d = op.spinor_dim;
  const int n = op.basis_size;
  half_band_ = op.bandwidth * d + d - 1;
  to_spinor_major_.resize(static_cast<std::size_t>(dim_));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) to_spinor_major_[static_cast<std::size_t>(i * d + k)] = Eigen::Index(k) * n + i;
  }
  norm_ = norm2_estimate(entries_);
}

double ResolventEvaluator::sigma_min(Complex z) const {
  const int n = static_cast<int>(dim_);
  const int kb = half_band_;
  BandedLU<Complex> lu(n, kb, kb);
  for (int j = 0; j < n; ++j) {
    const Eigen::Index cj = to_spinor_major_[static_cast<std::size_t>(j)];
    for (int i = std::max(0, j - kb); i <= std::min(n - 1, j + kb); ++i) {
      lu.at(i, j) = entries_(to_spinor_major_[static_cast<std::size_t>(i)], cj);
    }
    lu.at(j, j) -= z;
  }
  if (!lu.factor()) return 0.0;

  // Lanczos on B = A^{-H} A^{-1}, Hermitian positive definite.
  const int max_steps = std::min(options_.max_iterations, n);
  Eigen::MatrixXcd basis(n, max_steps + 1);
  std::vector<double> alpha;
  std::vector<double> beta;
  alpha.reserve(max_steps);
  beta.reserve(max_steps);

  std::mt19937_64 rng(options_.seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  basis.col(0) = v.normalized();

  double ritz = 0.0;
  Eigen::VectorXcd w(n);
  for (int k = 0; k < max_steps; ++k) {
    w = basis.col(k);
    lu.solve(w.data());
    lu.solve_adjoint(w.data());
    const double a = basis.col(k).dot(w).real();
    alpha.push_back(a);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd coeffs = basis.leftCols(k + 1).adjoint() * w;
      w.noalias() -= basis.leftCols(k + 1) * coeffs;
    }
    const double b = w.norm();

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (int i = 0; i <= k; ++i) {
      t(i, i) = alpha[i];
      if (i < k) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
    ritz = tri.eigenvalues()(k);
    // Residual of the top Ritz pair; for Hermitian B it bounds the Ritz-value
    // error even when the top eigenvalues nearly coincide.
    const double residual = b * std::abs(tri.eigenvectors()(k, k));
    if (residual <= options_.tolerance * ritz) break;
    beta.push_back(b);
    basis.col(k + 1) = w / b;
  }
  if (!(ritz > 0.0) || !std::isfinite(ritz)) return 0.0;
  return 1.0 / std::sqrt(ritz);
}

double ResolventEvaluator::resolvent_norm(Complex z) const {
  const double s = sigma_min(z);
  if (s < 1e-14 * norm_) return std::numeric_limits<double>::infinity();
  return 1.0 / s;
}

}  // namespace rotosc
