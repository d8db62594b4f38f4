#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rotosc/operators.hpp"

namespace rotosc {

/// Smallest singular value by a full dense SVD. The baseline the fast path is
/// checked against.
double sigma_min_dense(const Eigen::MatrixXcd& a);

/// Largest singular value estimate by power iteration on A^H A.
double norm2_estimate(const Eigen::MatrixXcd& a, int iterations = 60);

/// Banded LU with partial pivoting, LAPACK gbtrf layout (column-major band with
/// kl extra rows for pivot fill-in).
template <typename Scalar = std::complex<double>>
class BandedLU {
 public:
  BandedLU(int n, int kl, int ku) : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), ab_(std::size_t(ld_) * n, Scalar(0)) {}

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  Scalar& at(int i, int j) { return ab_[std::size_t(kl_ + ku_ + i - j) + std::size_t(j) * ld_]; }
  const Scalar& at(int i, int j) const { return ab_[std::size_t(kl_ + ku_ + i - j) + std::size_t(j) * ld_]; }

  /// In-place factorization; returns false on an exactly zero pivot.
  bool factor() {
    pivots_.assign(n_, 0);
    singular_ = false;
    int ju = 0;
    for (int j = 0; j < n_; ++j) {
      const int km = std::min(kl_, n_ - 1 - j);
      int jp = 0;
      double best = -1.0;
      for (int i = 0; i <= km; ++i) {
        const double v = std::abs(at(j + i, j));
        if (v > best) {
          best = v;
          jp = i;
        }
      }
      pivots_[j] = j + jp;
      if (at(j + jp, j) == Scalar(0)) {
        singular_ = true;
        continue;
      }
      ju = std::max(ju, std::min(j + ku_ + jp, n_ - 1));
      if (jp != 0) {
        for (int c = j; c <= ju; ++c) std::swap(at(j, c), at(j + jp, c));
      }
      const Scalar inv = Scalar(1) / at(j, j);
      for (int i = 1; i <= km; ++i) at(j + i, j) *= inv;
      for (int c = j + 1; c <= ju; ++c) {
        const Scalar u = at(j, c);
        if (u == Scalar(0)) continue;
        for (int i = 1; i <= km; ++i) at(j + i, c) -= at(j + i, j) * u;
      }
    }
    return !singular_;
  }

  bool singular() const { return singular_; }

  /// b <- A^{-1} b.
  void solve(Scalar* b) const {
    const int kv = kl_ + ku_;
    for (int j = 0; j < n_ - 1; ++j) {
      const int km = std::min(kl_, n_ - 1 - j);
      if (pivots_[j] != j) std::swap(b[j], b[pivots_[j]]);
      for (int i = 1; i <= km; ++i) b[j + i] -= at(j + i, j) * b[j];
    }
    for (int j = n_ - 1; j >= 0; --j) {
      b[j] /= at(j, j);
      const Scalar bj = b[j];
      for (int i = std::max(0, j - kv); i < j; ++i) b[i] -= at(i, j) * bj;
    }
  }

  /// b <- A^{-H} b.
  void solve_adjoint(Scalar* b) const {
    const int kv = kl_ + ku_;
    for (int j = 0; j < n_; ++j) {
      Scalar acc = b[j];
      for (int i = std::max(0, j - kv); i < j; ++i) acc -= std::conj(at(i, j)) * b[i];
      b[j] = acc / std::conj(at(j, j));
    }
    for (int j = n_ - 2; j >= 0; --j) {
      const int km = std::min(kl_, n_ - 1 - j);
      Scalar acc = b[j];
      for (int i = 1; i <= km; ++i) acc -= std::conj(at(j + i, j)) * b[j + i];
      b[j] = acc;
      if (pivots_[j] != j) std::swap(b[j], b[pivots_[j]]);
    }
  }

 private:
  int n_;
  int kl_;
  int ku_;
  int ld_;
  std::vector<Scalar> ab_;
  std::vector<int> pivots_;
  bool singular_ = false;
};

struct LanczosOptions {
  int max_iterations = 300;
  double tolerance = 1e-11;  // Ritz residual relative to the Ritz value
  std::uint64_t seed = 0x5eed5eedULL;
};

/// sigma_min(H - z) for many shifts z of one banded operator.
///
/// The operator is permuted to Hermite-major order, where a spinor operator of
/// Hermite bandwidth b has scalar bandwidth 4b + 3. Each shift costs one banded
/// LU; sigma_min^{-2} is then the top eigenvalue of (H - z)^{-H} (H - z)^{-1},
/// found by Lanczos with full reorthogonalization from a fixed start vector.
/// Const and reentrant: safe to share across threads.
class ResolventEvaluator {
 public:
  explicit ResolventEvaluator(const TruncatedOperator& op, LanczosOptions options = {});

  /// sigma_min(H - z); 0 if the factorization meets an exact zero pivot.
  double sigma_min(std::complex<double> z) const;

  /// 1 / sigma_min(H - z), +inf when sigma_min < 1e-14 ||H||_2.
  double resolvent_norm(std::complex<double> z) const;

  double operator_norm() const { return norm_; }
  Eigen::Index dim() const { return dim_; }

 private:
  Eigen::Index dim_;
  int half_band_;
  std::vector<Eigen::Index> to_spinor_major_;  // Hermite-major slot -> original row
  Eigen::MatrixXcd entries_;
  double norm_;
  LanczosOptions options_;
};

}  // namespace rotosc
