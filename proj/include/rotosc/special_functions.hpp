#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rotosc/scaled_complex.hpp"

namespace rotosc {

/// Normalized Hermite functions h_0(z), ..., h_{n_max}(z) at a complex point,
/// h_n(z) = (2^n n! sqrt(pi))^{-1/2} H_n(z) e^{-z^2/2}.
///
/// The three-term recurrence runs on mantissas sharing one running binary
/// exponent, so arguments far into the complex plane (|h_n| ~ e^{|z|^2/2})
/// stay representable.
template <typename Scalar = double>
std::vector<ScaledComplex<Scalar>> hermite_functions(int n_max, std::complex<Scalar> z) {
  using Complex = std::complex<Scalar>;
  if (n_max < 0) throw std::domain_error("hermite_functions: n_max must be nonnegative");

  const Scalar pi = std::acos(Scalar(-1));
  std::vector<ScaledComplex<Scalar>> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  const auto h0 = ScaledComplex<Scalar>::exp(-z * z / Scalar(2)) * Complex(std::pow(pi, Scalar(-0.25)));
  out.push_back(h0);

  Complex prev(0);
  Complex cur = h0.mantissa();
  std::int64_t exponent = h0.exponent();
  for (int k = 0; k < n_max; ++k) {
    const Scalar kp1 = Scalar(k + 1);
    const Complex next = z * std::sqrt(Scalar(2) / kp1) * cur - std::sqrt(Scalar(k) / kp1) * prev;
    prev = cur;
    cur = next;
    out.emplace_back(cur, exponent);

    const Scalar mag = std::max(std::abs(cur), std::abs(prev));
    if (mag > Scalar(0x1p32) || (mag > Scalar(0) && mag < Scalar(0x1p-32))) {
      int shift = 0;
      std::frexp(mag, &shift);
      cur = Complex(std::ldexp(cur.real(), -shift), std::ldexp(cur.imag(), -shift));
      prev = Complex(std::ldexp(prev.real(), -shift), std::ldexp(prev.imag(), -shift));
      exponent += shift;
    }
  }
  return out;
}

template <typename Scalar = double>
ScaledComplex<Scalar> hermite_function(int n, std::complex<Scalar> z) {
  if (n < 0) throw std::domain_error("hermite_function: n must be nonnegative");
  return hermite_functions<Scalar>(n, z).back();
}

/// Gauss-Hermite rule for the weight e^{-x^2} on the real line.
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, symmetric about 0
  std::vector<double> weights;  // Golub-Welsch weights; underflow to 0 at the extremes of large rules
  /// weights[i] * exp(nodes[i]^2), always representable; the quantity the
  /// norm and overlap sums actually use.
  std::vector<double> scaled_weights;

  std::size_t size() const { return nodes.size(); }
};

/// k-point rule: eigenvalues of the Hermite Jacobi matrix by implicit-shift QL,
/// one Newton polish per node, then exact parity symmetrization.
QuadratureRule gauss_hermite(int k);

/// Default node count for integrating |h_n(e^{i theta/2} x)|^2 exactly.
inline int default_norm_nodes(int n) { return 2 * n + 16; }

/// log of || phi_n ||^2 with phi_n(x) = h_n(e^{i theta/2} x).
double rotated_norm_sq_log(int n, double theta);

/// log || phi_n ||^2 for n = 0..n_max from a single shared rule.
std::vector<double> rotated_norm_sq_log_series(int n_max, double theta);

/// Inner product of h_k with h_n(e^{i theta/2} .), i.e. the coefficient of the
/// rotated function phi_n on the orthonormal basis function h_k.
///
/// Closed form from the product of the Hermite generating functions:
///   a^{-1/2} sum_r (-tau)^p tau^q (2 beta)^r / (p! q! r!) sqrt(k! n! / 2^{k+n}),
/// with k = 2p + r, n = 2q + r, tau = i tan(theta/2), beta = 1/cos(theta/2),
/// a = (1 + e^{i theta}) / 2. Every term carries the same phase, so the sum is
/// free of cancellation and accurate to a few ulps in Scalar.
/// Real magnitude and quarter-turn phase of the closed-form sum below, before
/// the common factor a^{-1/2}: the overlap equals i^quarter * sum * a^{-1/2}.
/// Needs only t = |tan(theta/2)|, beta = 1/cos(theta/2) and a square root, so
/// it also runs on scalar types without a full math library.
template <typename Scalar>
struct OverlapSeries {
  Scalar sum = 0;
  int quarter = 0;
};

template <typename Scalar, typename Sqrt>
OverlapSeries<Scalar> overlap_series(int k, int n, Scalar t, Scalar beta, bool negative_angle, Sqrt sqrt_fn) {
  OverlapSeries<Scalar> out;
  if ((k + n) % 2 != 0) return out;
  const int big = std::max(k, n);
  const int small = std::min(k, n);

  // Largest r = small: q = 0, p = (big - small) / 2.
  int p = (big - small) / 2;
  int q = 0;
  int r = small;
  Scalar term = 1;
  for (int i = 0; i < small; ++i) term *= beta;
  for (int i = 1; i <= p; ++i) {
    term *= t * sqrt_fn(Scalar(small + 2 * i - 1) * Scalar(small + 2 * i)) / Scalar(2 * i);
  }

  // Phase of (-tau)^p tau^q at the top term; identical for every r.
  const int p_k = (k - r) / 2;
  const int q_n = (n - r) / 2;
  int quarter = (p_k + q_n) % 4;
  if (p_k % 2 != 0) quarter += 2;
  if (negative_angle && (p_k + q_n) % 2 != 0) quarter += 2;
  out.quarter = quarter % 4;

  while (true) {
    out.sum += term;
    if (r < 2 || term == Scalar(0)) break;
    term *= t * t * Scalar(r) * Scalar(r - 1) / (Scalar(4) * beta * beta * Scalar(p + 1) * Scalar(q + 1));
    r -= 2;
    ++p;
    ++q;
  }
  return out;
}

/// Inner product of h_k with h_n(e^{i theta/2} .), i.e. the coefficient of the
/// rotated function phi_n on the orthonormal basis function h_k.
///
/// Closed form from the product of the Hermite generating functions:
///   a^{-1/2} sum_r (-tau)^p tau^q (2 beta)^r / (p! q! r!) sqrt(k! n! / 2^{k+n}),
/// with k = 2p + r, n = 2q + r, tau = i tan(theta/2), beta = 1/cos(theta/2),
/// a = (1 + e^{i theta}) / 2. Every term carries the same phase, so the sum is
/// free of cancellation and accurate to a few ulps in Scalar.
template <typename Scalar = double>
std::complex<Scalar> overlap(int k, int n, Scalar theta) {
  using Complex = std::complex<Scalar>;
  if (k < 0 || n < 0) throw std::domain_error("overlap: negative index");
  if (!(std::abs(theta) < std::acos(Scalar(-1)) / 2)) {
    throw std::domain_error("overlap: |theta| must be below pi/2");
  }
  if ((k + n) % 2 != 0) return Complex(0);

  const auto series = overlap_series<Scalar>(k, n, std::abs(std::tan(theta / 2)), Scalar(1) / std::cos(theta / 2),
                                             theta < 0, [](Scalar x) { return std::sqrt(x); });
  static constexpr int kRe[4] = {1, 0, -1, 0};
  static constexpr int kIm[4] = {0, 1, 0, -1};
  const Complex phase{Scalar(kRe[series.quarter]), Scalar(kIm[series.quarter])};
  return phase * std::polar(Scalar(1) / std::sqrt(std::cos(theta / 2)), -theta / 4) * series.sum;
}

/// Same inner product by Gauss-Hermite quadrature along the rotated contour
/// x = y / sqrt(a); exact for polynomial degree k + n. Independent of the
/// closed form above and used to cross-check it.
std::complex<double> overlap_by_quadrature(int k, int n, double theta);

}  // namespace rotosc
