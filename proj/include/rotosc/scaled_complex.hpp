#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace rotosc {

/// Complex number stored as mantissa * 2^exponent with |mantissa| in [1, 2).
///
/// Hermite functions at complex arguments and the norms of the rotated
/// eigenfunctions span thousands of binary orders of magnitude, far outside
/// the range of a plain double. Arithmetic here never overflows; conversion
/// back to a native complex (to_complex) is where range limits apply again.
template <typename Scalar = double>
class ScaledComplex {
 public:
  using Complex = std::complex<Scalar>;
  using Exponent = std::int64_t;

  ScaledComplex() = default;
  ScaledComplex(Complex value) : mantissa_(value), exponent_(0) { normalize(); }
  ScaledComplex(Complex mantissa, Exponent exponent) : mantissa_(mantissa), exponent_(exponent) {
    normalize();
  }

  /// e^w without intermediate overflow.
  static ScaledComplex exp(Complex w) {
    const Scalar log2_mag = w.real() / std::log(Scalar(2));
    const Scalar whole = std::floor(log2_mag);
    const Scalar frac = log2_mag - whole;
    return ScaledComplex(std::polar(std::exp2(frac), w.imag()), static_cast<Exponent>(whole));
  }

  const Complex& mantissa() const { return mantissa_; }
  Exponent exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_ == Complex(0); }

  /// Native value; overflows to inf or underflows to 0 outside the range of Scalar.
  Complex to_complex() const {
    const auto e = static_cast<int>(std::clamp<Exponent>(exponent_, -100000, 100000));
    return {std::ldexp(mantissa_.real(), e), std::ldexp(mantissa_.imag(), e)};
  }

  /// Natural log of the magnitude; -inf for zero.
  Scalar log_abs() const {
    if (is_zero()) return -std::numeric_limits<Scalar>::infinity();
    return std::log(std::abs(mantissa_)) + static_cast<Scalar>(exponent_) * std::log(Scalar(2));
  }

  Scalar arg() const { return std::arg(mantissa_); }

  /// |value|^2 as a (real) scaled number.
  ScaledComplex norm() const { return ScaledComplex(Complex(std::norm(mantissa_)), 2 * exponent_); }

  ScaledComplex conj() const {
    ScaledComplex out = *this;
    out.mantissa_ = std::conj(mantissa_);
    return out;
  }

  ScaledComplex ldexp(Exponent shift) const {
    ScaledComplex out = *this;
    if (!is_zero()) out.exponent_ += shift;
    return out;
  }

  ScaledComplex& operator*=(const ScaledComplex& rhs) {
    mantissa_ *= rhs.mantissa_;
    exponent_ += rhs.exponent_;
    normalize();
    return *this;
  }

  ScaledComplex& operator*=(Complex rhs) {
    mantissa_ *= rhs;
    normalize();
    return *this;
  }

  ScaledComplex& operator/=(const ScaledComplex& rhs) {
    mantissa_ /= rhs.mantissa_;
    exponent_ -= rhs.exponent_;
    normalize();
    return *this;
  }

  ScaledComplex& operator+=(const ScaledComplex& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) return *this = rhs;
    const Exponent gap = rhs.exponent_ - exponent_;
    // Beyond the mantissa width the smaller term cannot change the sum.
    constexpr Exponent kDigits = std::numeric_limits<Scalar>::digits + 2;
    if (gap > kDigits) return *this = rhs;
    if (gap < -kDigits) return *this;
    mantissa_ += Complex(std::ldexp(rhs.mantissa_.real(), static_cast<int>(gap)),
                         std::ldexp(rhs.mantissa_.imag(), static_cast<int>(gap)));
    normalize();
    return *this;
  }

  ScaledComplex operator-() const {
    ScaledComplex out = *this;
    out.mantissa_ = -mantissa_;
    return out;
  }

  ScaledComplex& operator-=(const ScaledComplex& rhs) { return *this += -rhs; }

  friend ScaledComplex operator*(ScaledComplex lhs, const ScaledComplex& rhs) { return lhs *= rhs; }
  friend ScaledComplex operator*(ScaledComplex lhs, Complex rhs) { return lhs *= rhs; }
  friend ScaledComplex operator*(Complex lhs, ScaledComplex rhs) { return rhs *= lhs; }
  friend ScaledComplex operator/(ScaledComplex lhs, const ScaledComplex& rhs) { return lhs /= rhs; }
  friend ScaledComplex operator+(ScaledComplex lhs, const ScaledComplex& rhs) { return lhs += rhs; }
  friend ScaledComplex operator-(ScaledComplex lhs, const ScaledComplex& rhs) { return lhs -= rhs; }

 private:
  void normalize() {
    const Scalar mag = std::abs(mantissa_);
    if (mag == Scalar(0) || !std::isfinite(mag)) {
      if (mag == Scalar(0)) {
        mantissa_ = Complex(0);
        exponent_ = 0;
      }
      return;
    }
    int e = 0;
    std::frexp(mag, &e);  // mag = f * 2^e, f in [0.5, 1)
    const int shift = 1 - e;
    mantissa_ = Complex(std::ldexp(mantissa_.real(), shift), std::ldexp(mantissa_.imag(), shift));
    exponent_ -= shift;
    // hypot rounding can leave |mantissa| a hair outside [1, 2)
    const Scalar fixed = std::abs(mantissa_);
    if (fixed >= Scalar(2)) {
      mantissa_ /= Scalar(2);
      ++exponent_;
    } else if (fixed < Scalar(1)) {
      mantissa_ *= Scalar(2);
      --exponent_;
    }
  }

  Complex mantissa_{0};
  Exponent exponent_ = 0;
};

}  // namespace rotosc
