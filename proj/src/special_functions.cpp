#include "rotosc/special_functions.hpp"

#include <algorithm>
#include <numeric>

#include "rotosc/errors.hpp"

namespace rotosc {

void require_admissible_angle(double theta, const char* where) {
  if (!(std::abs(theta) < std::numbers::pi / 2)) {
    throw std::domain_error(std::string(where) + ": |theta| must be below pi/2");
  }
}

namespace {

// Implicit-shift QL on a symmetric tridiagonal matrix with zero diagonal and
// off-diagonal `off` (off[i] couples i and i+1). Only the first row of the
// eigenvector matrix is accumulated: that is all the weights need.
void tridiagonal_ql(std::vector<double>& diag, std::vector<double> off, std::vector<double>& first_row) {
  const int n = static_cast<int>(diag.size());
  off.push_back(0.0);
  constexpr double kTol = 1e-14;
  constexpr int kMaxSweeps = 60;

  for (int l = 0; l < n; ++l) {
    int iterations = 0;
    while (true) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= kTol * std::max(dd, 1.0)) break;
      }
      if (m == l) break;
      if (++iterations > kMaxSweeps) throw NumericalError("gauss_hermite: QL iteration did not converge");

      double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        double f = s * off[i];
        const double b = c * off[i];
        r = std::hypot(f, g);
        off[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          off[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        f = first_row[i + 1];
        first_row[i + 1] = s * first_row[i] + c * f;
        first_row[i] = c * first_row[i] - s * f;
      }
      if (r == 0.0 && i >= l) continue;
      diag[l] -= p;
      off[l] = g;
      off[m] = 0.0;
    }
  }
}

}  // namespace

QuadratureRule gauss_hermite(int k) {
  if (k < 1) throw std::domain_error("gauss_hermite: need at least one node");

  std::vector<double> diag(k, 0.0);
  std::vector<double> off(k - 1);
  for (int i = 1; i < k; ++i) off[i - 1] = std::sqrt(0.5 * i);
  std::vector<double> first_row(k, 0.0);
  first_row[0] = 1.0;
  tridiagonal_ql(diag, off, first_row);

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] < diag[b]; });

  const double sqrt_pi = std::sqrt(std::numbers::pi);
  QuadratureRule rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  rule.scaled_weights.resize(k);
  for (int i = 0; i < k; ++i) {
    rule.nodes[i] = diag[order[i]];
    rule.weights[i] = sqrt_pi * first_row[order[i]] * first_row[order[i]];
  }

  // Newton polish on h_k, with h_k' = sqrt(2k) h_{k-1} - x h_k.
  const double sqrt_2k = std::sqrt(2.0 * k);
  for (double& x : rule.nodes) {
    const auto h = hermite_functions<double>(k, x);
    const double ratio = (h[k] / h[k - 1]).to_complex().real();
    const double step = ratio / (sqrt_2k - x * ratio);
    if (std::isfinite(step)) x -= step;
  }

  for (int i = 0; i < k / 2; ++i) {
    const double x = 0.5 * (rule.nodes[k - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -x;
    rule.nodes[k - 1 - i] = x;
    const double w = 0.5 * (rule.weights[i] + rule.weights[k - 1 - i]);
    rule.weights[i] = rule.weights[k - 1 - i] = w;
  }
  if (k % 2 == 1) rule.nodes[k / 2] = 0.0;

  // Christoffel numbers without the Gaussian: 1 / (k h_{k-1}(x)^2).
  for (int i = 0; i < k; ++i) {
    const auto h = hermite_functions<double>(k - 1, rule.nodes[i]).back();
    const auto inv = ScaledComplex<double>(1.0) / (h.norm() * std::complex<double>(k));
    rule.scaled_weights[i] = inv.to_complex().real();
  }
  for (int i = 0; i < k / 2; ++i) {
    const double w = 0.5 * (rule.scaled_weights[i] + rule.scaled_weights[k - 1 - i]);
    rule.scaled_weights[i] = rule.scaled_weights[k - 1 - i] = w;
  }
  return rule;
}

std::vector<double> rotated_norm_sq_log_series(int n_max, double theta) {
  require_admissible_angle(theta, "rotated_norm_sq_log");
  if (n_max < 0) throw std::domain_error("rotated_norm_sq_log: n must be nonnegative");

  const QuadratureRule rule = gauss_hermite(default_norm_nodes(n_max));
  const double cos_theta = std::cos(theta);
  const std::complex<double> to_rotated = std::polar(1.0 / std::sqrt(cos_theta), theta / 2);

  std::vector<ScaledComplex<double>> sums(n_max + 1);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto h = hermite_functions<double>(n_max, to_rotated * rule.nodes[i]);
    for (int n = 0; n <= n_max; ++n) sums[n] += h[n].norm() * std::complex<double>(rule.scaled_weights[i]);
  }

  std::vector<double> logs(n_max + 1);
  const double jacobian = -0.5 * std::log(cos_theta);
  for (int n = 0; n <= n_max; ++n) logs[n] = sums[n].log_abs() + jacobian;
  return logs;
}

double rotated_norm_sq_log(int n, double theta) { return rotated_norm_sq_log_series(n, theta).back(); }

std::complex<double> overlap_by_quadrature(int k, int n, double theta) {
  require_admissible_angle(theta, "overlap_by_quadrature");
  if (k < 0 || n < 0) throw std::domain_error("overlap_by_quadrature: negative index");

  // integrand h_k(x) h_n(lambda x) = p(x) e^{-a x^2}, a = (1 + lambda^2) / 2
  const std::complex<double> lambda = std::polar(1.0, theta / 2);
  const std::complex<double> a = 0.5 * (1.0 + lambda * lambda);
  const std::complex<double> inv_sqrt_a = 1.0 / std::sqrt(a);
  const QuadratureRule rule = gauss_hermite((k + n) / 2 + 1);

  ScaledComplex<double> sum;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const std::complex<double> z = rule.nodes[i] * inv_sqrt_a;
    const auto hk = hermite_function<double>(k, z);
    const auto hn = hermite_function<double>(n, lambda * z);
    sum += hk * hn * std::complex<double>(rule.scaled_weights[i]);
  }
  return sum.to_complex() * inv_sqrt_a;
}

}  // namespace rotosc
