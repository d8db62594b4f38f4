#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rotosc/operators.hpp"

namespace rotosc {

/// Regular lattice over a rectangle of the complex plane, endpoints included.
struct GridSpec {
  double re_min = -6.0;
  double re_max = 6.0;
  double im_min = -6.0;
  double im_max = 6.0;
  int nx = 101;
  int ny = 101;

  void validate() const;
  std::size_t size() const { return std::size_t(nx) * std::size_t(ny); }
  std::complex<double> point(int ix, int iy) const;
  bool antipodal_symmetric() const { return re_min == -re_max && im_min == -im_max; }
  bool conjugation_symmetric() const { return im_min == -im_max; }
};

/// Parses "re0:re1:im0:im1:nx:ny".
GridSpec parse_grid(const std::string& text);

/// log10 resolvent norms on a grid; row-major with re fastest. +inf marks a
/// numerically singular shift, NaN a point whose solver failed.
struct PseudospectrumField {
  GridSpec grid;
  OscillatorParams params;
  int basis_size = 0;
  std::vector<double> values;
  std::vector<char> reliable;
  int failures = 0;

  double value(int ix, int iy) const { return values[std::size_t(iy) * grid.nx + ix]; }
  bool is_reliable(int ix, int iy) const { return reliable[std::size_t(iy) * grid.nx + ix] != 0; }
};

/// 1 / sigma_min(H - z) from a full dense SVD; +inf when sigma_min < 1e-14 ||H||_2.
double resolvent_norm(const TruncatedOperator& h, std::complex<double> z);

/// Truncation is trusted where |z|^2 + m^2 <= N.
bool is_reliable(std::complex<double> z, double mass, int basis_size);

/// Field of build_dirac(params, N); the fast banded evaluator, fanned out over
/// `threads` workers with output independent of the schedule.
PseudospectrumField pseudospectrum_grid(const OscillatorParams& params, int basis_size, const GridSpec& grid,
                                        int threads = 1);

/// max |v(z) - v(-z)| and max |v(z) - v(conj z)| over the grid (log10 values);
/// infinite when only one side is singular.
double antipodal_deviation(const PseudospectrumField& field);
double conjugation_deviation(const PseudospectrumField& field);

/// True when the super-level sets {v >= -log10 eps} grow as eps grows.
bool superlevel_sets_nested(const PseudospectrumField& field, const std::vector<double>& eps_list);

struct RegionParams {
  double delta = 0.1;
  double c1 = 1.0;
  double c2 = 1.0;
  double eps = 0.01;

  void validate() const;
};

/// |z^2 - m^2| >= C1, |arg(z^2 - m^2)| <= |theta| - delta, |z^2 - m^2| > C2 log(1/eps^2).
/// Throws std::domain_error unless 0 < delta < |theta|.
bool inner_region_member(std::complex<double> z, double theta, double mass, const RegionParams& rp);

/// (1 - t)|Im z| <= (|Re z| + m) t + eps with t = |tan(theta/2)|.
bool outer_region_member(std::complex<double> z, double theta, double mass, double eps);

/// 1 / ((1 - t)|Im z| - t (m + |Re z|)) where that denominator is positive, else +inf.
double resolvent_upper_bound(std::complex<double> z, double theta, double mass);

/// f(theta) = arctan(t / (1 - t)), t = |tan(theta/2)|.
double transition_angle(double theta);

struct RaySample {
  double r = 0.0;
  std::complex<double> z;
  double norm = 0.0;
  bool reliable = true;
};

struct RayScan {
  double angle = 0.0;
  int sign = 1;
  std::vector<RaySample> samples;
  bool any_unreliable = false;

  bool strictly_increasing() const;
  /// Every sample at or below the explicit resolvent bound times (1 + tol).
  bool below_upper_bound(double theta, double mass, double tol = 1e-6) const;
};

/// Resolvent norms at z = sign * m + r e^{i angle}.
RayScan ray_scan(const OscillatorParams& params, int basis_size, double angle, const std::vector<double>& offsets,
                 int sign = 1);

/// Empirical C1, C2 from sector rays inside the reliable window.
struct RegionCalibration {
  double delta = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<double> fit_eps;
  std::vector<double> onset_radius;  // per fit_eps; +inf when never reached
  int samples = 0;

  RegionParams region(double eps) const { return {delta, c1, c2, eps}; }
  bool valid() const;
};

/// C1: smallest |z^2 - m^2| beyond which every sampled sector point has norm
/// > 10 (eps = 0.1). C2: 1.5 times the least-squares slope of the onset radius
/// of {norm > 1/eps} against log(1/eps^2).
RegionCalibration calibrate_region_constants(const OscillatorParams& params, int basis_size, double delta,
                                             const std::vector<double>& fit_eps = {0.1, 0.05, 0.02, 0.01},
                                             int threads = 1);

struct RegionReport {
  double eps = 0.0;
  RegionParams region;
  int inner_points = 0;
  int inner_violations = 0;      // inner region but norm <= 1/eps
  int outer_excluded_points = 0;  // outside the outer region
  int outer_violations = 0;      // outside the outer region but norm > (1/eps)(1 + 1e-6)
  int bound_points = 0;          // explicit resolvent bound applicable
  int bound_violations = 0;
  double worst_bound_ratio = 0.0;  // max norm / bound
  int unreliable_points = 0;       // excluded from every count
};

/// Checks both inclusions on a computed field; the inner check is skipped when
/// |theta| <= delta (the sector is empty).
RegionReport region_consistency(const PseudospectrumField& field, double eps, const RegionParams& region);

/// Rays from +m at angles between theta/2 and f(theta): which ones still grow.
struct TransitionSample {
  double angle = 0.0;
  bool increasing = false;
  bool below_bound = false;
};
std::vector<TransitionSample> empirical_transition(const OscillatorParams& params, int basis_size,
                                                   const std::vector<double>& offsets, int angles = 8);

}  // namespace rotosc
