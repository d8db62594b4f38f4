#include "rotosc/pseudospectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rotosc/errors.hpp"
#include "rotosc/parallel.hpp"
#include "rotosc/sigma_min.hpp"

namespace rotosc {

using Complex = std::complex<double>;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log10_or_sentinel(double norm) {
  if (std::isinf(norm)) return kInf;
  return std::log10(norm);
}

double pair_deviation(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return kInf;
  if (std::isinf(a) && std::isinf(b)) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return kInf;
  return std::abs(a - b);
}

}  // namespace

void GridSpec::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max)) throw std::domain_error("GridSpec: empty rectangle");
  if (nx < 2 || ny < 2) throw std::domain_error("GridSpec: need at least 2 points per axis");
}

Complex GridSpec::point(int ix, int iy) const {
  const double re = re_min + (re_max - re_min) * ix / (nx - 1);
  const double im = im_min + (im_max - im_min) * iy / (ny - 1);
  return {re, im};
}

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 6) throw std::invalid_argument("grid must be re0:re1:im0:im1:nx:ny");
  GridSpec g;
  try {
    std::size_t used = 0;
    auto real = [&](const std::string& s) {
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    };
    auto count = [&](const std::string& s) {
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    };
    g.re_min = real(parts[0]);
    g.re_max = real(parts[1]);
    g.im_min = real(parts[2]);
    g.im_max = real(parts[3]);
    g.nx = count(parts[4]);
    g.ny = count(parts[5]);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("grid: malformed field in '" + text + "'");
  }
  g.validate();
  return g;
}

double resolvent_norm(const TruncatedOperator& h, Complex z) {
  const Eigen::MatrixXcd shifted = h.entries - z * Eigen::MatrixXcd::Identity(h.dim(), h.dim());
  const double s = sigma_min_dense(shifted);
  if (s < 1e-14 * norm2_estimate(h.entries)) return kInf;
  return 1.0 / s;
}

bool is_reliable(Complex z, double mass, int basis_size) { return std::norm(z) + mass * mass <= basis_size; }

PseudospectrumField pseudospectrum_grid(const OscillatorParams& params, int basis_size, const GridSpec& grid,
                                        int threads) {
  params.validate();
  grid.validate();
  if (basis_size < 32) throw std::domain_error("pseudospectrum_grid: basis size must be at least 32");

  const ResolventEvaluator evaluator(build_dirac(params, basis_size));
  PseudospectrumField field;
  field.grid = grid;
  field.params = params;
  field.basis_size = basis_size;
  field.values.assign(grid.size(), 0.0);
  field.reliable.assign(grid.size(), 0);
  std::vector<char> failed(grid.size(), 0);

  parallel_for(grid.size(), threads, [&](std::size_t slot) {
    const int ix = static_cast<int>(slot % grid.nx);
    const int iy = static_cast<int>(slot / grid.nx);
    const Complex z = grid.point(ix, iy);
    field.reliable[slot] = is_reliable(z, params.mass, basis_size) ? 1 : 0;
    try {
      field.values[slot] = log10_or_sentinel(evaluator.resolvent_norm(z));
    } catch (const std::exception&) {
      field.values[slot] = std::numeric_limits<double>::quiet_NaN();
      failed[slot] = 1;
    }
  });
  field.failures = static_cast<int>(std::count(failed.begin(), failed.end(), 1));
  return field;
}

double antipodal_deviation(const PseudospectrumField& field) {
  const GridSpec& g = field.grid;
  if (!g.antipodal_symmetric()) throw std::domain_error("antipodal_deviation: grid is not symmetric about 0");
  double worst = 0.0;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      worst = std::max(worst, pair_deviation(field.value(ix, iy), field.value(g.nx - 1 - ix, g.ny - 1 - iy)));
    }
  }
  return worst;
}

double conjugation_deviation(const PseudospectrumField& field) {
  const GridSpec& g = field.grid;
  if (!g.conjugation_symmetric()) throw std::domain_error("conjugation_deviation: grid is not symmetric about the real axis");
  double worst = 0.0;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      worst = std::max(worst, pair_deviation(field.value(ix, iy), field.value(ix, g.ny - 1 - iy)));
    }
  }
  return worst;
}

bool superlevel_sets_nested(const PseudospectrumField& field, const std::vector<double>& eps_list) {
  std::vector<double> sorted = eps_list;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
    const double small = -std::log10(sorted[k]);
    const double large = -std::log10(sorted[k + 1]);
    for (double v : field.values) {
      if (v >= small && !(v >= large)) return false;
    }
  }
  return true;
}

void RegionParams::validate() const {
  if (!(delta > 0.0) || !(c1 > 0.0) || !(c2 > 0.0)) throw std::domain_error("RegionParams: constants must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("RegionParams: eps must lie in (0, 1)");
}

bool inner_region_member(Complex z, double theta, double mass, const RegionParams& rp) {
  require_admissible_angle(theta, "inner_region_member");
  rp.validate();
  if (!(rp.delta < std::abs(theta))) throw std::domain_error("inner_region_member: need delta < |theta|");
  const Complex w = z * z - mass * mass;
  const double radius = std::abs(w);
  return radius >= rp.c1 && std::abs(std::arg(w)) <= std::abs(theta) - rp.delta &&
         radius > rp.c2 * std::log(1.0 / (rp.eps * rp.eps));
}

bool outer_region_member(Complex z, double theta, double mass, double eps) {
  require_admissible_angle(theta, "outer_region_member");
  const double t = std::abs(std::tan(theta / 2));
  return (1.0 - t) * std::abs(z.imag()) <= (std::abs(z.real()) + mass) * t + eps;
}

double resolvent_upper_bound(Complex z, double theta, double mass) {
  require_admissible_angle(theta, "resolvent_upper_bound");
  const double t = std::abs(std::tan(theta / 2));
  const double gap = (1.0 - t) * std::abs(z.imag()) - t * (mass + std::abs(z.real()));
  return gap > 0.0 ? 1.0 / gap : kInf;
}

double transition_angle(double theta) {
  require_admissible_angle(theta, "transition_angle");
  const double t = std::abs(std::tan(theta / 2));
  return std::atan(t / (1.0 - t));
}

bool RayScan::strictly_increasing() const {
  for (std::size_t k = 1; k < samples.size(); ++k) {
    if (!(samples[k].norm > samples[k - 1].norm)) return false;
  }
  return true;
}

bool RayScan::below_upper_bound(double theta, double mass, double tol) const {
  for (const auto& s : samples) {
    if (!(s.norm <= resolvent_upper_bound(s.z, theta, mass) * (1.0 + tol))) return false;
  }
  return true;
}

RayScan ray_scan(const OscillatorParams& params, int basis_size, double angle, const std::vector<double>& offsets,
                 int sign) {
  params.validate();
  if (sign != 1 && sign != -1) throw std::domain_error("ray_scan: sign must be +1 or -1");
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    if (!(offsets[k] > 0.0) || (k > 0 && !(offsets[k] > offsets[k - 1]))) {
      throw std::domain_error("ray_scan: offsets must be positive and increasing");
    }
  }
  const ResolventEvaluator evaluator(build_dirac(params, basis_size));
  RayScan scan;
  scan.angle = angle;
  scan.sign = sign;
  for (double r : offsets) {
    RaySample s;
    s.r = r;
    s.z = sign * params.mass + std::polar(r, angle);
    s.norm = evaluator.resolvent_norm(s.z);
    s.reliable = is_reliable(s.z, params.mass, basis_size);
    scan.any_unreliable = scan.any_unreliable || !s.reliable;
    scan.samples.push_back(s);
  }
  return scan;
}

bool RegionCalibration::valid() const { return std::isfinite(c1) && std::isfinite(c2) && c1 > 0.0 && c2 > 0.0; }

RegionCalibration calibrate_region_constants(const OscillatorParams& params, int basis_size, double delta,
                                             const std::vector<double>& fit_eps, int threads) {
  params.validate();
  const double half_angle = std::abs(params.theta) - delta;
  if (!(delta > 0.0) || !(half_angle > 0.0)) throw std::domain_error("calibrate_region_constants: need 0 < delta < |theta|");
  if (fit_eps.empty()) throw std::domain_error("calibrate_region_constants: no eps values to fit");

  const double m2 = params.mass * params.mass;
  const double radius_max = basis_size - 2.0 * m2;  // keeps |z|^2 + m^2 <= N
  if (!(radius_max > 1.0)) throw std::domain_error("calibrate_region_constants: basis too small for the mass");
  constexpr int kRadii = 96;
  constexpr int kAngles = 9;

  const ResolventEvaluator evaluator(build_dirac(params, basis_size));
  std::vector<double> norms(std::size_t(kRadii) * kAngles);
  parallel_for(norms.size(), threads, [&](std::size_t slot) {
    const int ir = static_cast<int>(slot / kAngles);
    const int ia = static_cast<int>(slot % kAngles);
    const double rho = radius_max * (ir + 1) / kRadii;
    const double phi = -half_angle + 2.0 * half_angle * ia / (kAngles - 1);
    const Complex z = std::sqrt(std::polar(rho, phi) + m2);
    norms[slot] = evaluator.resolvent_norm(z);
  });

  // Smallest sampled radius beyond which every sector sample exceeds `level`.
  auto onset = [&](double level) {
    double found = kInf;
    for (int ir = kRadii - 1; ir >= 0; --ir) {
      bool all = true;
      for (int ia = 0; ia < kAngles; ++ia) all = all && norms[std::size_t(ir) * kAngles + ia] > level;
      if (!all) break;
      found = radius_max * (ir + 1) / kRadii;
    }
    return found;
  };

  RegionCalibration cal;
  cal.delta = delta;
  cal.samples = static_cast<int>(norms.size());
  cal.fit_eps = fit_eps;
  cal.c1 = onset(10.0);
  double num = 0.0;
  double den = 0.0;
  for (double eps : fit_eps) {
    const double rho = onset(1.0 / eps);
    cal.onset_radius.push_back(rho);
    const double l = std::log(1.0 / (eps * eps));
    num += rho * l;
    den += l * l;
  }
  cal.c2 = 1.5 * num / den;  // +inf if any onset lies beyond the window
  return cal;
}

RegionReport region_consistency(const PseudospectrumField& field, double eps, const RegionParams& region) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("region_consistency: eps must lie in (0, 1)");
  const double theta = field.params.theta;
  const double mass = field.params.mass;
  const bool inner_active = region.delta < std::abs(theta);
  const double threshold = 1.0 / eps;

  RegionReport report;
  report.eps = eps;
  report.region = region;
  report.region.eps = eps;
  const GridSpec& g = field.grid;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      if (!field.is_reliable(ix, iy)) {
        ++report.unreliable_points;
        continue;
      }
      const Complex z = g.point(ix, iy);
      const double norm = std::pow(10.0, field.value(ix, iy));
      if (inner_active && inner_region_member(z, theta, mass, report.region)) {
        ++report.inner_points;
        if (!(norm > threshold)) ++report.inner_violations;
      }
      if (!outer_region_member(z, theta, mass, eps)) {
        ++report.outer_excluded_points;
        if (!(norm <= threshold * (1.0 + 1e-6))) ++report.outer_violations;
      }
      const double bound = resolvent_upper_bound(z, theta, mass);
      if (std::isfinite(bound)) {
        ++report.bound_points;
        report.worst_bound_ratio = std::max(report.worst_bound_ratio, norm / bound);
        if (!(norm <= bound * (1.0 + 1e-6))) ++report.bound_violations;
      }
    }
  }
  return report;
}

std::vector<TransitionSample> empirical_transition(const OscillatorParams& params, int basis_size,
                                                   const std::vector<double>& offsets, int angles) {
  const double lo = std::abs(params.theta) / 2;
  const double hi = transition_angle(params.theta);
  std::vector<TransitionSample> out;
  for (int k = 0; k < angles; ++k) {
    const double angle = angles == 1 ? lo : lo + (hi - lo) * k / (angles - 1);
    const RayScan scan = ray_scan(params, basis_size, angle, offsets, 1);
    out.push_back({angle, scan.strictly_increasing(), scan.below_upper_bound(params.theta, params.mass)});
  }
  return out;
}

}  // namespace rotosc
