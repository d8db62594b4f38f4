#include "rotosc/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rotosc/contour.hpp"
#include "rotosc/eigensystem.hpp"
#include "rotosc/errors.hpp"
#include "rotosc/io.hpp"
#include "rotosc/limits.hpp"
#include "rotosc/pseudospectra.hpp"
#include "rotosc/sigma_min.hpp"
#include "rotosc/special_functions.hpp"

namespace rotosc {

namespace {

nlohmann::json config_meta(const RunConfig& config) {
  nlohmann::json meta = nlohmann::json::object();
  std::istringstream lines(serialize_config(config));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) meta[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return nlohmann::json{{"config", meta}};
}

std::filesystem::path output_path(const RunConfig& config, const std::string& stem, const char* ext) {
  return std::filesystem::path(config.output_dir) / (stem + ext);
}

void write_table(const RunConfig& config, const std::string& stem, const Table& table, std::ostream& log) {
  const bool json = config.format == OutputFormat::Json;
  const auto path = output_path(config, stem, json ? ".json" : ".csv");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (json) {
    write_json(out, table, config_meta(config));
  } else {
    write_csv(out, table);
  }
  log << "wrote " << path.string() << '\n';
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

}  // namespace

int cmd_spectrum(const RunConfig& config, std::ostream& log) {
  Table levels;
  levels.columns = {"index", "level"};
  const auto spectrum = exact_spectrum(config.mass, config.n_max);
  for (std::size_t k = 0; k < spectrum.size(); ++k) levels.rows.push_back({std::int64_t(k), spectrum[k]});
  write_table(config, "spectrum", levels, log);

  const auto profile = galerkin_instability_profile(config.theta, config.mass, config.basis_size);
  Table errors;
  errors.columns = {"n", "exact", "error"};
  for (const auto& e : profile) {
    errors.rows.push_back({std::int64_t(e.n), std::sqrt(2.0 * e.n + config.mass * config.mass), e.error});
  }
  write_table(config, "galerkin_profile", errors, log);

  double low = 0.0;
  double high = 0.0;
  for (const auto& e : profile) {
    if (e.n <= 5) low = std::max(low, e.error);
    if (4 * e.n >= config.basis_size) high = std::max(high, e.error);
  }
  log << "max error n <= 5: " << format_number(low) << "; max error n >= N/4: " << format_number(high) << '\n';
  return kExitOk;
}

int cmd_projnorms(const RunConfig& config, std::ostream& log) {
  const ProjectorNormSeries series = estimate_rate(config.theta, config.mass, config.n_max);
  write_table(config, "projnorms", projector_series_table(series), log);

  const double exact = projector_rate(config.theta);
  Table summary;
  summary.columns = {"theta", "mass", "n_max", "rate_estimate", "rate_exact", "abs_error"};
  summary.rows.push_back({config.theta, config.mass, std::int64_t(config.n_max), series.rate_estimate, exact,
                          std::abs(series.rate_estimate - exact)});
  write_table(config, "rate_summary", summary, log);
  log << "rate estimate " << format_number(series.rate_estimate) << " vs closed form " << format_number(exact) << '\n';
  return kExitOk;
}

int cmd_pseudo(const RunConfig& config, std::ostream& log) {
  const int threads = config.worker_count();
  const PseudospectrumField field = pseudospectrum_grid(config.oscillator(), config.basis_size, config.grid, threads);
  write_table(config, "field", field_table(field), log);
  if (field.failures > 0) log << "warning: " << field.failures << " grid points failed\n";

  const bool inner_active = config.delta < std::abs(config.theta);
  RegionCalibration calibration;
  calibration.delta = config.delta;
  calibration.c1 = calibration.c2 = std::numeric_limits<double>::quiet_NaN();
  if (inner_active) {
    calibration = calibrate_region_constants(config.oscillator(), config.basis_size, config.delta, {0.1, 0.05, 0.02, 0.01},
                                             threads);
  }
  Table report;
  report.columns = {"eps", "delta", "c1", "c2", "inner_points", "inner_violations", "outer_excluded_points",
                    "outer_violations", "bound_points", "bound_violations", "worst_bound_ratio", "unreliable_points"};
  for (double eps : config.eps_list) {
    const RegionParams region = inner_active && calibration.valid() ? calibration.region(eps)
                                                                    : RegionParams{config.delta, 1.0, 1.0, eps};
    RegionReport r = region_consistency(field, eps, region);
    if (inner_active && !calibration.valid()) r.inner_points = r.inner_violations = 0;
    report.rows.push_back({eps, config.delta, calibration.c1, calibration.c2, std::int64_t(r.inner_points),
                           std::int64_t(r.inner_violations), std::int64_t(r.outer_excluded_points),
                           std::int64_t(r.outer_violations), std::int64_t(r.bound_points),
                           std::int64_t(r.bound_violations), r.worst_bound_ratio, std::int64_t(r.unreliable_points)});
    log << "eps " << format_number(eps) << ": inner " << r.inner_violations << "/" << r.inner_points
        << " violations, outer " << r.outer_violations << "/" << r.outer_excluded_points << ", bound "
        << r.bound_violations << "/" << r.bound_points << '\n';
    if (inner_active && r.inner_points == 0) {
      log << "note: no grid point lies in the calibrated inner region; widen the grid along the real axis\n";
    }
  }
  write_table(config, "regions", report, log);
  if (inner_active) {
    log << "calibration: C1 = " << format_number(calibration.c1) << ", C2 = " << format_number(calibration.c2) << '\n';
  }

  if (config.emit_svg) {
    const auto path = output_path(config, "contours", ".svg");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_contour_svg(out, field, config.eps_list);
    log << "wrote " << path.string() << '\n';
  }

  if (config.seed_check) {
    bool ok = true;
    if (config.grid.antipodal_symmetric()) {
      const double d = antipodal_deviation(field);
      log << verdict(d < 1e-8) << " antipodal symmetry, max deviation " << format_number(d) << '\n';
      ok = ok && d < 1e-8;
    }
    if (config.grid.conjugation_symmetric()) {
      const double d = conjugation_deviation(field);
      log << verdict(d < 1e-8) << " conjugation symmetry, max deviation " << format_number(d) << '\n';
      ok = ok && d < 1e-8;
    }
    const bool nested = superlevel_sets_nested(field, config.eps_list);
    log << verdict(nested) << " nested pseudospectral sets\n";
    if (!ok || !nested) return kExitVerification;
  }
  return kExitOk;
}

int cmd_rays(const RunConfig& config, std::ostream& log) {
  const OscillatorParams params = config.oscillator();
  bool ok = true;
  for (int sign : {1, -1}) {
    const RayScan scan = ray_scan(params, config.basis_size, config.ray_angle, config.ray_offsets, sign);
    write_table(config, sign > 0 ? "rays_plus" : "rays_minus", ray_table(scan, config.theta, config.mass), log);
    if (scan.any_unreliable) log << "warning: ray samples leave the reliable window |z|^2 + m^2 <= N\n";
    const double a = std::abs(config.ray_angle);
    if (a > 0.0 && a < std::abs(config.theta) / 2) {
      const bool inc = scan.strictly_increasing();
      log << verdict(inc) << " interior ray (sign " << sign << ") strictly increasing\n";
      ok = ok && inc;
    }
    if (a > transition_angle(config.theta) && a < std::numbers::pi / 2) {
      const bool below = scan.below_upper_bound(config.theta, config.mass);
      log << verdict(below) << " exterior ray (sign " << sign << ") below resolvent bound\n";
      ok = ok && below;
    }
  }

  const double exterior = 1.1 * transition_angle(config.theta);
  const RayScan outside = ray_scan(params, config.basis_size, exterior, config.ray_offsets, 1);
  write_table(config, "rays_exterior", ray_table(outside, config.theta, config.mass), log);
  const bool below = outside.below_upper_bound(config.theta, config.mass);
  log << verdict(below) << " ray at 1.1 f(theta) = " << format_number(exterior) << " below resolvent bound\n";
  ok = ok && below;

  if (config.theta != 0.0) {
    Table transition;
    transition.columns = {"angle", "increasing", "below_bound"};
    for (const auto& s : empirical_transition(params, config.basis_size, config.ray_offsets)) {
      transition.rows.push_back({s.angle, std::int64_t(s.increasing), std::int64_t(s.below_bound)});
    }
    write_table(config, "transition", transition, log);
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_nrlimit(const RunConfig& config, std::ostream& log) {
  const LimitCheckResult result =
      nonrel_convergence(config.theta, config.mass, config.omega, config.z, config.c_values, config.basis_size);
  write_table(config, "nrlimit", limit_table(result), log);
  const double ratio = result.diff_norms.back() / result.diff_norms.front();
  log << verdict(result.monotone) << " diff norms strictly decreasing; last/first = " << format_number(ratio) << '\n';
  return result.monotone ? kExitOk : kExitVerification;
}

std::vector<CheckGroup> run_verification(const RunConfig& config) {
  const double theta = config.theta;
  const double mass = config.mass;
  const int n = config.basis_size;
  std::vector<CheckGroup> groups;
  auto record = [&](const std::string& name, auto&& body) {
    CheckGroup g;
    g.name = name;
    try {
      std::ostringstream detail;
      g.pass = body(detail);
      g.detail = detail.str();
    } catch (const std::exception& e) {
      g.pass = false;
      g.detail = std::string("exception: ") + e.what();
    }
    groups.push_back(g);
  };

  record("special_functions", [&](std::ostream& d) {
    const QuadratureRule rule = gauss_hermite(40);
    double moment = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) moment += rule.weights[i] * std::pow(rule.nodes[i], 4);
    const double moment_err = std::abs(moment - 0.75 * std::sqrt(std::numbers::pi));
    double sym = 0.0;
    double parseval = 0.0;
    const auto plus = rotated_norm_sq_log_series(20, theta);
    const auto minus = rotated_norm_sq_log_series(20, -theta);
    for (int k = 0; k <= 20; ++k) sym = std::max(sym, std::abs(plus[k] - minus[k]));
    for (int level = 0; level <= 20; level += 5) {
      double sum = 0.0;
      for (int k = 0; k <= level + 60; ++k) sum += std::norm(overlap(k, level, theta));
      parseval = std::max(parseval, std::abs(sum / std::exp(plus[level]) - 1.0));
    }
    d << "moment " << format_number(moment_err) << ", theta symmetry " << format_number(sym) << ", parseval "
      << format_number(parseval);
    return moment_err < 1e-12 && sym < 1e-13 && parseval < 1e-8;
  });

  record("operators", [&](std::ostream& d) {
    const TruncatedOperator h = build_dirac({theta, mass}, n);
    const TruncatedOperator hm = build_dirac({-theta, mass}, n);
    const Eigen::MatrixXcd a0 = spinor_kron(DiracMatrices::standard().alpha0, Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXcd parity = spinor_kron(Eigen::Matrix4cd::Identity(), parity_signs(n).asDiagonal().toDenseMatrix());
    const double adjoint = (h.entries.adjoint() - hm.entries).cwiseAbs().maxCoeff();
    const double anti = (a0 * h.entries * a0 + h.entries).cwiseAbs().maxCoeff();
    const double csym = (parity * h.entries.conjugate() * parity - h.entries.adjoint()).cwiseAbs().maxCoeff();
    const double square = square_identity_residual({theta, mass}, n);
    d << "adjoint " << format_number(adjoint) << ", alpha0 " << format_number(anti) << ", C-symmetry "
      << format_number(csym) << ", square " << format_number(square);
    return adjoint < 1e-14 && anti < 1e-14 && csym < 1e-14 && square < 1e-12;
  });

  record("eigensystem", [&](std::ostream& d) {
    double block = 0.0;
    for (int level = 1; level <= 100; ++level) {
      const BlockEigensystem b = block_eigensystem(level, mass);
      for (int j = 0; j < 4; ++j) {
        block = std::max(block, (b.matrix * b.u[j] - b.eigenvalues[j] * b.u[j]).cwiseAbs().maxCoeff());
      }
    }
    double sym = 0.0;
    bool sandwich = true;
    for (int level = 1; level <= 50; ++level) {
      sym = std::max(sym, projector_norm_symmetry_check(level, theta, mass));
      const ProjectorBounds bounds = projector_norm_bounds(level, theta, mass);
      const double value = projector_norm_log(level, theta, mass);
      sandwich = sandwich && bounds.lower <= value + 1e-12 && value <= bounds.upper + 1e-12;
    }
    double oracle = 0.0;
    double idem = 0.0;
    for (int level = 0; level <= 10; ++level) {
      const int basis = 2 * level + 80;
      oracle = std::max(oracle, std::abs(std::expm1(projector_norm_log(level, theta, mass) -
                                                    projector_matrix_norm_log(level, theta, mass, basis))));
      idem = std::max(idem, projector_idempotency_defect(level, theta, mass, basis));
    }
    const double bio = biorthonormality_defect(10, theta, mass, 100);
    d << "block " << format_number(block) << ", sign symmetry " << format_number(sym) << ", sandwich "
      << (sandwich ? "ok" : "broken") << ", oracle " << format_number(oracle) << ", idempotency "
      << format_number(idem) << ", biorthonormality " << format_number(bio);
    return block < 1e-12 && sym < 1e-10 && sandwich && oracle < 1e-6 && idem < 1e-6 && bio < 1e-8;
  });

  record("galerkin", [&](std::ostream& d) {
    const auto profile = galerkin_instability_profile(theta, mass, n);
    double low = 0.0;
    for (int level = 0; level <= 2; ++level) low = std::max(low, profile[level].error);
    d << "max error n <= 2: " << format_number(low);
    return low < 1e-6;
  });

  record("pseudospectra", [&](std::ostream& d) {
    const GridSpec grid{-4.0, 4.0, -4.0, 4.0, 21, 21};
    const PseudospectrumField field = pseudospectrum_grid({theta, mass}, n, grid, config.worker_count());
    const double anti = antipodal_deviation(field);
    const double conj = conjugation_deviation(field);
    const bool nested = superlevel_sets_nested(field, {0.1, 0.01, 0.001});
    const RegionReport report = region_consistency(field, 0.01, {0.1, 1.0, 1.0, 0.01});
    const TruncatedOperator h = build_dirac({theta, mass}, n);
    const ResolventEvaluator fast(h);
    const std::complex<double> z(0.5, 0.7);
    const double cross = std::abs(fast.resolvent_norm(z) / resolvent_norm(h, z) - 1.0);
    d << "antipodal " << format_number(anti) << ", conjugation " << format_number(conj) << ", bound violations "
      << report.bound_violations << "/" << report.bound_points << ", fast vs dense " << format_number(cross);
    return anti < 1e-8 && conj < 1e-8 && nested && report.bound_violations == 0 && field.failures == 0 && cross < 1e-8;
  });

  record("transition", [&](std::ostream& d) {
    const double f = transition_angle(theta);
    d << "f(theta) = " << format_number(f);
    return f >= std::abs(theta) / 2;
  });

  if (mass > 0.0) {
    record("limits", [&](std::ostream& d) {
      const LimitCheckResult r = nonrel_convergence(theta, mass, 1.0, {0.0, 1.0}, {1, 2, 4, 8, 16}, std::max(64, n));
      d << "last/first " << format_number(r.diff_norms.back() / r.diff_norms.front());
      return r.monotone;
    });
  }

  record("config", [&](std::ostream& d) {
    const std::string once = serialize_config(config);
    std::istringstream in(once);
    const bool same = serialize_config(parse_config(in)) == once;
    d << (same ? "round trip stable" : "round trip changed the text");
    return same;
  });
  return groups;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
  bool all = true;
  for (const auto& g : run_verification(config)) {
    log << verdict(g.pass) << ' ' << g.name << ": " << g.detail << '\n';
    all = all && g.pass;
  }
  return all ? kExitOk : kExitVerification;
}

int run_command(const RunConfig& config, std::ostream& log) {
  try {
    config.validate();
    config.oscillator().validate();
    if (config.command != Command::Verify) std::filesystem::create_directories(config.output_dir);
    switch (config.command) {
      case Command::Spectrum: return cmd_spectrum(config, log);
      case Command::ProjNorms: return cmd_projnorms(config, log);
      case Command::Pseudo: return cmd_pseudo(config, log);
      case Command::Rays: return cmd_rays(config, log);
      case Command::NrLimit: return cmd_nrlimit(config, log);
      case Command::Verify: return cmd_verify(config, log);
    }
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    log << "invalid parameters: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace rotosc
