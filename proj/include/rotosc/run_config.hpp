#pragma once

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotosc/operators.hpp"
#include "rotosc/pseudospectra.hpp"

namespace rotosc {

enum class Command { Spectrum, ProjNorms, Pseudo, Rays, NrLimit, Verify };
enum class OutputFormat { Csv, Json };

const char* command_name(Command c);
Command parse_command(const std::string& name);

/// Thrown for anything wrong with the user's configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run needs. Defaults give a 101x101 grid over [-6,6]^2 at N = 128.
struct RunConfig {
  Command command = Command::Verify;
  double theta = 0.7853981633974483;  // pi/4
  double mass = 1.0;
  double c = 1.0;
  double omega = 1.0;
  int basis_size = 128;
  GridSpec grid;
  std::vector<double> eps_list = {0.1, 0.01, 0.001};
  double ray_angle = 0.19634954084936207;  // pi/16
  std::vector<double> ray_offsets = {2, 4, 6, 8};
  std::vector<double> c_values = {1, 2, 4, 8, 16};
  std::complex<double> z = {0.0, 1.0};
  int n_max = 200;
  double delta = 0.2;
  std::string output_dir = ".";
  OutputFormat format = OutputFormat::Csv;
  bool emit_svg = false;
  bool seed_check = false;
  int threads = 0;  // 0: hardware parallelism

  OscillatorParams oscillator() const { return {theta, mass}; }
  RelativisticParams relativistic() const { return {theta, mass, c, omega}; }

  /// Throws ConfigError on any violated invariant.
  void validate() const;
  int worker_count() const;
};

/// Applies one key = value setting; keys are the long flag names without dashes.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Flat key = value text; '#' starts a comment, blank lines ignored.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Every key in a fixed order, reals with 17 significant digits. Parsing the
/// output reproduces the same text.
std::string serialize_config(const RunConfig& config);

/// Reals, "pi", "pi/4", "3*pi/8" and the like.
double parse_angle(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

}  // namespace rotosc
