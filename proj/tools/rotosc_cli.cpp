#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rotosc/commands.hpp"
#include "rotosc/io.hpp"
#include "rotosc/run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rotated Dirac and Davies oscillators: spectra, projector norms, pseudospectra and limits."};
  app.set_version_flag("--version", std::string(rotosc::kToolVersion));

  std::string command;
  std::string config_path;
  bool print_config = false;
  app.add_option("command", command, "spectrum | projnorms | pseudo | rays | nrlimit | verify")->required();
  app.add_option("--config", config_path, "key = value file; flags override its entries");
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");

  // Flags are forwarded verbatim to the config parser so both paths share validation.
  const std::vector<std::pair<std::string, std::string>> keyed = {
      {"theta", "rotation angle, e.g. 0.5 or pi/4"},
      {"mass", "mass m >= 0"},
      {"c", "speed of light for the limit operator"},
      {"omega", "oscillator frequency for the limit operator"},
      {"basis-size", "Hermite truncation N"},
      {"grid", "re0:re1:im0:im1:nx:ny"},
      {"eps", "comma-separated, strictly decreasing levels"},
      {"ray-angle", "ray angle theta', e.g. pi/16"},
      {"ray-offsets", "comma-separated increasing offsets r"},
      {"c-values", "comma-separated increasing c values"},
      {"z", "spectral parameter as re,im"},
      {"n-max", "largest level for spectrum and projnorms"},
      {"delta", "inner-region margin"},
      {"out", "output directory"},
      {"format", "csv | json"},
      {"threads", "worker threads (0 = hardware parallelism)"},
  };
  std::vector<std::string> values(keyed.size());
  std::vector<CLI::Option*> options;
  for (std::size_t k = 0; k < keyed.size(); ++k) {
    options.push_back(app.add_option("--" + keyed[k].first, values[k], keyed[k].second));
  }
  bool svg = false;
  bool seed_check = false;
  auto* svg_flag = app.add_flag("--svg", svg, "also write contours.svg (pseudo)");
  auto* seed_flag = app.add_flag("--seed-check", seed_check, "assert grid symmetries (pseudo)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rotosc::kExitConfig;
  }

  rotosc::RunConfig config;
  try {
    if (!config_path.empty()) config = rotosc::load_config(config_path);
    config.command = rotosc::parse_command(command);
    for (std::size_t k = 0; k < keyed.size(); ++k) {
      if (options[k]->count() > 0) rotosc::apply_setting(config, keyed[k].first, values[k]);
    }
    if (svg_flag->count() > 0) config.emit_svg = svg;
    if (seed_flag->count() > 0) config.seed_check = seed_check;
  } catch (const rotosc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return rotosc::kExitConfig;
  }

  if (print_config) {
    std::cout << rotosc::serialize_config(config);
    return rotosc::kExitOk;
  }
  return rotosc::run_command(config, std::cout);
}
