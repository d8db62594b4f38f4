#include "rotosc/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rotosc/io.hpp"
#include "rotosc/parallel.hpp"

namespace rotosc {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text, const std::string& key) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    throw ConfigError(key + ": not a number: '" + text + "'");
  }
  if (used != s.size()) throw ConfigError(key + ": not a number: '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& key) {
  const std::string s = trim(text);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::logic_error&) {
    throw ConfigError(key + ": not an integer: '" + text + "'");
  }
  if (used != s.size()) throw ConfigError(key + ": not an integer: '" + text + "'");
  return v;
}

bool parse_bool(const std::string& text, const std::string& key) {
  const std::string s = trim(text);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + text + "'");
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? "," : "") + format_number(values[k]);
  return out;
}

std::string grid_text(const GridSpec& g) {
  return format_number(g.re_min) + ":" + format_number(g.re_max) + ":" + format_number(g.im_min) + ":" +
         format_number(g.im_max) + ":" + std::to_string(g.nx) + ":" + std::to_string(g.ny);
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::ProjNorms: return "projnorms";
    case Command::Pseudo: return "pseudo";
    case Command::Rays: return "rays";
    case Command::NrLimit: return "nrlimit";
    case Command::Verify: return "verify";
  }
  return "verify";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::Spectrum, Command::ProjNorms, Command::Pseudo, Command::Rays, Command::NrLimit,
                    Command::Verify}) {
    if (name == command_name(c)) return c;
  }
  throw ConfigError("unknown command '" + name + "'");
}

double parse_angle(const std::string& text) {
  const std::string s = trim(text);
  const auto pi_at = s.find("pi");
  if (pi_at == std::string::npos) return parse_real(s, "angle");

  double value = std::numbers::pi;
  std::string head = trim(s.substr(0, pi_at));
  std::string tail = trim(s.substr(pi_at + 2));
  if (!head.empty()) {
    bool negative = false;
    if (head == "-") {
      negative = true;
      head.clear();
    } else if (head.back() == '*') {
      head = trim(head.substr(0, head.size() - 1));
    } else {
      throw ConfigError("angle: cannot parse '" + text + "'");
    }
    value *= negative ? -1.0 : (head.empty() ? 1.0 : parse_real(head, "angle"));
  }
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError("angle: cannot parse '" + text + "'");
    const double den = parse_real(tail.substr(1), "angle");
    if (den == 0.0) throw ConfigError("angle: division by zero in '" + text + "'");
    value /= den;
  }
  return value;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_real(item, "list"));
  }
  return out;
}

void apply_setting(RunConfig& config, const std::string& raw_key, const std::string& value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "command") {
    config.command = parse_command(trim(value));
  } else if (key == "theta") {
    config.theta = parse_angle(value);
  } else if (key == "mass") {
    config.mass = parse_real(value, key);
  } else if (key == "c") {
    config.c = parse_real(value, key);
  } else if (key == "omega") {
    config.omega = parse_real(value, key);
  } else if (key == "basis_size") {
    config.basis_size = parse_int(value, key);
  } else if (key == "grid") {
    try {
      config.grid = parse_grid(trim(value));
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "eps") {
    config.eps_list = parse_real_list(value);
  } else if (key == "ray_angle") {
    config.ray_angle = parse_angle(value);
  } else if (key == "ray_offsets") {
    config.ray_offsets = parse_real_list(value);
  } else if (key == "c_values") {
    config.c_values = parse_real_list(value);
  } else if (key == "z") {
    const auto parts = parse_real_list(value);
    if (parts.size() != 2) throw ConfigError("z: expected re,im");
    config.z = {parts[0], parts[1]};
  } else if (key == "n_max") {
    config.n_max = parse_int(value, key);
  } else if (key == "delta") {
    config.delta = parse_real(value, key);
  } else if (key == "out") {
    config.output_dir = trim(value);
  } else if (key == "format") {
    const std::string f = trim(value);
    if (f == "csv") {
      config.format = OutputFormat::Csv;
    } else if (f == "json") {
      config.format = OutputFormat::Json;
    } else {
      throw ConfigError("format: expected csv or json, got '" + f + "'");
    }
  } else if (key == "svg") {
    config.emit_svg = parse_bool(value, key);
  } else if (key == "seed_check") {
    config.seed_check = parse_bool(value, key);
  } else if (key == "threads") {
    config.threads = parse_int(value, key);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  out << "command = " << command_name(config.command) << '\n';
  out << "theta = " << format_number(config.theta) << '\n';
  out << "mass = " << format_number(config.mass) << '\n';
  out << "c = " << format_number(config.c) << '\n';
  out << "omega = " << format_number(config.omega) << '\n';
  out << "basis_size = " << config.basis_size << '\n';
  out << "grid = " << grid_text(config.grid) << '\n';
  out << "eps = " << join(config.eps_list) << '\n';
  out << "ray_angle = " << format_number(config.ray_angle) << '\n';
  out << "ray_offsets = " << join(config.ray_offsets) << '\n';
  out << "c_values = " << join(config.c_values) << '\n';
  out << "z = " << format_number(config.z.real()) << ',' << format_number(config.z.imag()) << '\n';
  out << "n_max = " << config.n_max << '\n';
  out << "delta = " << format_number(config.delta) << '\n';
  out << "out = " << config.output_dir << '\n';
  out << "format = " << (config.format == OutputFormat::Csv ? "csv" : "json") << '\n';
  out << "svg = " << (config.emit_svg ? "true" : "false") << '\n';
  out << "seed_check = " << (config.seed_check ? "true" : "false") << '\n';
  out << "threads = " << config.threads << '\n';
  return out.str();
}

void RunConfig::validate() const {
  if (!(std::abs(theta) < std::numbers::pi / 2)) throw ConfigError("theta must satisfy |theta| < pi/2");
  if (!(mass >= 0.0)) throw ConfigError("mass must be nonnegative");
  if (basis_size < 32) throw ConfigError("basis_size must be at least 32");
  if (threads < 0) throw ConfigError("threads must be nonnegative (0 = hardware parallelism)");
  if (eps_list.empty()) throw ConfigError("eps list is empty");
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] > 0.0 && eps_list[k] < 1.0)) throw ConfigError("eps values must lie in (0, 1)");
    if (k > 0 && !(eps_list[k] < eps_list[k - 1])) throw ConfigError("eps values must be strictly decreasing");
  }
  try {
    grid.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  switch (command) {
    case Command::Spectrum:
      if (n_max < 0) throw ConfigError("n_max must be nonnegative");
      break;
    case Command::ProjNorms:
      if (n_max < 20) throw ConfigError("projnorms needs n_max >= 20");
      break;
    case Command::Rays:
      if (ray_offsets.empty()) throw ConfigError("rays needs ray_offsets");
      for (std::size_t k = 0; k < ray_offsets.size(); ++k) {
        if (!(ray_offsets[k] > 0.0) || (k > 0 && !(ray_offsets[k] > ray_offsets[k - 1]))) {
          throw ConfigError("ray_offsets must be positive and increasing");
        }
      }
      break;
    case Command::NrLimit:
      if (!(mass > 0.0)) throw ConfigError("nrlimit needs mass > 0");
      if (!(c > 0.0) || !(omega > 0.0)) throw ConfigError("nrlimit needs c > 0 and omega > 0");
      if (basis_size < 64) throw ConfigError("nrlimit needs basis_size >= 64");
      if (z.imag() == 0.0) throw ConfigError("nrlimit needs a non-real z");
      if (c_values.empty()) throw ConfigError("nrlimit needs c_values");
      for (std::size_t k = 0; k < c_values.size(); ++k) {
        if (!(c_values[k] > 0.0) || (k > 0 && !(c_values[k] > c_values[k - 1]))) {
          throw ConfigError("c_values must be positive and increasing");
        }
      }
      break;
    case Command::Pseudo:
      if (!(delta > 0.0)) throw ConfigError("delta must be positive");
      break;
    case Command::Verify:
      break;
  }
}

int RunConfig::worker_count() const { return threads > 0 ? threads : default_thread_count(); }

}  // namespace rotosc
