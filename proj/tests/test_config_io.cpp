#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "rotosc/commands.hpp"
#include "rotosc/io.hpp"
#include "rotosc/run_config.hpp"

using namespace rotosc;

TEST_CASE("angles accept multiples of pi") {
  CHECK(parse_angle("pi/4") == doctest::Approx(std::numbers::pi / 4));
  CHECK(parse_angle("3*pi/8") == doctest::Approx(3 * std::numbers::pi / 8));
  CHECK(parse_angle("-pi/4") == doctest::Approx(-std::numbers::pi / 4));
  CHECK(parse_angle(" 0.25 ") == 0.25);
  CHECK_THROWS_AS(parse_angle("pi/0"), ConfigError);
  CHECK_THROWS_AS(parse_angle("two"), ConfigError);
}

TEST_CASE("config text overrides defaults and ignores comments") {
  std::istringstream in(
      "# a wide-grid run\n"
      "command = pseudo\n"
      "theta = pi/4   # rotation\n"
      "mass = 2\n"
      "basis-size = 256\n"
      "grid = -6:6:-6:6:11:11\n"
      "eps = 0.1, 0.01\n"
      "\n"
      "format = json\n");
  const RunConfig c = parse_config(in);
  CHECK(c.command == Command::Pseudo);
  CHECK(c.mass == 2.0);
  CHECK(c.basis_size == 256);
  CHECK(c.grid.nx == 11);
  CHECK(c.eps_list.size() == 2u);
  CHECK(c.format == OutputFormat::Json);
  CHECK(c.omega == 1.0);
}

TEST_CASE("config round trip is a fixed point") {
  RunConfig c;
  c.theta = 0.123456789012345678;
  c.z = {0.25, -1.0 / 3.0};
  c.eps_list = {0.3, 0.02};
  c.emit_svg = true;
  c.output_dir = "runs/a";
  const std::string text = serialize_config(c);
  std::istringstream in(text);
  const RunConfig back = parse_config(in);
  CHECK(serialize_config(back) == text);
  CHECK(back.theta == c.theta);
  CHECK(back.z == c.z);
}

TEST_CASE("bad configuration is rejected with ConfigError") {
  std::istringstream unknown("colour = blue\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  std::istringstream no_eq("theta 0.3\n");
  CHECK_THROWS_AS(parse_config(no_eq), ConfigError);
  RunConfig c;
  c.theta = 1.6;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.eps_list = {0.01, 0.1};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.command = Command::NrLimit;
  c.mass = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.command = Command::NrLimit;
  c.z = {1.0, 0.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("exit codes follow the failure class") {
  std::ostringstream log;
  RunConfig c;
  c.theta = 2.0;
  CHECK(run_command(c, log) == kExitConfig);
}

TEST_CASE("numbers are written with full precision and explicit non-finite tokens") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(std::stod(format_number(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("tables serialize to csv and json") {
  Table t;
  t.columns = {"n", "value", "label"};
  t.rows.push_back({std::int64_t(1), 0.5, std::string("a")});
  t.rows.push_back({std::int64_t(2), std::numeric_limits<double>::infinity(), std::string("b")});
  std::ostringstream csv;
  write_csv(csv, t);
  CHECK(csv.str() == "n,value,label\n1,0.5,a\n2,inf,b\n");

  std::ostringstream js;
  write_json(js, t, nlohmann::json{{"config", {{"theta", "0.5"}}}});
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["meta"]["version"] == kToolVersion);
  CHECK(doc["meta"]["config"]["theta"] == "0.5");
  CHECK(doc["data"]["columns"].size() == 3u);
  CHECK(doc["data"]["rows"][0][0] == 1);
  CHECK(doc["data"]["rows"][1][1] == "inf");
}
