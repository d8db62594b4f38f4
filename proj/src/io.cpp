#include "rotosc/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace rotosc {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

nlohmann::json cell_json(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  return std::get<std::string>(cell);
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, const nlohmann::json& meta) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& cell : row) r.push_back(cell_json(cell));
    rows.push_back(std::move(r));
  }
  nlohmann::json doc;
  doc["meta"] = meta;
  doc["meta"]["version"] = kToolVersion;
  doc["data"] = {{"columns", table.columns}, {"rows", std::move(rows)}};
  out << doc.dump(1) << '\n';
}

Table field_table(const PseudospectrumField& field) {
  Table t;
  t.columns = {"re", "im", "log10_resnorm", "reliable"};
  const GridSpec& g = field.grid;
  t.rows.reserve(g.size());
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const auto z = g.point(ix, iy);
      t.rows.push_back({z.real(), z.imag(), field.value(ix, iy), std::int64_t(field.is_reliable(ix, iy) ? 1 : 0)});
    }
  }
  return t;
}

Table projector_series_table(const ProjectorNormSeries& series) {
  Table t;
  t.columns = {"n", "log_norm", "increment"};
  for (const auto& e : series.entries) t.rows.push_back({std::int64_t(e.n), e.log_norm, e.increment});
  return t;
}

Table limit_table(const LimitCheckResult& result) {
  Table t;
  t.columns = {"c", "diff_norm"};
  for (std::size_t k = 0; k < result.c_values.size(); ++k) t.rows.push_back({result.c_values[k], result.diff_norms[k]});
  return t;
}

Table ray_table(const RayScan& scan, double theta, double mass) {
  Table t;
  t.columns = {"r", "re", "im", "resolvent_norm", "upper_bound", "reliable"};
  for (const auto& s : scan.samples) {
    t.rows.push_back({s.r, s.z.real(), s.z.imag(), s.norm, resolvent_upper_bound(s.z, theta, mass),
                      std::int64_t(s.reliable ? 1 : 0)});
  }
  return t;
}

}  // namespace rotosc
