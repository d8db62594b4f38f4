#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rotosc/eigensystem.hpp"
#include "rotosc/limits.hpp"
#include "rotosc/pseudospectra.hpp"

namespace rotosc {

inline constexpr const char* kToolVersion = "rotosc 0.1.0";

/// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);

using Cell = std::variant<double, std::int64_t, std::string>;

/// Column-labelled rows shared by the CSV and JSON writers.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& out, const Table& table);

/// {"meta": meta, "data": {"columns": [...], "rows": [[...], ...]}}; non-finite
/// numbers become the strings used in CSV.
void write_json(std::ostream& out, const Table& table, const nlohmann::json& meta);

Table field_table(const PseudospectrumField& field);            // re,im,log10_resnorm,reliable
Table projector_series_table(const ProjectorNormSeries& series);  // n,log_norm,increment
Table limit_table(const LimitCheckResult& result);                // c,diff_norm
Table ray_table(const RayScan& scan, double theta, double mass);  // r,re,im,resolvent_norm,upper_bound,reliable

}  // namespace rotosc
