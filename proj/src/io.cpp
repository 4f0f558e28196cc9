#include "bellsim/io.hpp"

#include <cstdio>

namespace bellsim {

using nlohmann::json;

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

json to_json(const TwoQubitState& state) {
  json elements = json::array();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      elements.push_back({state.elements(i, j).real(),
                          state.elements(i, j).imag()});
    }
  return {{"basis", kBasisOrder}, {"elements", elements}};
}

json to_json(const XStateView& view) {
  return {{"p11", view.p11}, {"p22", view.p22}, {"p33", view.p33},
          {"p44", view.p44}, {"m14", view.m14}, {"m23", view.m23},
          {"d14", view.d14}, {"d23", view.d23}};
}

json to_json(const ValidationReport& report) {
  return {{"ok", report.ok()},
          {"hermitian_ok", report.hermitian_ok},
          {"trace_ok", report.trace_ok},
          {"psd_ok", report.psd_ok},
          {"hermiticity_residual", report.hermiticity_residual},
          {"trace_residual", report.trace_residual},
          {"min_eigenvalue", report.min_eigenvalue}};
}

json to_json(const MeasurementDirection& dir) {
  return {{"theta", dir.theta}, {"phi", dir.phi}};
}

json to_json(const ChshSettings& settings) {
  return {{"a", to_json(settings.a)},
          {"a_prime", to_json(settings.a_prime)},
          {"b", to_json(settings.b)},
          {"b_prime", to_json(settings.b_prime)}};
}

json to_json(const BellEvaluation& evaluation) {
  json out = {{"restricted_max", evaluation.restricted_max},
              {"horodecki_max", evaluation.horodecki_max},
              {"P", evaluation.p},
              {"Q", evaluation.q},
              {"restricted_settings", to_json(evaluation.restricted_settings)}};
  if (evaluation.brute_force_max.has_value())
    out["brute_force_max"] = *evaluation.brute_force_max;
  else
    out["brute_force_max"] = nullptr;
  return out;
}

json to_json(const ThresholdResult& result) {
  json out = {{"exists", result.exists},
              {"evaluator", evaluator_name(result.evaluator)}};
  if (result.exists) out["x_star"] = result.x_star;
  return out;
}

json to_json(const SweepRecord& record) {
  return {{"x", record.x},
          {"restricted_max", record.restricted_max},
          {"horodecki_max", record.horodecki_max},
          {"violation_restricted", record.violation_restricted},
          {"violation_horodecki", record.violation_horodecki},
          {"p_excited_a", record.p_excited_a},
          {"p_excited_b", record.p_excited_b}};
}

json to_json(const SeriesRecord& record) {
  return {{"t", record.t},
          {"x", record.x},
          {"bell", to_json(record.bell)},
          {"violation_restricted", record.violation_restricted},
          {"violation_horodecki", record.violation_horodecki},
          {"p_excited_a", record.p_excited_a},
          {"p_excited_b", record.p_excited_b}};
}

namespace {

void write_header(std::ostream& out, const char* axis, ColumnSet columns) {
  out << axis;
  if (columns != ColumnSet::Horodecki)
    out << ",restricted_max";
  if (columns != ColumnSet::Restricted)
    out << ",horodecki_max";
  if (columns != ColumnSet::Horodecki)
    out << ",violation_restricted";
  if (columns != ColumnSet::Restricted)
    out << ",violation_horodecki";
  out << ",p_excited\n";
}

void write_row(std::ostream& out, double axis_value, double restricted,
               double horodecki, bool violation_restricted,
               bool violation_horodecki, double p_excited, ColumnSet columns) {
  out << format_number(axis_value);
  if (columns != ColumnSet::Horodecki)
    out << ',' << format_number(restricted);
  if (columns != ColumnSet::Restricted)
    out << ',' << format_number(horodecki);
  if (columns != ColumnSet::Horodecki)
    out << ',' << (violation_restricted ? 1 : 0);
  if (columns != ColumnSet::Restricted)
    out << ',' << (violation_horodecki ? 1 : 0);
  out << ',' << format_number(p_excited) << '\n';
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records,
                     ColumnSet columns) {
  write_header(out, "x", columns);
  for (const auto& rec : records)
    write_row(out, rec.x, rec.restricted_max, rec.horodecki_max,
              rec.violation_restricted, rec.violation_horodecki,
              rec.p_excited_a, columns);
}

void write_series_csv(std::ostream& out,
                      const std::vector<SeriesRecord>& records,
                      ColumnSet columns) {
  write_header(out, "t", columns);
  for (const auto& rec : records)
    write_row(out, rec.t, rec.bell.restricted_max, rec.bell.horodecki_max,
              rec.violation_restricted, rec.violation_horodecki,
              rec.p_excited_a, columns);
}

json sweep_to_json(const std::vector<SweepRecord>& records,
                   ColumnSet columns) {
  json rows = json::array();
  for (const auto& rec : records) {
    json row = to_json(rec);
    if (columns == ColumnSet::Restricted) {
      row.erase("horodecki_max");
      row.erase("violation_horodecki");
    } else if (columns == ColumnSet::Horodecki) {
      row.erase("restricted_max");
      row.erase("violation_restricted");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json series_to_json(const std::vector<SeriesRecord>& records,
                    ColumnSet columns) {
  json rows = json::array();
  for (const auto& rec : records) {
    json row = to_json(rec);
    if (columns == ColumnSet::Restricted) row["bell"].erase("horodecki_max");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace bellsim
