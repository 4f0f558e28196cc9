#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellsim/analysis.hpp"

namespace bellsim {

/// %.12g with the '.' decimal separator, locale-independent.
std::string format_number(double value);

nlohmann::json to_json(const TwoQubitState& state);
nlohmann::json to_json(const XStateView& view);
nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const MeasurementDirection& dir);
nlohmann::json to_json(const ChshSettings& settings);
nlohmann::json to_json(const BellEvaluation& evaluation);
nlohmann::json to_json(const ThresholdResult& result);
nlohmann::json to_json(const SweepRecord& record);
nlohmann::json to_json(const SeriesRecord& record);

/// Column selection for the curve/series tables. Both = the full
/// (restricted, horodecki) pair side by side.
enum class ColumnSet { Restricted, Horodecki, Both };

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records,
                     ColumnSet columns = ColumnSet::Both);
void write_series_csv(std::ostream& out,
                      const std::vector<SeriesRecord>& records,
                      ColumnSet columns = ColumnSet::Both);

nlohmann::json sweep_to_json(const std::vector<SweepRecord>& records,
                             ColumnSet columns = ColumnSet::Both);
nlohmann::json series_to_json(const std::vector<SeriesRecord>& records,
                              ColumnSet columns = ColumnSet::Both);

}  // namespace bellsim
