#pragma once

#include "tourcast/eval.hpp"
#include "tourcast/series.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace tourcast::io {

/// Reads a `month,value` file. Months are YYYY-MM, strictly consecutive; values are
/// non-negative reals, and the Google Trends cell "<1" reads as 0.
TimeSeries read_series_csv(const std::filesystem::path& path, std::string name = {});
TimeSeries parse_series_csv(std::istream& in, std::string name, const std::string& source = "<stream>");

void write_series_csv(const TimeSeries& series, const std::filesystem::path& path);
void write_series_csv(const TimeSeries& series, std::ostream& out);

/// Shortest text that parses back to exactly `value`.
std::string format_exact(double value);
/// Fixed-point text with `decimals` digits.
std::string format_fixed(double value, int decimals);

/// month,actual,predicted
void write_forecast_csv(const eval::EvalReport& report, const std::filesystem::path& path);

struct ForecastRow {
    YearMonth month;
    double actual = 0.0;
    double predicted = 0.0;
};
std::vector<ForecastRow> read_forecast_csv(const std::filesystem::path& path);

/// model,rmse with two decimals, in report order.
void write_metrics_csv(const std::vector<eval::EvalReport>& reports, const std::filesystem::path& path);

}  // namespace tourcast::io
