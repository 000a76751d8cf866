#include "tourcast/csv.hpp"

#include "tourcast/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tourcast::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string where(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line);
}

double parse_number(std::string_view text, const std::string& location) {
    text = trim(text);
    if (!text.empty() && text.front() == '"' && text.back() == '"' && text.size() >= 2) {
        text = text.substr(1, text.size() - 2);
    }
    if (text == "<1") {
        return 0.0;
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw Error(ErrorCode::ParseError, location + ": invalid number '" + std::string(text) + "'");
    }
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    return out;
}

}  // namespace

std::string format_exact(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

TimeSeries parse_series_csv(std::istream& in, std::string name, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<double> values;
    YearMonth start{};
    YearMonth prev{};
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (line_no == 1 && view.size() >= 3 && static_cast<unsigned char>(view[0]) == 0xEF) {
            view.remove_prefix(3);  // UTF-8 BOM
        }
        if (view.empty()) {
            continue;
        }
        const std::string location = where(source, line_no);
        if (!header_seen) {
            if (view != "month,value") {
                throw Error(ErrorCode::ParseError, location + ": expected header 'month,value'");
            }
            header_seen = true;
            continue;
        }
        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
            throw Error(ErrorCode::ParseError, location + ": expected two columns");
        }
        YearMonth month;
        try {
            month = YearMonth::parse(trim(view.substr(0, comma)));
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, location + ": " + e.what());
        }
        const double value = parse_number(view.substr(comma + 1), location);
        if (!(value >= 0.0) || !std::isfinite(value)) {
            throw Error(ErrorCode::ParseError, location + ": value must be a non-negative finite number");
        }
        if (!values.empty()) {
            if (month <= prev) {
                throw Error(ErrorCode::NonMonotonic, location + ": month " + month.to_string() + " does not follow " +
                                                         prev.to_string());
            }
            if (month != prev.plus(1)) {
                throw Error(ErrorCode::GapError, location + ": missing month " + prev.plus(1).to_string());
            }
        } else {
            start = month;
        }
        prev = month;
        values.push_back(value);
    }
    if (!header_seen) {
        throw Error(ErrorCode::ParseError, source + ": missing header 'month,value'");
    }
    if (values.empty()) {
        throw Error(ErrorCode::ParseError, source + ": no data rows");
    }
    return TimeSeries(start, std::move(values), std::move(name));
}

TimeSeries read_series_csv(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    if (name.empty()) {
        name = path.stem().string();
    }
    return parse_series_csv(in, std::move(name), path.string());
}

void write_series_csv(const TimeSeries& series, std::ostream& out) {
    out << "month,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series.month_at(i).to_string() << ',' << format_exact(series[i]) << '\n';
    }
}

void write_series_csv(const TimeSeries& series, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_series_csv(series, out);
}

void write_forecast_csv(const eval::EvalReport& report, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "month,actual,predicted\n";
    for (std::size_t i = 0; i < report.actuals.size(); ++i) {
        out << report.first_month.plus(static_cast<long>(i)).to_string() << ',' << format_exact(report.actuals[i])
            << ',' << format_exact(report.predictions[i]) << '\n';
    }
}

std::vector<ForecastRow> read_forecast_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::string line;
    std::vector<ForecastRow> rows;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = trim(line);
        if (line_no == 1 || view.empty()) {
            continue;
        }
        const auto a = view.find(',');
        const auto b = a == std::string_view::npos ? a : view.find(',', a + 1);
        if (b == std::string_view::npos) {
            throw Error(ErrorCode::ParseError, where(path.string(), line_no) + ": expected three columns");
        }
        const std::string location = where(path.string(), line_no);
        rows.push_back(ForecastRow{YearMonth::parse(view.substr(0, a)), parse_number(view.substr(a + 1, b - a - 1), location),
                                   parse_number(view.substr(b + 1), location)});
    }
    return rows;
}

void write_metrics_csv(const std::vector<eval::EvalReport>& reports, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "model,rmse\n";
    for (const auto& r : reports) {
        out << r.model_label << ',' << format_fixed(r.rmse, 2) << '\n';
    }
}

}  // namespace tourcast::io
