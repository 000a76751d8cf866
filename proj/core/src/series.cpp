#include "tourcast/series.hpp"

#include "tourcast/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace tourcast {

namespace {

std::vector<double> lag_difference(std::span<const double> x, std::size_t lag) {
    std::vector<double> out;
    if (x.size() <= lag) {
        return out;
    }
    out.reserve(x.size() - lag);
    for (std::size_t i = lag; i < x.size(); ++i) {
        out.push_back(x[i] - x[i - lag]);
    }
    return out;
}

// Seasonal passes first, then regular ones; undifference walks this list backwards.
std::vector<std::size_t> pass_lags(int d, int seasonal_d, int period) {
    if (d < 0 || seasonal_d < 0) {
        throw Error(ErrorCode::InvalidArgument, "differencing degrees must be non-negative");
    }
    if (seasonal_d > 0 && period < 1) {
        throw Error(ErrorCode::InvalidArgument, "seasonal period must be positive");
    }
    std::vector<std::size_t> lags(static_cast<std::size_t>(seasonal_d),
                                  static_cast<std::size_t>(std::max(period, 1)));
    lags.insert(lags.end(), static_cast<std::size_t>(d), 1);
    return lags;
}

}  // namespace

YearMonth YearMonth::plus(long months) const {
    const long index = static_cast<long>(year) * 12 + (month - 1) + months;
    const long y = index >= 0 ? index / 12 : -((-index + 11) / 12);
    return YearMonth{static_cast<int>(y), static_cast<int>(index - y * 12) + 1};
}

long YearMonth::months_since(const YearMonth& other) const {
    return (static_cast<long>(year) - other.year) * 12 + (month - other.month);
}

std::string YearMonth::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

YearMonth YearMonth::parse(std::string_view text) {
    const auto bad = [&] {
        return Error(ErrorCode::ParseError, "invalid month '" + std::string(text) + "', expected YYYY-MM");
    };
    if (text.size() != 7 || text[4] != '-') {
        throw bad();
    }
    int y = 0;
    int m = 0;
    const auto ry = std::from_chars(text.data(), text.data() + 4, y);
    const auto rm = std::from_chars(text.data() + 5, text.data() + 7, m);
    if (ry.ec != std::errc{} || ry.ptr != text.data() + 4 || rm.ec != std::errc{} ||
        rm.ptr != text.data() + 7 || m < 1 || m > 12) {
        throw bad();
    }
    return YearMonth{y, m};
}

TimeSeries::TimeSeries(YearMonth start, std::vector<double> values, std::string name)
    : start_(start), values_(std::move(values)), name_(std::move(name)) {
    if (values_.empty()) {
        throw Error(ErrorCode::EmptyInput, "time series needs at least one observation");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(ErrorCode::NonFiniteValue,
                        "non-finite value at " + start_.plus(static_cast<long>(i)).to_string());
        }
    }
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
    if (count == 0 || first + count > values_.size()) {
        throw Error(ErrorCode::InvalidArgument, "slice out of range");
    }
    const auto begin = values_.begin() + static_cast<std::ptrdiff_t>(first);
    return TimeSeries(month_at(first), std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(count)),
                      name_);
}

TimeSeries TimeSeries::renamed(std::string name) const {
    TimeSeries copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

TimeSeries difference(const TimeSeries& series, int d, int seasonal_d, int period) {
    const auto lags = pass_lags(d, seasonal_d, period);
    std::size_t dropped = 0;
    for (auto lag : lags) {
        dropped += lag;
    }
    if (series.size() <= dropped) {
        throw Error(ErrorCode::SeriesTooShort, "differencing drops " + std::to_string(dropped) +
                                                   " observations from a series of length " +
                                                   std::to_string(series.size()));
    }
    std::vector<double> x(series.values().begin(), series.values().end());
    for (auto lag : lags) {
        x = lag_difference(x, lag);
    }
    return TimeSeries(series.start().plus(static_cast<long>(dropped)), std::move(x), series.name());
}

TimeSeries undifference(const TimeSeries& diffed, std::span<const double> pivots, int d,
                        int seasonal_d, int period) {
    const auto lags = pass_lags(d, seasonal_d, period);
    std::size_t dropped = 0;
    for (auto lag : lags) {
        dropped += lag;
    }
    if (pivots.size() != dropped) {
        throw Error(ErrorCode::PivotMismatch, "expected " + std::to_string(dropped) + " pivots, got " +
                                                  std::to_string(pivots.size()));
    }
    // stages[k] = pivots after the first k passes; they seed each integration step.
    std::vector<std::vector<double>> stages{std::vector<double>(pivots.begin(), pivots.end())};
    for (auto lag : lags) {
        stages.push_back(lag_difference(stages.back(), lag));
    }
    std::vector<double> x(diffed.values().begin(), diffed.values().end());
    for (std::size_t k = lags.size(); k-- > 0;) {
        const std::size_t lag = lags[k];
        std::vector<double> prev(stages[k].begin(), stages[k].begin() + static_cast<std::ptrdiff_t>(lag));
        prev.reserve(lag + x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            prev.push_back(prev[i] + x[i]);
        }
        x = std::move(prev);
    }
    return TimeSeries(diffed.start().plus(-static_cast<long>(dropped)), std::move(x), diffed.name());
}

std::vector<double> differencing_polynomial(int d, int seasonal_d, int period) {
    std::vector<double> poly{1.0};
    for (auto lag : pass_lags(d, seasonal_d, period)) {
        std::vector<double> next(poly.size() + lag, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + lag] -= poly[i];
        }
        poly = std::move(next);
    }
    return poly;
}

TimeSeries scale_to_range(const TimeSeries& series, double lo, double hi) {
    if (!(lo < hi)) {
        throw Error(ErrorCode::InvalidArgument, "scale_to_range needs lo < hi");
    }
    const auto [mn, mx] = std::minmax_element(series.values().begin(), series.values().end());
    const double min = *mn;
    const double max = *mx;
    if (min == max) {
        throw Error(ErrorCode::ConstantSeries, "cannot rescale a constant series");
    }
    const double factor = (hi - lo) / (max - min);
    std::vector<double> out;
    out.reserve(series.size());
    for (double v : series.values()) {
        out.push_back(v == max ? hi : lo + (v - min) * factor);
    }
    return TimeSeries(series.start(), std::move(out), series.name());
}

SupervisedFrame make_supervised(std::span<const double> values, std::size_t p) {
    if (p == 0) {
        throw Error(ErrorCode::InvalidArgument, "lag count must be positive");
    }
    if (values.size() <= p) {
        throw Error(ErrorCode::SeriesTooShort, "need more than " + std::to_string(p) +
                                                   " observations, got " + std::to_string(values.size()));
    }
    SupervisedFrame frame;
    const std::size_t rows = values.size() - p;
    frame.inputs.reserve(rows);
    frame.targets.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        frame.inputs.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(i),
                                  values.begin() + static_cast<std::ptrdiff_t>(i + p));
        frame.targets.push_back(values[i + p]);
    }
    return frame;
}

SupervisedFrame make_supervised(const TimeSeries& series, std::size_t p) {
    return make_supervised(series.values(), p);
}

std::pair<TimeSeries, TimeSeries> split_train_test(const TimeSeries& series, std::size_t n_test) {
    if (n_test == 0) {
        throw Error(ErrorCode::InvalidArgument, "n_test must be positive");
    }
    if (n_test >= series.size()) {
        throw Error(ErrorCode::SplitTooLarge, "n_test = " + std::to_string(n_test) +
                                                  " leaves no training data in a series of length " +
                                                  std::to_string(series.size()));
    }
    const std::size_t n_train = series.size() - n_test;
    return {series.slice(0, n_train), series.slice(n_train, n_test)};
}

}  // namespace tourcast
