#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tourcast {

/// Calendar month stamp. Months are 1-based.
struct YearMonth {
    int year = 2000;
    int month = 1;

    auto operator<=>(const YearMonth&) const = default;

    /// Month obtained by moving `months` steps forward (negative moves back).
    YearMonth plus(long months) const;
    /// Signed number of months from `other` to this stamp.
    long months_since(const YearMonth& other) const;

    std::string to_string() const;  // YYYY-MM
    static YearMonth parse(std::string_view text);  // throws ParseError
};

/// Contiguous, gap-free monthly series. Immutable after construction.
class TimeSeries {
public:
    /// Throws EmptyInput when `values` is empty and NonFiniteValue on NaN/inf.
    TimeSeries(YearMonth start, std::vector<double> values, std::string name = {});

    YearMonth start() const noexcept { return start_; }
    YearMonth end() const noexcept { return start_.plus(static_cast<long>(values_.size()) - 1); }
    YearMonth month_at(std::size_t i) const noexcept { return start_.plus(static_cast<long>(i)); }
    std::span<const double> values() const noexcept { return values_; }
    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double back() const noexcept { return values_.back(); }

    /// Sub-series [first, first + count).
    TimeSeries slice(std::size_t first, std::size_t count) const;
    /// First `count` observations.
    TimeSeries head(std::size_t count) const { return slice(0, count); }
    TimeSeries renamed(std::string name) const;

    bool same_range(const TimeSeries& other) const noexcept {
        return start_ == other.start_ && size() == other.size();
    }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    YearMonth start_;
    std::vector<double> values_;
    std::string name_;
};

/// Lag-vector framing of a series for one-step regression.
/// Row i holds (y[i], ..., y[i+p-1]) (oldest on the left) and targets[i] = y[i+p].
struct SupervisedFrame {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;

    std::size_t rows() const noexcept { return targets.size(); }
    std::size_t cols() const noexcept { return inputs.empty() ? 0 : inputs.front().size(); }
};

/// (1-L)^d (1-L^M)^D y. Seasonal passes are applied first.
TimeSeries difference(const TimeSeries& series, int d, int seasonal_d, int period);

/// Inverse of `difference` given the d + D*M observations it dropped.
TimeSeries undifference(const TimeSeries& diffed, std::span<const double> pivots, int d,
                        int seasonal_d, int period);

/// Coefficients of (1-L)^d (1-L^M)^D as a polynomial in L, index = lag, entry 0 is 1.
std::vector<double> differencing_polynomial(int d, int seasonal_d, int period);

/// Affine map sending min -> lo and max -> hi.
TimeSeries scale_to_range(const TimeSeries& series, double lo, double hi);

SupervisedFrame make_supervised(const TimeSeries& series, std::size_t p);
SupervisedFrame make_supervised(std::span<const double> values, std::size_t p);

/// Train slice and the trailing `n_test` observations.
std::pair<TimeSeries, TimeSeries> split_train_test(const TimeSeries& series, std::size_t n_test);

}  // namespace tourcast
