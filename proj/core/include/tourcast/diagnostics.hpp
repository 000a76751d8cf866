#pragma once

#include "tourcast/series.hpp"

#include <cstddef>
#include <vector>

namespace tourcast {

/// Sample autocorrelations for lags 0..max_lag, biased (divide-by-n) estimator.
std::vector<double> acf(const TimeSeries& series, std::size_t max_lag);

/// Partial autocorrelations for lags 0..max_lag by Durbin-Levinson on the acf.
/// Entry 0 is 1 so that indices line up with `acf`.
std::vector<double> pacf(const TimeSeries& series, std::size_t max_lag);

struct AdfResult {
    double statistic = 0.0;
    std::size_t lags = 0;
    std::size_t observations = 0;  // rows in the test regression
    double critical_value_5pct = -2.86;
    bool reject_unit_root = false;
};

/// Constant-only augmented Dickey-Fuller test with k = floor(cbrt(n - 1)) lagged differences.
AdfResult adf_test(const TimeSeries& series);

}  // namespace tourcast
