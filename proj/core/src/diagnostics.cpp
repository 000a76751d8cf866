#include "tourcast/diagnostics.hpp"

#include "least_squares.hpp"
#include "tourcast/error.hpp"

#include <cmath>
#include <numeric>

namespace tourcast {

namespace {

constexpr double kAdfCritical5 = -2.86;  // MacKinnon asymptotic, constant only

std::vector<double> autocovariance(std::span<const double> y, std::size_t max_lag) {
    const double n = static_cast<double>(y.size());
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    std::vector<double> gamma(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::size_t t = 0; t + k < y.size(); ++t) {
            s += (y[t] - mean) * (y[t + k] - mean);
        }
        gamma[k] = s / n;
    }
    return gamma;
}

}  // namespace

std::vector<double> acf(const TimeSeries& series, std::size_t max_lag) {
    if (max_lag == 0 || max_lag >= series.size()) {
        throw Error(ErrorCode::LagTooLarge, "acf max_lag must be in [1, " + std::to_string(series.size()) + ")");
    }
    auto gamma = autocovariance(series.values(), max_lag);
    if (gamma[0] == 0.0) {
        throw Error(ErrorCode::ConstantSeries, "autocorrelation of a constant series is undefined");
    }
    const double g0 = gamma[0];
    for (auto& g : gamma) {
        g /= g0;
    }
    gamma[0] = 1.0;
    return gamma;
}

std::vector<double> pacf(const TimeSeries& series, std::size_t max_lag) {
    if (max_lag == 0 || 2 * max_lag >= series.size()) {
        throw Error(ErrorCode::LagTooLarge, "pacf max_lag must be below half the series length");
    }
    const auto rho = acf(series, max_lag);
    std::vector<double> out(max_lag + 1, 0.0);
    out[0] = 1.0;
    out[1] = rho[1];
    // phi holds the AR(k) coefficients of the current recursion step.
    std::vector<double> phi{rho[1]};
    double v = 1.0 - rho[1] * rho[1];
    for (std::size_t k = 2; k <= max_lag; ++k) {
        double num = rho[k];
        for (std::size_t j = 1; j < k; ++j) {
            num -= phi[j - 1] * rho[k - j];
        }
        const double kappa = v > 0.0 ? num / v : 0.0;
        std::vector<double> next(k);
        for (std::size_t j = 1; j < k; ++j) {
            next[j - 1] = phi[j - 1] - kappa * phi[k - j - 1];
        }
        next[k - 1] = kappa;
        phi = std::move(next);
        v *= (1.0 - kappa * kappa);
        out[k] = kappa;
    }
    return out;
}

AdfResult adf_test(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 25) {
        throw Error(ErrorCode::SeriesTooShort, "ADF test needs at least 25 observations");
    }
    const auto y = series.values();
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : y) {
        ss += (v - mean) * (v - mean);
    }
    if (ss == 0.0) {
        throw Error(ErrorCode::ConstantSeries, "ADF test on a constant series");
    }

    const auto k = static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(n - 1))));
    std::vector<double> dy(n - 1);
    for (std::size_t t = 1; t < n; ++t) {
        dy[t - 1] = y[t] - y[t - 1];
    }
    // Regress dy[t] on (1, y[t], dy[t-1], ..., dy[t-k]) for t = k .. n-2.
    const std::size_t rows = dy.size() - k;
    const std::size_t cols = 2 + k;
    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd target(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + k;
        target(r) = dy[t];
        x(r, 0) = 1.0;
        x(r, 1) = y[t];
        for (std::size_t i = 1; i <= k; ++i) {
            x(r, 1 + i) = dy[t - i];
        }
    }
    const auto fit = detail::ols(x, target, true);
    const double s2 = fit.rss / static_cast<double>(rows - cols);
    const double se = std::sqrt(s2 * fit.xtx_inverse(1, 1));

    AdfResult result;
    result.lags = k;
    result.observations = rows;
    result.statistic = fit.coef(1) / se;
    result.critical_value_5pct = kAdfCritical5;
    result.reject_unit_root = result.statistic < kAdfCritical5;
    return result;
}

}  // namespace tourcast
