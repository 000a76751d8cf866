#pragma once

#include "tourcast/nelder_mead.hpp"
#include "tourcast/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tourcast::arima {

struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;
};

struct SeasonalOrder {
    int P = 0;
    int D = 0;
    int Q = 0;
    int M = 0;

    bool active() const noexcept { return P > 0 || D > 0 || Q > 0; }
};

/// Fitted (S)ARIMA(X) model in regression-with-ARIMA-errors form:
///   w_t = D(L) y_t,  u_t = w_t - beta' D(L) x_t,
///   phi(L) Phi(L^M) u_t = intercept + theta(L) Theta(L^M) e_t
/// where D(L) = (1-L)^d (1-L^M)^D.
struct ArimaModel {
    ArimaOrder order;
    SeasonalOrder seasonal;
    std::vector<double> phi;
    std::vector<double> theta;
    std::vector<double> seasonal_phi;
    std::vector<double> seasonal_theta;
    std::vector<double> exog_beta;
    double intercept = 0.0;
    double sigma2 = 0.0;
    std::vector<double> pivots;

    // Fit diagnostics; left at defaults for hand-built models.
    double css = 0.0;
    double initial_css = 0.0;  // CSS at the Hannan-Rissanen starting point
    std::size_t effective_n = 0;
    std::size_t iterations = 0;
    bool converged = true;
    bool near_unit_root = false;  // some AR root has modulus <= 1.02

    /// Throws InvalidOrder when coefficient lengths disagree with the orders.
    void validate() const;

    std::size_t dropped_by_differencing() const;
    /// Combined AR coefficients, entry k-1 multiplies u_{t-k}.
    std::vector<double> ar_lags() const;
    /// Combined MA coefficients, entry k-1 multiplies e_{t-k}.
    std::vector<double> ma_lags() const;
};

struct FitOptions {
    NelderMeadOptions optimizer{};
    bool throw_on_nonconvergence = true;
};

/// Coefficients of (1 - sum a_i L^i)(1 - sum b_j L^{jM}) written as an AR recursion:
/// entry k-1 is the weight on y_{t-k}.
std::vector<double> expand_lag_polynomial(std::span<const double> nonseasonal,
                                          std::span<const double> seasonal, int period);

/// Conditional-sum-of-squares estimation.
ArimaModel fit(const TimeSeries& series, const ArimaOrder& order, const SeasonalOrder& seasonal = {},
               std::span<const TimeSeries> exog = {}, const FitOptions& options = {});

/// Conditional mean of the observation following `history`, on the original scale.
/// `exog_history` must be aligned with `history`; `exog_next` holds one value per regressor.
double forecast_one_step(const ArimaModel& model, const TimeSeries& history,
                         std::span<const TimeSeries> exog_history = {},
                         std::span<const double> exog_next = {});

/// Recursive h-step path; row i of `exog_future` holds the regressors for step i+1.
std::vector<double> forecast_path(const ArimaModel& model, const TimeSeries& history, std::size_t h,
                                  std::span<const TimeSeries> exog_history = {},
                                  const std::vector<std::vector<double>>& exog_future = {});

/// Innovations recovered by filtering `series` through the model.
TimeSeries residuals(const ArimaModel& model, const TimeSeries& series,
                     std::span<const TimeSeries> exog = {});

}  // namespace tourcast::arima
