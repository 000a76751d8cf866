#pragma once

#include "tourcast/arima.hpp"
#include "tourcast/hybrid.hpp"
#include "tourcast/series.hpp"
#include "tourcast/svr.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tourcast::eval {

double rmse(std::span<const double> actual, std::span<const double> predicted);

/// One-step forecasts over a test window and their error.
struct EvalReport {
    std::string model_label;
    YearMonth first_month;  // month of the first test step
    std::vector<double> actuals;
    std::vector<double> predictions;
    std::vector<double> per_step_error;  // actual - predicted
    double rmse = 0.0;
    std::size_t fit_count = 0;
    std::uint64_t split_fingerprint = 0;

    double recompute_rmse() const { return eval::rmse(actuals, predictions); }
};

struct ArimaSpec {
    std::string label = "arima";
    arima::ArimaOrder order{3, 1, 0};
    arima::SeasonalOrder seasonal{};
    bool use_exog = false;
    bool refit = true;  // expanding-window re-estimation before every step
};

struct SvrSpec {
    std::string label = "svr";
    svr::SvrConfig config{};
    std::size_t lags = 3;
    bool refit = false;
};

struct HybridSpec {
    std::string label = "hybrid";
    hybrid::HybridConfig config = hybrid::HybridConfig::monthly_visitors();
    bool use_exog = true;  // exogenous series enter as lagged regressors
    bool refit = false;
};

using ModelSpec = std::variant<ArimaSpec, SvrSpec, HybridSpec>;

const std::string& label_of(const ModelSpec& spec);

/// Hash of the exact bytes (and start months) of a train/test split.
std::uint64_t split_fingerprint(const TimeSeries& train, const TimeSeries& test);

/// Expanding-window one-step evaluation over the last `n_test` months. Exogenous
/// values for each test month are the observed ones.
EvalReport rolling_eval_arima(const TimeSeries& series, const arima::ArimaOrder& order,
                              const arima::SeasonalOrder& seasonal, std::span<const TimeSeries> exog,
                              std::size_t n_test, bool refit, const std::string& label = "arima");

EvalReport evaluate(const ModelSpec& spec, const TimeSeries& series, std::span<const TimeSeries> exog,
                    std::size_t n_test);

/// ARIMA(3,1,0); SARIMA(3,1,0)(1,1,0,12); the same with exogenous input;
/// Gaussian SVR (c = 10, epsilon = 0.05, 3 lags); the hybrid preset.
std::vector<ModelSpec> default_suite(std::uint64_t seed = 0);

/// Runs every spec on the same split; rows sorted by ascending RMSE.
std::vector<EvalReport> compare(const TimeSeries& series, std::span<const TimeSeries> exog, std::size_t n_test,
                                const std::vector<ModelSpec>& suite);

}  // namespace tourcast::eval
