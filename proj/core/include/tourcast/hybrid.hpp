#pragma once

#include "tourcast/series.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tourcast::hybrid {

/// Training and structure settings for the additive hybrid model
///   y(t) = T(t) + S(t) + A(t) + L(t) + F(t)
/// (trend, Fourier seasonality, autoregressive net, lagged-regressor nets,
/// known-future regressors; event indicators are future regressors with 0/1 values).
struct HybridConfig {
    bool trend = true;
    std::size_t n_changepoints = 10;
    double changepoint_range = 0.8;  // fraction of the training span that may hold changepoints
    double season_period = 12.0;     // in observations
    std::size_t season_terms = 3;    // 0 disables seasonality
    std::size_t ar_lags = 0;
    std::size_t reg_lags = 0;        // lags 1..reg_lags of every lagged regressor
    std::vector<std::size_t> hidden_layers;      // AR net; empty = linear AR
    std::vector<std::size_t> reg_hidden_layers;  // lagged-regressor nets; empty = linear
    double learning_rate = 0.003;
    std::size_t epochs = 500;
    std::size_t batch_size = 32;
    double huber_delta = 0.3;
    double ar_sparsity = 0.0;  // L1 weight on the AR input-layer weights
    double weight_decay = 1e-4;
    std::uint64_t seed = 0;

    /// Yearly seasonality on monthly data, growing trend, 3 target lags through a
    /// [4, 2] ReLU net and 2 lags of one regressor.
    static HybridConfig monthly_visitors();

    void validate() const;
};

struct DenseLayer {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<double> weights;  // row-major outputs x inputs
    std::vector<double> bias;
};

/// Fully connected net with ReLU on hidden layers and a single identity output.
struct FeedForward {
    std::vector<DenseLayer> layers;

    bool empty() const noexcept { return layers.empty(); }
    std::size_t input_size() const noexcept { return layers.empty() ? 0 : layers.front().inputs; }
    bool is_linear() const noexcept { return layers.size() == 1; }

    /// Net of shape inputs -> hidden... -> 1 with all parameters zero.
    static FeedForward zeros(std::size_t inputs, const std::vector<std::size_t>& hidden);

    double forward(std::span<const double> input) const;
};

/// Every trainable scalar of the model. Gradients use the same structure.
struct Parameters {
    double offset = 0.0;
    double base_rate = 0.0;
    std::vector<double> deltas;
    std::vector<double> fourier_a;
    std::vector<double> fourier_b;
    FeedForward ar_weights;
    std::vector<FeedForward> reg_weights;
    std::vector<double> future_weights;

    /// Visits every scalar in a fixed order.
    template <class F>
    void for_each(F&& f) {
        f(offset);
        f(base_rate);
        for (auto& v : deltas) f(v);
        for (auto& v : fourier_a) f(v);
        for (auto& v : fourier_b) f(v);
        visit_net(ar_weights, f);
        for (auto& net : reg_weights) visit_net(net, f);
        for (auto& v : future_weights) f(v);
    }

    std::size_t size() const;
    std::vector<double> flatten() const;
    void assign(std::span<const double> flat);
    /// Same shapes, every entry zero.
    Parameters zeros_like() const;

private:
    template <class F>
    static void visit_net(FeedForward& net, F& f) {
        for (auto& layer : net.layers) {
            for (auto& v : layer.weights) f(v);
            for (auto& v : layer.bias) f(v);
        }
    }
};

/// Affine map onto [0, 1] fitted on the training slice.
struct NormStats {
    double offset = 0.0;
    double range = 1.0;

    double to_unit(double v) const { return (v - offset) / range; }
    double from_unit(double u) const { return u * range + offset; }
    static NormStats fit(std::span<const double> values);
};

struct HybridModel {
    bool trend_enabled = true;
    double season_period = 12.0;
    std::size_t ar_lags = 0;
    std::size_t reg_lags = 0;
    double huber_delta = 0.3;
    std::vector<double> changepoint_times;  // observation index units
    double time_scale = 1.0;                // trend time = t / time_scale
    Parameters params;
    NormStats target_stats;
    std::vector<NormStats> regressor_stats;
    std::vector<NormStats> future_stats;
    std::vector<std::string> regressor_names;
    std::vector<double> loss_history;  // mean training loss after each epoch

    bool seasonality_enabled() const noexcept { return !params.fourier_a.empty(); }
    bool ar_enabled() const noexcept { return !params.ar_weights.empty(); }
    std::size_t regressor_count() const noexcept { return params.reg_weights.size(); }
    std::size_t future_count() const noexcept { return params.future_weights.size(); }
    std::size_t max_lag() const noexcept;
};

/// One training row in normalized units. Lag vectors are most-recent-first:
/// entry i holds the value i+1 steps back.
struct Sample {
    double t = 0.0;
    std::vector<double> ar_lags;
    std::vector<std::vector<double>> reg_lags;
    std::vector<double> future;
    double target = 0.0;
};

// Component evaluations, all in normalized target units.
double trend_eval(const HybridModel& model, double t);
double seasonality_eval(const HybridModel& model, double t);
double ar_forward(const HybridModel& model, std::span<const double> lags);
double regressor_forward(const HybridModel& model, std::size_t regressor, std::span<const double> lags);
double future_forward(const HybridModel& model, std::span<const double> values);

/// Sum of the enabled components for a normalized sample, normalized units.
double forward_normalized(const HybridModel& model, const Sample& sample);

/// Full prediction from raw inputs (target units for `lags`, regressor units for
/// `reg_lags`, raw `future_vals`), returned in target units.
double model_forward(const HybridModel& model, double t, std::span<const double> lags,
                     const std::vector<std::vector<double>>& reg_lags, std::span<const double> future_vals);

double huber_loss(double residual, double delta);
double huber_derivative(double residual, double delta);

/// Mean Huber loss of the batch in normalized units.
double batch_loss(const HybridModel& model, std::span<const Sample> batch);

/// Analytic gradient of `batch_loss` with respect to every parameter.
Parameters gradients(const HybridModel& model, std::span<const Sample> batch);

/// Normalized training rows for indices [first, series.size()).
std::vector<Sample> build_samples(const HybridModel& model, const TimeSeries& series,
                                  std::span<const TimeSeries> lagged_regressors,
                                  std::span<const TimeSeries> future_regressors, std::size_t first);

HybridModel fit(const HybridConfig& config, const TimeSeries& series,
                std::span<const TimeSeries> lagged_regressors = {},
                std::span<const TimeSeries> future_regressors = {});

/// One-step predictions for the last `n_test` points of `series` using observed lags.
std::vector<double> forecast_rolling(const HybridModel& model, const TimeSeries& series,
                                     std::span<const TimeSeries> lagged_regressors,
                                     std::span<const TimeSeries> future_regressors, std::size_t n_test);

struct ComponentReport {
    YearMonth start;                // month of the first row
    std::vector<double> actual;     // target units
    std::vector<double> trend;      // includes the normalization offset
    std::vector<double> seasonality;
    std::vector<double> autoregression;
    std::vector<double> lagged_regression;  // summed over regressors
    std::vector<double> future_regression;
    std::vector<double> fitted;
    std::vector<double> ar_relevance;                // per lag, most recent first
    std::vector<std::vector<double>> reg_relevance;  // per regressor, per lag
    std::vector<std::string> regressor_names;
};

/// Decomposition over every row of `series` that has a full set of lags.
ComponentReport components(const HybridModel& model, const TimeSeries& series,
                           std::span<const TimeSeries> lagged_regressors = {},
                           std::span<const TimeSeries> future_regressors = {});

}  // namespace tourcast::hybrid
