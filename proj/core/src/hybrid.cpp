#include "tourcast/hybrid.hpp"

#include "tourcast/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace tourcast::hybrid {

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Activations kept for the backward pass.
struct NetCache {
    std::vector<std::vector<double>> activations;  // [0] = input, [l] = output of layer l
    std::vector<std::vector<double>> pre;          // pre-activations per layer
};

double forward_cached(const FeedForward& net, std::span<const double> input, NetCache& cache) {
    cache.activations.assign(1, std::vector<double>(input.begin(), input.end()));
    cache.pre.clear();
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const auto& layer = net.layers[l];
        const auto& in = cache.activations.back();
        std::vector<double> z(layer.outputs);
        for (std::size_t o = 0; o < layer.outputs; ++o) {
            double s = layer.bias[o];
            for (std::size_t i = 0; i < layer.inputs; ++i) {
                s += layer.weights[o * layer.inputs + i] * in[i];
            }
            z[o] = s;
        }
        std::vector<double> a = z;
        if (l + 1 < net.layers.size()) {
            for (auto& v : a) v = std::max(v, 0.0);
        }
        cache.pre.push_back(std::move(z));
        cache.activations.push_back(std::move(a));
    }
    return cache.activations.back().front();
}

/// Accumulates d(out)/d(params) * upstream into `grad`; optionally returns d(out)/d(input) * upstream.
void backward(const FeedForward& net, const NetCache& cache, double upstream, FeedForward& grad,
              std::vector<double>* input_grad) {
    std::vector<double> delta{upstream};
    for (std::size_t l = net.layers.size(); l-- > 0;) {
        const auto& layer = net.layers[l];
        auto& g = grad.layers[l];
        const auto& in = cache.activations[l];
        for (std::size_t o = 0; o < layer.outputs; ++o) {
            g.bias[o] += delta[o];
            for (std::size_t i = 0; i < layer.inputs; ++i) {
                g.weights[o * layer.inputs + i] += delta[o] * in[i];
            }
        }
        if (l == 0 && input_grad == nullptr) {
            break;
        }
        std::vector<double> prev(layer.inputs, 0.0);
        for (std::size_t o = 0; o < layer.outputs; ++o) {
            for (std::size_t i = 0; i < layer.inputs; ++i) {
                prev[i] += layer.weights[o * layer.inputs + i] * delta[o];
            }
        }
        if (l > 0) {
            const auto& z = cache.pre[l - 1];
            for (std::size_t i = 0; i < prev.size(); ++i) {
                if (z[i] <= 0.0) prev[i] = 0.0;
            }
        } else {
            *input_grad = std::move(prev);
            break;
        }
        delta = std::move(prev);
    }
}

void glorot_init(FeedForward& net, std::mt19937_64& rng) {
    for (auto& layer : net.layers) {
        const double bound = std::sqrt(6.0 / static_cast<double>(layer.inputs + layer.outputs));
        for (auto& w : layer.weights) w = (2.0 * uniform01(rng) - 1.0) * bound;
    }
}

double trend_scaled_time(const HybridModel& model, double t) { return t / model.time_scale; }

void check_lag_input(std::size_t expected, std::size_t got, const char* what) {
    if (got != expected) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " expects " + std::to_string(expected) +
                                                      " lags, got " + std::to_string(got));
    }
}

void check_ranges(const TimeSeries& series, std::span<const TimeSeries> regressors) {
    for (const auto& r : regressors) {
        if (!r.same_range(series)) {
            throw Error(ErrorCode::MisalignedRegressor,
                        "regressor '" + r.name() + "' spans " + r.start().to_string() + ".." + r.end().to_string() +
                            " but the target spans " + series.start().to_string() + ".." + series.end().to_string());
        }
    }
}

}  // namespace

HybridConfig HybridConfig::monthly_visitors() {
    HybridConfig c;
    c.trend = true;
    c.season_period = 12.0;
    c.season_terms = 3;
    c.ar_lags = 3;
    c.reg_lags = 2;
    c.hidden_layers = {4, 2};
    c.learning_rate = 0.003;
    return c;
}

void HybridConfig::validate() const {
    if (!(learning_rate > 0.0) || !(huber_delta > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "learning_rate and huber_delta must be positive");
    }
    if (season_terms > 0 && !(season_period > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "season_period must be positive");
    }
    if (batch_size == 0) {
        throw Error(ErrorCode::InvalidArgument, "batch_size must be positive");
    }
    if (changepoint_range <= 0.0 || changepoint_range > 1.0) {
        throw Error(ErrorCode::InvalidArgument, "changepoint_range must lie in (0, 1]");
    }
    for (auto w : hidden_layers) {
        if (w == 0) throw Error(ErrorCode::InvalidArgument, "hidden layer widths must be positive");
    }
    for (auto w : reg_hidden_layers) {
        if (w == 0) throw Error(ErrorCode::InvalidArgument, "hidden layer widths must be positive");
    }
    if (ar_sparsity < 0.0 || weight_decay < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "penalties must be non-negative");
    }
}

FeedForward FeedForward::zeros(std::size_t inputs, const std::vector<std::size_t>& hidden) {
    FeedForward net;
    std::size_t in = inputs;
    for (std::size_t l = 0; l <= hidden.size(); ++l) {
        const std::size_t out = l < hidden.size() ? hidden[l] : 1;
        net.layers.push_back(DenseLayer{in, out, std::vector<double>(in * out, 0.0), std::vector<double>(out, 0.0)});
        in = out;
    }
    return net;
}

double FeedForward::forward(std::span<const double> input) const {
    if (layers.empty()) {
        return 0.0;
    }
    NetCache cache;
    return forward_cached(*this, input, cache);
}

std::size_t Parameters::size() const {
    std::size_t n = 0;
    Parameters copy = *this;
    copy.for_each([&](double&) { ++n; });
    return n;
}

std::vector<double> Parameters::flatten() const {
    std::vector<double> out;
    Parameters copy = *this;
    copy.for_each([&](double& v) { out.push_back(v); });
    return out;
}

void Parameters::assign(std::span<const double> flat) {
    std::size_t i = 0;
    for_each([&](double& v) { v = flat[i++]; });
}

Parameters Parameters::zeros_like() const {
    Parameters copy = *this;
    copy.for_each([](double& v) { v = 0.0; });
    return copy;
}

NormStats NormStats::fit(std::span<const double> values) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    NormStats s;
    s.offset = *mn;
    s.range = *mx > *mn ? *mx - *mn : 1.0;
    return s;
}

std::size_t HybridModel::max_lag() const noexcept {
    return std::max(ar_enabled() ? ar_lags : 0, regressor_count() > 0 ? reg_lags : 0);
}

double trend_eval(const HybridModel& model, double t) {
    if (!model.trend_enabled) {
        return 0.0;
    }
    const double tau = trend_scaled_time(model, t);
    const auto& p = model.params;
    double rate = p.base_rate;
    double correction = 0.0;
    for (std::size_t j = 0; j < model.changepoint_times.size(); ++j) {
        const double tau_j = trend_scaled_time(model, model.changepoint_times[j]);
        if (tau_j <= tau) {
            rate += p.deltas[j];
            correction += p.deltas[j] * tau_j;
        }
    }
    return p.offset + rate * tau - correction;
}

double seasonality_eval(const HybridModel& model, double t) {
    if (!model.seasonality_enabled()) {
        throw Error(ErrorCode::SeasonalityDisabled, "model has no seasonal component");
    }
    const double l = model.season_period;
    double phase = std::fmod(t, l);
    if (phase < 0.0) phase += l;
    const auto& p = model.params;
    double s = 0.0;
    for (std::size_t j = 0; j < p.fourier_a.size(); ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j + 1) * phase / l;
        s += p.fourier_a[j] * std::cos(angle) + p.fourier_b[j] * std::sin(angle);
    }
    return s;
}

double ar_forward(const HybridModel& model, std::span<const double> lags) {
    if (!model.ar_enabled()) {
        check_lag_input(0, lags.size(), "disabled AR block");
        return 0.0;
    }
    check_lag_input(model.ar_lags, lags.size(), "AR block");
    return model.params.ar_weights.forward(lags);
}

double regressor_forward(const HybridModel& model, std::size_t regressor, std::span<const double> lags) {
    if (regressor >= model.regressor_count()) {
        throw Error(ErrorCode::MissingComponentInput, "no lagged regressor #" + std::to_string(regressor));
    }
    check_lag_input(model.reg_lags, lags.size(), "lagged regressor");
    return model.params.reg_weights[regressor].forward(lags);
}

double future_forward(const HybridModel& model, std::span<const double> values) {
    if (values.size() != model.future_count()) {
        throw Error(ErrorCode::MissingComponentInput, "expected " + std::to_string(model.future_count()) +
                                                          " known-future values, got " + std::to_string(values.size()));
    }
    double s = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) s += model.params.future_weights[k] * values[k];
    return s;
}

double forward_normalized(const HybridModel& model, const Sample& sample) {
    if (model.ar_enabled() && sample.ar_lags.empty()) {
        throw Error(ErrorCode::MissingComponentInput, "AR block enabled but no lags supplied");
    }
    if (sample.reg_lags.size() != model.regressor_count()) {
        throw Error(ErrorCode::MissingComponentInput, "expected lags for " + std::to_string(model.regressor_count()) +
                                                          " regressors, got " + std::to_string(sample.reg_lags.size()));
    }
    double y = trend_eval(model, sample.t);
    if (model.seasonality_enabled()) y += seasonality_eval(model, sample.t);
    y += ar_forward(model, sample.ar_lags);
    for (std::size_t r = 0; r < model.regressor_count(); ++r) y += regressor_forward(model, r, sample.reg_lags[r]);
    y += future_forward(model, sample.future);
    return y;
}

double model_forward(const HybridModel& model, double t, std::span<const double> lags,
                     const std::vector<std::vector<double>>& reg_lags, std::span<const double> future_vals) {
    Sample s;
    s.t = t;
    for (double v : lags) s.ar_lags.push_back(model.target_stats.to_unit(v));
    if (reg_lags.size() != model.regressor_count()) {
        throw Error(ErrorCode::MissingComponentInput, "expected lags for " + std::to_string(model.regressor_count()) +
                                                          " regressors, got " + std::to_string(reg_lags.size()));
    }
    for (std::size_t r = 0; r < reg_lags.size(); ++r) {
        std::vector<double> row;
        for (double v : reg_lags[r]) row.push_back(model.regressor_stats[r].to_unit(v));
        s.reg_lags.push_back(std::move(row));
    }
    if (future_vals.size() != model.future_count()) {
        throw Error(ErrorCode::MissingComponentInput, "expected " + std::to_string(model.future_count()) +
                                                          " known-future values, got " + std::to_string(future_vals.size()));
    }
    for (std::size_t k = 0; k < future_vals.size(); ++k) s.future.push_back(model.future_stats[k].to_unit(future_vals[k]));
    return model.target_stats.from_unit(forward_normalized(model, s));
}

double huber_loss(double residual, double delta) {
    const double a = std::abs(residual);
    return a <= delta ? 0.5 * residual * residual : delta * (a - 0.5 * delta);
}

double huber_derivative(double residual, double delta) {
    if (std::abs(residual) <= delta) return residual;
    return residual > 0.0 ? delta : -delta;
}

double batch_loss(const HybridModel& model, std::span<const Sample> batch) {
    if (batch.empty()) {
        throw Error(ErrorCode::EmptyInput, "empty batch");
    }
    double total = 0.0;
    for (const auto& s : batch) total += huber_loss(forward_normalized(model, s) - s.target, model.huber_delta);
    return total / static_cast<double>(batch.size());
}

Parameters gradients(const HybridModel& model, std::span<const Sample> batch) {
    if (batch.empty()) {
        throw Error(ErrorCode::EmptyInput, "empty batch");
    }
    Parameters grad = model.params.zeros_like();
    const auto& p = model.params;
    const double inv_n = 1.0 / static_cast<double>(batch.size());
    NetCache ar_cache;
    std::vector<NetCache> reg_cache(model.regressor_count());

    for (const auto& s : batch) {
        // Forward pass, keeping net activations.
        double y = trend_eval(model, s.t);
        if (model.seasonality_enabled()) y += seasonality_eval(model, s.t);
        if (model.ar_enabled()) {
            check_lag_input(model.ar_lags, s.ar_lags.size(), "AR block");
            y += forward_cached(p.ar_weights, s.ar_lags, ar_cache);
        }
        if (s.reg_lags.size() != model.regressor_count()) {
            throw Error(ErrorCode::MissingComponentInput, "regressor lags missing from sample");
        }
        for (std::size_t r = 0; r < model.regressor_count(); ++r) {
            check_lag_input(model.reg_lags, s.reg_lags[r].size(), "lagged regressor");
            y += forward_cached(p.reg_weights[r], s.reg_lags[r], reg_cache[r]);
        }
        y += future_forward(model, s.future);

        const double g = huber_derivative(y - s.target, model.huber_delta) * inv_n;

        if (model.trend_enabled) {
            const double tau = trend_scaled_time(model, s.t);
            grad.offset += g;
            grad.base_rate += g * tau;
            for (std::size_t j = 0; j < model.changepoint_times.size(); ++j) {
                const double tau_j = trend_scaled_time(model, model.changepoint_times[j]);
                if (tau_j <= tau) grad.deltas[j] += g * (tau - tau_j);
            }
        }
        if (model.seasonality_enabled()) {
            const double l = model.season_period;
            double phase = std::fmod(s.t, l);
            if (phase < 0.0) phase += l;
            for (std::size_t j = 0; j < p.fourier_a.size(); ++j) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(j + 1) * phase / l;
                grad.fourier_a[j] += g * std::cos(angle);
                grad.fourier_b[j] += g * std::sin(angle);
            }
        }
        if (model.ar_enabled()) backward(p.ar_weights, ar_cache, g, grad.ar_weights, nullptr);
        for (std::size_t r = 0; r < model.regressor_count(); ++r) {
            backward(p.reg_weights[r], reg_cache[r], g, grad.reg_weights[r], nullptr);
        }
        for (std::size_t k = 0; k < p.future_weights.size(); ++k) grad.future_weights[k] += g * s.future[k];
    }
    return grad;
}

std::vector<Sample> build_samples(const HybridModel& model, const TimeSeries& series,
                                  std::span<const TimeSeries> lagged_regressors,
                                  std::span<const TimeSeries> future_regressors, std::size_t first) {
    if (lagged_regressors.size() != model.regressor_count()) {
        throw Error(ErrorCode::MissingComponentInput, "model expects " + std::to_string(model.regressor_count()) +
                                                          " lagged regressors, got " +
                                                          std::to_string(lagged_regressors.size()));
    }
    if (future_regressors.size() != model.future_count()) {
        throw Error(ErrorCode::MissingComponentInput, "model expects " + std::to_string(model.future_count()) +
                                                          " future regressors, got " +
                                                          std::to_string(future_regressors.size()));
    }
    check_ranges(series, lagged_regressors);
    check_ranges(series, future_regressors);
    if (first < model.max_lag()) {
        throw Error(ErrorCode::SeriesTooShort, "first row must leave room for " + std::to_string(model.max_lag()) + " lags");
    }
    std::vector<Sample> out;
    for (std::size_t t = first; t < series.size(); ++t) {
        Sample s;
        s.t = static_cast<double>(t);
        s.target = model.target_stats.to_unit(series[t]);
        if (model.ar_enabled()) {
            for (std::size_t i = 1; i <= model.ar_lags; ++i) s.ar_lags.push_back(model.target_stats.to_unit(series[t - i]));
        }
        for (std::size_t r = 0; r < lagged_regressors.size(); ++r) {
            std::vector<double> row;
            for (std::size_t i = 1; i <= model.reg_lags; ++i) {
                row.push_back(model.regressor_stats[r].to_unit(lagged_regressors[r][t - i]));
            }
            s.reg_lags.push_back(std::move(row));
        }
        for (std::size_t k = 0; k < future_regressors.size(); ++k) {
            s.future.push_back(model.future_stats[k].to_unit(future_regressors[k][t]));
        }
        out.push_back(std::move(s));
    }
    return out;
}

HybridModel fit(const HybridConfig& config, const TimeSeries& series, std::span<const TimeSeries> lagged_regressors,
                std::span<const TimeSeries> future_regressors) {
    config.validate();
    const std::size_t n = series.size();
    const std::size_t lag_need = std::max(config.ar_lags, lagged_regressors.empty() ? 0 : config.reg_lags);
    if (n <= lag_need + 1) {
        throw Error(ErrorCode::SeriesTooShort, "series of length " + std::to_string(n) + " cannot supply " +
                                                   std::to_string(lag_need) + " lags");
    }
    if (!lagged_regressors.empty() && config.reg_lags == 0) {
        throw Error(ErrorCode::InvalidArgument, "lagged regressors supplied but reg_lags is 0");
    }
    check_ranges(series, lagged_regressors);
    check_ranges(series, future_regressors);

    std::mt19937_64 rng(config.seed);
    HybridModel model;
    model.trend_enabled = config.trend;
    model.season_period = config.season_period;
    model.ar_lags = config.ar_lags;
    model.reg_lags = config.reg_lags;
    model.huber_delta = config.huber_delta;
    model.time_scale = n > 1 ? static_cast<double>(n - 1) : 1.0;
    model.target_stats = NormStats::fit(series.values());
    for (const auto& r : lagged_regressors) {
        model.regressor_stats.push_back(NormStats::fit(r.values()));
        model.regressor_names.push_back(r.name());
    }
    for (const auto& f : future_regressors) model.future_stats.push_back(NormStats::fit(f.values()));

    auto& p = model.params;
    if (config.trend) {
        const double span = config.changepoint_range * static_cast<double>(n - 1);
        for (std::size_t j = 1; j <= config.n_changepoints; ++j) {
            model.changepoint_times.push_back(span * static_cast<double>(j) / static_cast<double>(config.n_changepoints));
        }
        p.deltas.assign(config.n_changepoints, 0.0);
    }
    p.fourier_a.assign(config.season_terms, 0.0);
    p.fourier_b.assign(config.season_terms, 0.0);
    if (config.ar_lags > 0) {
        p.ar_weights = FeedForward::zeros(config.ar_lags, config.hidden_layers);
        if (!config.hidden_layers.empty()) glorot_init(p.ar_weights, rng);
    }
    for (std::size_t r = 0; r < lagged_regressors.size(); ++r) {
        p.reg_weights.push_back(FeedForward::zeros(config.reg_lags, config.reg_hidden_layers));
        if (!config.reg_hidden_layers.empty()) glorot_init(p.reg_weights.back(), rng);
    }
    p.future_weights.assign(future_regressors.size(), 0.0);

    const auto samples = build_samples(model, series, lagged_regressors, future_regressors, model.max_lag());
    double mean_target = 0.0;
    for (const auto& s : samples) mean_target += s.target;
    p.offset = config.trend ? mean_target / static_cast<double>(samples.size()) : 0.0;

    // AdamW over the flattened parameter vector.
    std::vector<double> theta = p.flatten();
    std::vector<double> m(theta.size(), 0.0);
    std::vector<double> v(theta.size(), 0.0);
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Sample> batch;
    std::size_t step = 0;
    // Offset of the AR input-layer weights in the flat vector, for the L1 term.
    std::size_t ar_first = 0;
    std::size_t ar_count = 0;
    if (model.ar_enabled() && config.ar_sparsity > 0.0) {
        ar_first = 2 + p.deltas.size() + 2 * p.fourier_a.size();
        ar_count = p.ar_weights.layers.front().weights.size();
    }

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[rng() % i]);
        }
        for (std::size_t b = 0; b < order.size(); b += config.batch_size) {
            batch.clear();
            for (std::size_t k = b; k < std::min(order.size(), b + config.batch_size); ++k) batch.push_back(samples[order[k]]);
            auto grad = gradients(model, batch).flatten();
            for (std::size_t k = ar_first; k < ar_first + ar_count; ++k) {
                const double w = theta[k];
                grad[k] += config.ar_sparsity * (w > 0.0 ? 1.0 : (w < 0.0 ? -1.0 : 0.0));
            }
            ++step;
            const double bc1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(step));
            for (std::size_t k = 0; k < theta.size(); ++k) {
                theta[k] *= 1.0 - config.learning_rate * config.weight_decay;
                m[k] = kAdamBeta1 * m[k] + (1.0 - kAdamBeta1) * grad[k];
                v[k] = kAdamBeta2 * v[k] + (1.0 - kAdamBeta2) * grad[k] * grad[k];
                theta[k] -= config.learning_rate * (m[k] / bc1) / (std::sqrt(v[k] / bc2) + kAdamEps);
            }
            p.assign(theta);
        }
        model.loss_history.push_back(batch_loss(model, samples));
    }
    return model;
}

std::vector<double> forecast_rolling(const HybridModel& model, const TimeSeries& series,
                                     std::span<const TimeSeries> lagged_regressors,
                                     std::span<const TimeSeries> future_regressors, std::size_t n_test) {
    if (n_test == 0) {
        throw Error(ErrorCode::InvalidArgument, "n_test must be positive");
    }
    if (series.size() < n_test + model.max_lag()) {
        throw Error(ErrorCode::SeriesTooShort, "test window is not covered by observed lags");
    }
    if (lagged_regressors.size() != model.regressor_count() || future_regressors.size() != model.future_count()) {
        throw Error(ErrorCode::MissingComponentInput, "regressor count does not match the model");
    }
    check_ranges(series, lagged_regressors);
    check_ranges(series, future_regressors);
    std::vector<double> out;
    out.reserve(n_test);
    for (std::size_t t = series.size() - n_test; t < series.size(); ++t) {
        std::vector<double> lags;
        if (model.ar_enabled()) {
            for (std::size_t i = 1; i <= model.ar_lags; ++i) lags.push_back(series[t - i]);
        }
        std::vector<std::vector<double>> reg(lagged_regressors.size());
        for (std::size_t r = 0; r < lagged_regressors.size(); ++r) {
            for (std::size_t i = 1; i <= model.reg_lags; ++i) reg[r].push_back(lagged_regressors[r][t - i]);
        }
        std::vector<double> fut;
        for (const auto& f : future_regressors) fut.push_back(f[t]);
        out.push_back(model_forward(model, static_cast<double>(t), lags, reg, fut));
    }
    return out;
}

ComponentReport components(const HybridModel& model, const TimeSeries& series,
                           std::span<const TimeSeries> lagged_regressors,
                           std::span<const TimeSeries> future_regressors) {
    const std::size_t first = model.max_lag();
    if (series.size() <= first) {
        throw Error(ErrorCode::SeriesTooShort, "no rows with a full set of lags");
    }
    const auto samples = build_samples(model, series, lagged_regressors, future_regressors, first);
    const auto& stats = model.target_stats;
    const auto& p = model.params;

    ComponentReport rep;
    rep.start = series.month_at(first);
    rep.regressor_names = model.regressor_names;
    rep.ar_relevance.assign(model.ar_enabled() ? model.ar_lags : 0, 0.0);
    rep.reg_relevance.assign(model.regressor_count(), std::vector<double>(model.reg_lags, 0.0));

    NetCache cache;
    FeedForward scratch;
    std::vector<double> input_grad;
    const auto accumulate_relevance = [&](const FeedForward& net, std::span<const double> in, std::vector<double>& acc) {
        scratch = net;
        forward_cached(net, in, cache);
        backward(net, cache, 1.0, scratch, &input_grad);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::abs(input_grad[i]);
    };

    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& s = samples[k];
        const double trend = trend_eval(model, s.t);
        const double season = model.seasonality_enabled() ? seasonality_eval(model, s.t) : 0.0;
        const double ar = ar_forward(model, s.ar_lags);
        double reg = 0.0;
        for (std::size_t r = 0; r < model.regressor_count(); ++r) reg += regressor_forward(model, r, s.reg_lags[r]);
        const double fut = future_forward(model, s.future);

        rep.actual.push_back(series[first + k]);
        rep.trend.push_back(stats.from_unit(trend));
        rep.seasonality.push_back(season * stats.range);
        rep.autoregression.push_back(ar * stats.range);
        rep.lagged_regression.push_back(reg * stats.range);
        rep.future_regression.push_back(fut * stats.range);
        rep.fitted.push_back(stats.from_unit(forward_normalized(model, s)));

        if (model.ar_enabled() && !p.ar_weights.is_linear()) accumulate_relevance(p.ar_weights, s.ar_lags, rep.ar_relevance);
        for (std::size_t r = 0; r < model.regressor_count(); ++r) {
            if (!p.reg_weights[r].is_linear()) accumulate_relevance(p.reg_weights[r], s.reg_lags[r], rep.reg_relevance[r]);
        }
    }

    const double count = static_cast<double>(samples.size());
    if (model.ar_enabled()) {
        if (p.ar_weights.is_linear()) {
            rep.ar_relevance = p.ar_weights.layers.front().weights;
        } else {
            for (auto& v : rep.ar_relevance) v /= count;
        }
    }
    for (std::size_t r = 0; r < model.regressor_count(); ++r) {
        if (p.reg_weights[r].is_linear()) {
            rep.reg_relevance[r] = p.reg_weights[r].layers.front().weights;
        } else {
            for (auto& v : rep.reg_relevance[r]) v /= count;
        }
    }
    return rep;
}

}  // namespace tourcast::hybrid
