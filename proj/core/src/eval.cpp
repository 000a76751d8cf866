#include "tourcast/eval.hpp"

#include "tourcast/error.hpp"

#include <algorithm>
#include <cmath>

namespace tourcast::eval {

namespace {

std::vector<TimeSeries> heads(std::span<const TimeSeries> series, std::size_t count) {
    std::vector<TimeSeries> out;
    out.reserve(series.size());
    for (const auto& s : series) out.push_back(s.head(count));
    return out;
}

EvalReport make_report(std::string label, const TimeSeries& series, std::size_t n_test, std::vector<double> predictions,
                       std::size_t fits) {
    const auto [train, test] = split_train_test(series, n_test);
    EvalReport rep;
    rep.model_label = std::move(label);
    rep.first_month = test.start();
    rep.actuals.assign(test.values().begin(), test.values().end());
    rep.predictions = std::move(predictions);
    for (std::size_t i = 0; i < rep.actuals.size(); ++i) rep.per_step_error.push_back(rep.actuals[i] - rep.predictions[i]);
    rep.rmse = rmse(rep.actuals, rep.predictions);
    rep.fit_count = fits;
    rep.split_fingerprint = split_fingerprint(train, test);
    return rep;
}

void hash_bytes(std::uint64_t& h, const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
}

EvalReport evaluate_svr(const SvrSpec& spec, const TimeSeries& series, std::size_t n_test) {
    split_train_test(series, n_test);
    if (!spec.refit) {
        return make_report(spec.label, series, n_test, svr::forecast_rolling(spec.config, series, spec.lags, n_test), 1);
    }
    std::vector<double> preds;
    for (std::size_t t = series.size() - n_test; t < series.size(); ++t) {
        const auto model = svr::fit(make_supervised(series.values().first(t), spec.lags), spec.config);
        preds.push_back(svr::predict(model, series.values().subspan(t - spec.lags, spec.lags)));
    }
    return make_report(spec.label, series, n_test, std::move(preds), n_test);
}

EvalReport evaluate_hybrid(const HybridSpec& spec, const TimeSeries& series, std::span<const TimeSeries> exog,
                           std::size_t n_test) {
    split_train_test(series, n_test);
    const std::span<const TimeSeries> regs = spec.use_exog ? exog : std::span<const TimeSeries>{};
    auto config = spec.config;
    if (regs.empty()) {
        config.reg_lags = 0;
    }
    if (!spec.refit) {
        const std::size_t n_train = series.size() - n_test;
        const auto model = hybrid::fit(config, series.head(n_train), heads(regs, n_train));
        return make_report(spec.label, series, n_test, hybrid::forecast_rolling(model, series, regs, {}, n_test), 1);
    }
    std::vector<double> preds;
    for (std::size_t t = series.size() - n_test; t < series.size(); ++t) {
        const auto model = hybrid::fit(config, series.head(t), heads(regs, t));
        const auto window = series.head(t + 1);
        preds.push_back(hybrid::forecast_rolling(model, window, heads(regs, t + 1), {}, 1).front());
    }
    return make_report(spec.label, series, n_test, std::move(preds), n_test);
}

}  // namespace

double rmse(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw Error(ErrorCode::LengthMismatch, "rmse inputs have lengths " + std::to_string(actual.size()) + " and " +
                                                   std::to_string(predicted.size()));
    }
    if (actual.empty()) {
        throw Error(ErrorCode::EmptyInput, "rmse of empty vectors");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - predicted[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(actual.size()));
}

const std::string& label_of(const ModelSpec& spec) {
    return std::visit([](const auto& s) -> const std::string& { return s.label; }, spec);
}

std::uint64_t split_fingerprint(const TimeSeries& train, const TimeSeries& test) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto* s : {&train, &test}) {
        const int stamp[2] = {s->start().year, s->start().month};
        hash_bytes(h, stamp, sizeof(stamp));
        const std::uint64_t n = s->size();
        hash_bytes(h, &n, sizeof(n));
        hash_bytes(h, s->values().data(), s->size() * sizeof(double));
    }
    return h;
}

EvalReport rolling_eval_arima(const TimeSeries& series, const arima::ArimaOrder& order,
                              const arima::SeasonalOrder& seasonal, std::span<const TimeSeries> exog,
                              std::size_t n_test, bool refit, const std::string& label) {
    split_train_test(series, n_test);
    const std::size_t first = series.size() - n_test;
    std::vector<double> preds;
    preds.reserve(n_test);
    std::size_t fits = 0;
    arima::ArimaModel model;
    for (std::size_t t = first; t < series.size(); ++t) {
        const auto history = series.head(t);
        const auto exog_history = heads(exog, t);
        if (refit || fits == 0) {
            model = arima::fit(history, order, seasonal, exog_history);
            ++fits;
        }
        std::vector<double> next;
        for (const auto& x : exog) next.push_back(x[t]);
        preds.push_back(arima::forecast_one_step(model, history, exog_history, next));
    }
    return make_report(label, series, n_test, std::move(preds), fits);
}

EvalReport evaluate(const ModelSpec& spec, const TimeSeries& series, std::span<const TimeSeries> exog,
                    std::size_t n_test) {
    if (const auto* a = std::get_if<ArimaSpec>(&spec)) {
        const std::span<const TimeSeries> x = a->use_exog ? exog : std::span<const TimeSeries>{};
        if (a->use_exog && exog.empty()) {
            throw Error(ErrorCode::MissingExogenous, "model '" + a->label + "' needs an exogenous series");
        }
        return rolling_eval_arima(series, a->order, a->seasonal, x, n_test, a->refit, a->label);
    }
    if (const auto* s = std::get_if<SvrSpec>(&spec)) {
        return evaluate_svr(*s, series, n_test);
    }
    return evaluate_hybrid(std::get<HybridSpec>(spec), series, exog, n_test);
}

std::vector<ModelSpec> default_suite(std::uint64_t seed) {
    std::vector<ModelSpec> suite;
    suite.emplace_back(ArimaSpec{"arima", {3, 1, 0}, {}, false, true});
    suite.emplace_back(ArimaSpec{"sarima", {3, 1, 0}, {1, 1, 0, 12}, false, true});
    suite.emplace_back(ArimaSpec{"sarimax", {3, 1, 0}, {1, 1, 0, 12}, true, true});
    SvrSpec svr_spec;
    svr_spec.config.c = 10.0;
    svr_spec.config.epsilon = 0.05;
    svr_spec.config.kernel = svr::KernelSpec::gaussian();
    svr_spec.lags = 3;
    suite.emplace_back(svr_spec);
    HybridSpec hybrid_spec;
    hybrid_spec.config.seed = seed;
    suite.emplace_back(hybrid_spec);
    return suite;
}

std::vector<EvalReport> compare(const TimeSeries& series, std::span<const TimeSeries> exog, std::size_t n_test,
                                const std::vector<ModelSpec>& suite) {
    if (suite.empty()) {
        throw Error(ErrorCode::InvalidArgument, "model suite is empty");
    }
    std::vector<EvalReport> reports;
    reports.reserve(suite.size());
    for (const auto& spec : suite) {
        reports.push_back(evaluate(spec, series, exog, n_test));
    }
    std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.rmse < b.rmse; });
    return reports;
}

}  // namespace tourcast::eval
