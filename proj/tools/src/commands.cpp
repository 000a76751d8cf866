#include "tourcast_app/commands.hpp"

#include "tourcast/arima.hpp"
#include "tourcast/csv.hpp"
#include "tourcast/error.hpp"
#include "tourcast/eval.hpp"
#include "tourcast/hybrid.hpp"
#include "tourcast/run_config.hpp"
#include "tourcast/svg.hpp"
#include "tourcast/svr.hpp"
#include "tourcast/synth.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tourcast::app {

namespace fs = std::filesystem;
using io::RunConfig;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::string config_path;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    long n_test = 0;
    std::string out;
    std::string data;
    std::string exog;
    std::string model;
    std::string models;
    long months = 0;
    long horizon = 0;
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s.empty() ? "none" : s;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

RunConfig defaults(const std::string& command) {
    RunConfig c;
    c.set("data", "data/visitors.csv");
    c.set("exog", "auto");
    c.set("n_test", "12");
    c.set("out", command == "synth" ? "data" : "out");
    c.set("seed", "0");
    c.set("model", "sarimax");
    c.set("models", "arima,sarima,sarimax,svr,hybrid");
    c.set("months", "168");
    c.set("horizon", "12");
    const io::SynthParams sp;
    c.set("synth.noise_sd", io::format_exact(sp.noise_sd));
    c.set("synth.trend_index_noise_sd", io::format_exact(sp.trend_index_noise_sd));

    const auto suite = eval::default_suite(0);
    for (const auto& spec : suite) {
        if (const auto* a = std::get_if<eval::ArimaSpec>(&spec)) {
            const auto& o = a->order;
            const auto& s = a->seasonal;
            c.set(a->label + ".order", std::to_string(o.p) + "," + std::to_string(o.d) + "," + std::to_string(o.q));
            c.set(a->label + ".seasonal", s.active() ? std::to_string(s.P) + "," + std::to_string(s.D) + "," +
                                                           std::to_string(s.Q) + "," + std::to_string(s.M)
                                                     : "none");
            c.set(a->label + ".refit", yes_no(a->refit));
        } else if (const auto* v = std::get_if<eval::SvrSpec>(&spec)) {
            c.set("svr.c", io::format_exact(v->config.c));
            c.set("svr.epsilon", io::format_exact(v->config.epsilon));
            c.set("svr.kernel", "gaussian");
            c.set("svr.sigma", "0");
            c.set("svr.degree", std::to_string(v->config.kernel.degree));
            c.set("svr.tol", io::format_exact(v->config.tol));
            c.set("svr.lags", std::to_string(v->lags));
            c.set("svr.refit", yes_no(v->refit));
        } else {
            const auto& h = std::get<eval::HybridSpec>(spec);
            const auto& k = h.config;
            c.set("hybrid.trend", yes_no(k.trend));
            c.set("hybrid.changepoints", std::to_string(k.n_changepoints));
            c.set("hybrid.changepoint_range", io::format_exact(k.changepoint_range));
            c.set("hybrid.season_period", io::format_exact(k.season_period));
            c.set("hybrid.season_terms", std::to_string(k.season_terms));
            c.set("hybrid.ar_lags", std::to_string(k.ar_lags));
            c.set("hybrid.reg_lags", std::to_string(k.reg_lags));
            c.set("hybrid.hidden_layers", join(k.hidden_layers));
            c.set("hybrid.reg_hidden_layers", join(k.reg_hidden_layers));
            c.set("hybrid.learning_rate", io::format_exact(k.learning_rate));
            c.set("hybrid.epochs", std::to_string(k.epochs));
            c.set("hybrid.batch_size", std::to_string(k.batch_size));
            c.set("hybrid.huber_delta", io::format_exact(k.huber_delta));
            c.set("hybrid.ar_sparsity", io::format_exact(k.ar_sparsity));
            c.set("hybrid.weight_decay", io::format_exact(k.weight_decay));
            c.set("hybrid.use_exog", yes_no(h.use_exog));
            c.set("hybrid.refit", yes_no(h.refit));
        }
    }
    return c;
}

RunConfig resolve(const std::string& command, const Flags& f, const CLI::App& sub) {
    RunConfig c = defaults(command);
    if (!f.config_path.empty()) {
        const auto file = RunConfig::load(f.config_path);
        for (const auto& [k, v] : file.values()) c.set(k, v);
    }
    for (const auto& kv : f.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("--set expects key=value, got '" + kv + "'");
        }
        c.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (sub.count("--seed")) c.set("seed", std::to_string(f.seed));
    if (sub.count("--n-test")) c.set("n_test", std::to_string(f.n_test));
    if (sub.count("--out")) c.set("out", f.out);
    if (sub.count("--data")) c.set("data", f.data);
    if (sub.count("--exog")) c.set("exog", f.exog);
    if (sub.count("--model")) c.set("model", f.model);
    if (sub.count("--models")) c.set("models", f.models);
    if (sub.count("--months")) c.set("months", std::to_string(f.months));
    if (sub.count("--horizon")) c.set("horizon", std::to_string(f.horizon));

    if (c.get_int("n_test", 12) < 1) throw UsageError("n_test must be at least 1");
    if (c.get_int("months", 168) < 1) throw UsageError("months must be positive");
    if (c.get_int("horizon", 12) < 1) throw UsageError("horizon must be at least 1");
    return c;
}

std::uint64_t seed_of(const RunConfig& c) {
    const long s = c.get_int("seed", 0);
    if (s < 0) throw UsageError("seed must be non-negative");
    return static_cast<std::uint64_t>(s);
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = item.find_first_not_of(' ');
        const auto b = item.find_last_not_of(' ');
        if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

arima::ArimaOrder order_from(const RunConfig& c, const std::string& key) {
    const auto v = c.get_sizes(key, {});
    if (v.size() != 3) throw UsageError(key + " needs p,d,q");
    return {static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])};
}

arima::SeasonalOrder seasonal_from(const RunConfig& c, const std::string& key) {
    const auto v = c.get_sizes(key, {});
    if (v.empty()) return {};
    if (v.size() != 4) throw UsageError(key + " needs P,D,Q,M or none");
    return {static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]), static_cast<int>(v[3])};
}

svr::SvrConfig svr_config(const RunConfig& c) {
    svr::SvrConfig s;
    s.c = c.get_double("svr.c", s.c);
    s.epsilon = c.get_double("svr.epsilon", s.epsilon);
    s.tol = c.get_double("svr.tol", s.tol);
    const auto kernel = c.get("svr.kernel", "gaussian");
    if (kernel == "gaussian") {
        s.kernel = svr::KernelSpec::gaussian(c.get_double("svr.sigma", 0.0));
    } else if (kernel == "linear") {
        s.kernel = svr::KernelSpec::linear();
    } else if (kernel == "polynomial") {
        s.kernel = svr::KernelSpec::polynomial(static_cast<int>(c.get_int("svr.degree", 3)));
    } else {
        throw UsageError("unknown svr.kernel '" + kernel + "'");
    }
    return s;
}

hybrid::HybridConfig hybrid_config(const RunConfig& c) {
    auto h = hybrid::HybridConfig::monthly_visitors();
    h.trend = c.get_bool("hybrid.trend", h.trend);
    h.n_changepoints = static_cast<std::size_t>(c.get_int("hybrid.changepoints", 10));
    h.changepoint_range = c.get_double("hybrid.changepoint_range", h.changepoint_range);
    h.season_period = c.get_double("hybrid.season_period", h.season_period);
    h.season_terms = static_cast<std::size_t>(c.get_int("hybrid.season_terms", 3));
    h.ar_lags = static_cast<std::size_t>(c.get_int("hybrid.ar_lags", 3));
    h.reg_lags = static_cast<std::size_t>(c.get_int("hybrid.reg_lags", 2));
    h.hidden_layers = c.get_sizes("hybrid.hidden_layers", h.hidden_layers);
    h.reg_hidden_layers = c.get_sizes("hybrid.reg_hidden_layers", h.reg_hidden_layers);
    h.learning_rate = c.get_double("hybrid.learning_rate", h.learning_rate);
    h.epochs = static_cast<std::size_t>(c.get_int("hybrid.epochs", 500));
    h.batch_size = static_cast<std::size_t>(c.get_int("hybrid.batch_size", 32));
    h.huber_delta = c.get_double("hybrid.huber_delta", h.huber_delta);
    h.ar_sparsity = c.get_double("hybrid.ar_sparsity", h.ar_sparsity);
    h.weight_decay = c.get_double("hybrid.weight_decay", h.weight_decay);
    h.seed = seed_of(c);
    return h;
}

eval::ModelSpec build_spec(const std::string& name, const RunConfig& c) {
    if (name == "arima" || name == "sarima" || name == "sarimax") {
        eval::ArimaSpec a;
        a.label = name;
        a.order = order_from(c, name + ".order");
        a.seasonal = seasonal_from(c, name + ".seasonal");
        a.use_exog = name == "sarimax";
        a.refit = c.get_bool(name + ".refit", true);
        return a;
    }
    if (name == "svr") {
        eval::SvrSpec s;
        s.config = svr_config(c);
        s.lags = static_cast<std::size_t>(c.get_int("svr.lags", 3));
        s.refit = c.get_bool("svr.refit", false);
        return s;
    }
    if (name == "hybrid") {
        eval::HybridSpec h;
        h.config = hybrid_config(c);
        h.use_exog = c.get_bool("hybrid.use_exog", true);
        h.refit = c.get_bool("hybrid.refit", false);
        return h;
    }
    throw UsageError("unknown model '" + name + "' (expected arima, sarima, sarimax, svr or hybrid)");
}

struct Data {
    TimeSeries target;
    std::vector<TimeSeries> exog;
};

/// Reads the target and resolves `exog` in place to the list of files actually used.
Data load_data(RunConfig& c) {
    const fs::path data_path = c.get("data", "");
    if (!fs::exists(data_path)) {
        throw Error(ErrorCode::IoError, "data file " + data_path.string() + " does not exist");
    }
    Data d{io::read_series_csv(data_path), {}};

    std::vector<std::string> paths;
    const auto exog = c.get("exog", "auto");
    if (exog == "auto") {
        const auto guess = data_path.parent_path() / "google_trend.csv";
        if (fs::exists(guess)) paths.push_back(guess.string());
    } else if (exog != "none" && !exog.empty()) {
        paths = split_names(exog);
    }
    for (const auto& p : paths) {
        if (!fs::exists(p)) {
            throw Error(ErrorCode::IoError, "exogenous file " + p + " does not exist");
        }
        auto x = io::read_series_csv(p);
        if (!x.same_range(d.target)) {
            throw Error(ErrorCode::MisalignedRegressor,
                        p + " covers " + x.start().to_string() + ".." + x.end().to_string() + " but the target covers " +
                            d.target.start().to_string() + ".." + d.target.end().to_string());
        }
        d.exog.push_back(std::move(x));
    }
    std::string resolved;
    for (const auto& p : paths) resolved += (resolved.empty() ? "" : ",") + p;
    c.set("exog", resolved.empty() ? "none" : resolved);
    return d;
}

fs::path prepare_out(const RunConfig& c) {
    const fs::path out = c.get("out", "out");
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec || !fs::is_directory(out)) {
        throw Error(ErrorCode::IoError, "cannot create output directory " + out.string());
    }
    return out;
}

void echo_config(const RunConfig& c, const std::string& command, const fs::path& out) {
    std::ofstream f(out / "run_config.txt", std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + (out / "run_config.txt").string());
    f << "# resolved configuration of `" << command << "`\n" << c.dump();
}

std::vector<std::string> month_labels(const TimeSeries& s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.month_at(i).to_string());
    return out;
}

void write_overlay(const eval::EvalReport& r, const TimeSeries& series, const fs::path& path) {
    io::Figure fig;
    fig.title = r.model_label + ": actual vs. one-step forecast (RMSE " + io::format_fixed(r.rmse, 2) + ")";
    fig.x_label = "month";
    fig.x_ticks = month_labels(series);
    io::Panel panel;
    panel.title = series.name();
    panel.y_label = "value";
    io::LineSeries actual{"actual", std::vector<double>(series.values().begin(), series.values().end()), ""};
    io::LineSeries predicted{"predicted",
                             std::vector<double>(series.size(), std::numeric_limits<double>::quiet_NaN()), ""};
    const std::size_t first = series.size() - r.predictions.size();
    for (std::size_t i = 0; i < r.predictions.size(); ++i) predicted.values[first + i] = r.predictions[i];
    panel.lines = {std::move(actual), std::move(predicted)};
    fig.panels.push_back(std::move(panel));
    io::write_svg(fig, path);
}

void emit_reports(const std::vector<eval::EvalReport>& reports, const TimeSeries& series, const fs::path& out,
                  std::ostream& os) {
    io::write_metrics_csv(reports, out / "metrics.csv");
    for (const auto& r : reports) {
        io::write_forecast_csv(r, out / ("forecast_" + r.model_label + ".csv"));
        write_overlay(r, series, out / ("overlay_" + r.model_label + ".svg"));
        os << r.model_label << "  rmse " << io::format_fixed(r.rmse, 2) << "  fits " << r.fit_count << "\n";
    }
}

std::string list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + io::format_exact(v[i]);
    return s.empty() ? "none" : s;
}

int cmd_synth(RunConfig& c, std::ostream& os) {
    const auto months = static_cast<std::size_t>(c.get_int("months", 168));
    if (months < 36) throw UsageError("synth needs at least 36 months");
    const auto seed = seed_of(c);
    io::SynthParams sp;
    sp.noise_sd = c.get_double("synth.noise_sd", sp.noise_sd);
    sp.trend_index_noise_sd = c.get_double("synth.trend_index_noise_sd", sp.trend_index_noise_sd);
    if (sp.noise_sd < 0.0 || sp.trend_index_noise_sd < 0.0) throw UsageError("synth noise levels must be non-negative");
    const auto bundle = io::synth_dataset(seed, months, sp);
    const auto out = prepare_out(c);
    io::write_series_csv(bundle.target, out / "visitors.csv");
    for (const auto& [name, series] : bundle.regressors) io::write_series_csv(series, out / (name + ".csv"));
    echo_config(c, "synth", out);
    os << "wrote " << months << " months (seed " << seed << ") to " << out.string() << "\n";
    return kOk;
}

int cmd_compare(RunConfig& c, std::ostream& os) {
    auto data = load_data(c);
    std::vector<eval::ModelSpec> suite;
    for (const auto& name : split_names(c.get("models", ""))) suite.push_back(build_spec(name, c));
    if (suite.empty()) throw UsageError("models is empty");
    const auto n_test = static_cast<std::size_t>(c.get_int("n_test", 12));
    const auto reports = eval::compare(data.target, data.exog, n_test, suite);
    const auto out = prepare_out(c);
    emit_reports(reports, data.target, out, os);
    echo_config(c, "compare", out);
    return kOk;
}

int cmd_evaluate(RunConfig& c, std::ostream& os) {
    auto data = load_data(c);
    const auto spec = build_spec(c.get("model", ""), c);
    const auto n_test = static_cast<std::size_t>(c.get_int("n_test", 12));
    const auto report = eval::evaluate(spec, data.target, data.exog, n_test);
    const auto out = prepare_out(c);
    emit_reports({report}, data.target, out, os);
    echo_config(c, "evaluate", out);
    return kOk;
}

int cmd_fit(RunConfig& c, std::ostream& os) {
    auto data = load_data(c);
    const auto name = c.get("model", "");
    const auto spec = build_spec(name, c);
    const auto out = prepare_out(c);
    RunConfig summary;
    summary.set("model", name);
    summary.set("observations", std::to_string(data.target.size()));
    if (const auto* a = std::get_if<eval::ArimaSpec>(&spec)) {
        const auto m = arima::fit(data.target, a->order, a->seasonal,
                                  a->use_exog ? std::span<const TimeSeries>(data.exog) : std::span<const TimeSeries>{});
        summary.set("phi", list(m.phi));
        summary.set("theta", list(m.theta));
        summary.set("seasonal_phi", list(m.seasonal_phi));
        summary.set("seasonal_theta", list(m.seasonal_theta));
        summary.set("exog_beta", list(m.exog_beta));
        summary.set("intercept", io::format_exact(m.intercept));
        summary.set("sigma2", io::format_exact(m.sigma2));
        summary.set("css", io::format_exact(m.css));
        summary.set("converged", yes_no(m.converged));
        summary.set("near_unit_root", yes_no(m.near_unit_root));
    } else if (const auto* s = std::get_if<eval::SvrSpec>(&spec)) {
        const auto m = svr::fit(make_supervised(data.target, s->lags), s->config);
        summary.set("kernel", m.kernel.describe());
        summary.set("support_vectors", std::to_string(m.dual_deltas.size()));
        summary.set("bias", io::format_exact(m.bias));
        summary.set("dual_objective", io::format_exact(m.dual_objective));
        summary.set("iterations", std::to_string(m.iterations));
        summary.set("converged", yes_no(m.converged));
    } else {
        const auto& h = std::get<eval::HybridSpec>(spec);
        auto config = h.config;
        const std::span<const TimeSeries> regs = h.use_exog ? std::span<const TimeSeries>(data.exog)
                                                            : std::span<const TimeSeries>{};
        if (regs.empty()) config.reg_lags = 0;
        const auto m = hybrid::fit(config, data.target, regs);
        summary.set("parameters", std::to_string(m.params.size()));
        summary.set("final_loss", io::format_exact(m.loss_history.empty() ? 0.0 : m.loss_history.back()));
        summary.set("epochs", std::to_string(m.loss_history.size()));
    }
    std::ofstream f(out / ("fit_" + name + ".txt"), std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot write fit summary");
    f << summary.dump();
    os << summary.dump();
    echo_config(c, "fit", out);
    return kOk;
}

int cmd_forecast(RunConfig& c, std::ostream& os) {
    auto data = load_data(c);
    const auto name = c.get("model", "");
    const auto spec = build_spec(name, c);
    const auto h = static_cast<std::size_t>(c.get_int("horizon", 12));
    const auto& y = data.target;
    std::vector<double> path;

    // Future regressor values are unknown; the last observation is carried forward.
    std::vector<double> last_exog;
    for (const auto& x : data.exog) last_exog.push_back(x.back());

    if (const auto* a = std::get_if<eval::ArimaSpec>(&spec)) {
        const std::span<const TimeSeries> x = a->use_exog ? std::span<const TimeSeries>(data.exog)
                                                          : std::span<const TimeSeries>{};
        const auto m = arima::fit(y, a->order, a->seasonal, x);
        std::vector<std::vector<double>> future;
        if (!x.empty()) future.assign(h, last_exog);
        path = arima::forecast_path(m, y, h, x, future);
    } else if (const auto* s = std::get_if<eval::SvrSpec>(&spec)) {
        const auto m = svr::fit(make_supervised(y, s->lags), s->config);
        std::vector<double> hist(y.values().begin(), y.values().end());
        for (std::size_t k = 0; k < h; ++k) {
            const double v = svr::predict(m, std::span<const double>(hist).last(s->lags));
            hist.push_back(v);
            path.push_back(v);
        }
    } else {
        const auto& hs = std::get<eval::HybridSpec>(spec);
        auto config = hs.config;
        const std::span<const TimeSeries> regs = hs.use_exog ? std::span<const TimeSeries>(data.exog)
                                                             : std::span<const TimeSeries>{};
        if (regs.empty()) config.reg_lags = 0;
        const auto m = hybrid::fit(config, y, regs);
        std::vector<double> hist(y.values().begin(), y.values().end());
        std::vector<std::vector<double>> reg_hist;
        for (const auto& r : regs) reg_hist.emplace_back(r.values().begin(), r.values().end());
        for (std::size_t k = 0; k < h; ++k) {
            std::vector<double> lags;
            for (std::size_t i = 0; i < m.ar_lags && m.ar_enabled(); ++i) lags.push_back(hist[hist.size() - 1 - i]);
            std::vector<std::vector<double>> reg_lags;
            for (auto& r : reg_hist) {
                std::vector<double> row;
                for (std::size_t i = 0; i < m.reg_lags; ++i) row.push_back(r[r.size() - 1 - i]);
                reg_lags.push_back(std::move(row));
            }
            const double v = hybrid::model_forward(m, static_cast<double>(hist.size()), lags, reg_lags, {});
            hist.push_back(v);
            for (auto& r : reg_hist) r.push_back(r.back());
            path.push_back(v);
        }
    }

    const auto out = prepare_out(c);
    const TimeSeries result(y.end().plus(1), path, name);
    io::write_series_csv(result, out / ("horizon_" + name + ".csv"));
    echo_config(c, "forecast", out);
    for (std::size_t i = 0; i < path.size(); ++i) {
        os << result.month_at(i).to_string() << "," << io::format_fixed(path[i], 2) << "\n";
    }
    return kOk;
}

int cmd_components(RunConfig& c, std::ostream& os) {
    auto data = load_data(c);
    const auto spec = build_spec("hybrid", c);
    const auto& hs = std::get<eval::HybridSpec>(spec);
    auto config = hs.config;
    const std::span<const TimeSeries> regs = hs.use_exog ? std::span<const TimeSeries>(data.exog)
                                                         : std::span<const TimeSeries>{};
    if (regs.empty()) config.reg_lags = 0;
    const auto m = hybrid::fit(config, data.target, regs);
    const auto rep = hybrid::components(m, data.target, regs);
    const auto out = prepare_out(c);

    std::ofstream csv(out / "components.csv", std::ios::binary);
    if (!csv) throw Error(ErrorCode::IoError, "cannot write components.csv");
    csv << "month,actual,fitted,trend,seasonality,autoregression,lagged_regression,future_regression\n";
    std::vector<std::string> ticks;
    for (std::size_t i = 0; i < rep.actual.size(); ++i) {
        const auto month = rep.start.plus(static_cast<long>(i)).to_string();
        ticks.push_back(month);
        csv << month << ',' << io::format_exact(rep.actual[i]) << ',' << io::format_exact(rep.fitted[i]) << ','
            << io::format_exact(rep.trend[i]) << ',' << io::format_exact(rep.seasonality[i]) << ','
            << io::format_exact(rep.autoregression[i]) << ',' << io::format_exact(rep.lagged_regression[i]) << ','
            << io::format_exact(rep.future_regression[i]) << '\n';
    }

    std::ofstream rel(out / "relevance.csv", std::ios::binary);
    if (!rel) throw Error(ErrorCode::IoError, "cannot write relevance.csv");
    rel << "input,lag,relevance\n";
    for (std::size_t i = 0; i < rep.ar_relevance.size(); ++i) {
        rel << "ar," << i + 1 << ',' << io::format_exact(rep.ar_relevance[i]) << '\n';
    }
    for (std::size_t r = 0; r < rep.reg_relevance.size(); ++r) {
        for (std::size_t i = 0; i < rep.reg_relevance[r].size(); ++i) {
            rel << rep.regressor_names[r] << ',' << i + 1 << ',' << io::format_exact(rep.reg_relevance[r][i]) << '\n';
        }
    }

    io::Figure fig;
    fig.title = "hybrid decomposition of " + data.target.name();
    fig.x_label = "month";
    fig.x_ticks = ticks;
    fig.panel_height = 180.0;
    fig.panels.push_back({"fit", "value", {{"actual", rep.actual, ""}, {"fitted", rep.fitted, ""}}});
    fig.panels.push_back({"trend", "value", {{"trend", rep.trend, ""}}});
    if (m.seasonality_enabled()) fig.panels.push_back({"seasonality", "value", {{"seasonality", rep.seasonality, ""}}});
    if (m.ar_enabled()) fig.panels.push_back({"autoregression", "value", {{"autoregression", rep.autoregression, ""}}});
    if (m.regressor_count() > 0) {
        fig.panels.push_back({"lagged regressors", "value", {{"lagged_regression", rep.lagged_regression, ""}}});
    }
    io::write_svg(fig, out / "components.svg");
    echo_config(c, "components", out);
    os << "wrote " << rep.actual.size() << " component rows to " << (out / "components.csv").string() << "\n";
    return kOk;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigError:
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidOrder:
            return kUsageError;
        default:
            return kDataError;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monthly tourism demand forecasting: ARIMA family, SVR and a hybrid additive model"};
    app.require_subcommand(1, 1);
    Flags flags;

    struct Command {
        const char* name;
        const char* help;
        int (*run)(RunConfig&, std::ostream&);
    };
    const std::vector<Command> commands{
        {"fit", "Fit one model on the whole series and print its parameters", cmd_fit},
        {"forecast", "Fit one model and forecast beyond the last month", cmd_forecast},
        {"evaluate", "Rolling one-step evaluation of one model over the test window", cmd_evaluate},
        {"compare", "Rolling one-step evaluation of the model suite", cmd_compare},
        {"components", "Fit the hybrid model and write its decomposition", cmd_components},
        {"synth", "Write a seeded synthetic visitors + search-index dataset", cmd_synth},
    };
    std::vector<CLI::App*> subs;
    for (const auto& cmd : commands) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("--config", flags.config_path, "key = value configuration file")->check(CLI::ExistingFile);
        sub->add_option("--set", flags.sets, "Override one configuration key (key=value)");
        sub->add_option("--seed", flags.seed, "Random seed");
        sub->add_option("--n-test", flags.n_test, "Length of the test window in months");
        sub->add_option("--out", flags.out, "Output directory");
        sub->add_option("--data", flags.data, "Target series CSV (month,value)");
        sub->add_option("--exog", flags.exog, "Regressor CSVs, comma separated, or none");
        sub->add_option("--model", flags.model, "arima, sarima, sarimax, svr or hybrid");
        sub->add_option("--models", flags.models, "Comma separated model suite for compare");
        sub->add_option("--months", flags.months, "Length of the synthetic series");
        sub->add_option("--horizon", flags.horizon, "Forecast horizon in months");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kUsageError;
    }

    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        try {
            auto config = resolve(commands[i].name, flags, *subs[i]);
            return commands[i].run(config, out);
        } catch (const UsageError& e) {
            err << "usage error: " << e.what() << "\n";
            return kUsageError;
        } catch (const Error& e) {
            err << (exit_code_for(e.code()) == kUsageError ? "usage error: " : "data error: ") << e.what() << "\n";
            return exit_code_for(e.code());
        } catch (const std::exception& e) {
            err << "data error: " << e.what() << "\n";
            return kDataError;
        }
    }
    return kUsageError;
}

}  // namespace tourcast::app
