#include "tourcast/arima.hpp"

#include "least_squares.hpp"
#include "tourcast/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tourcast::arima {

namespace {

constexpr double kUnitRootMargin = 1.02;

std::size_t to_size(int v) { return static_cast<std::size_t>(v); }

std::vector<double> apply_polynomial(std::span<const double> y, const std::vector<double>& poly) {
    const std::size_t k = poly.size() - 1;
    std::vector<double> out;
    if (y.size() <= k) {
        return out;
    }
    out.resize(y.size() - k);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j <= k; ++j) {
            s += poly[j] * y[i + k - j];
        }
        out[i] = s;
    }
    return out;
}

/// e_t = v_t - constant - sum ar_k v_{t-k} - sum ma_k e_{t-k} for t >= r, with e = 0 before r.
/// Returns the n - r innovations from t = r on.
std::vector<double> innovations(std::span<const double> v, const std::vector<double>& ar,
                                const std::vector<double>& ma, double constant) {
    const std::size_t r = ar.size();
    if (v.size() <= r) {
        return {};
    }
    std::vector<double> e(v.size() - r, 0.0);
    for (std::size_t t = r; t < v.size(); ++t) {
        double s = v[t] - constant;
        for (std::size_t k = 1; k <= r; ++k) {
            s -= ar[k - 1] * v[t - k];
        }
        for (std::size_t k = 1; k <= ma.size() && k + r <= t; ++k) {
            s -= ma[k - 1] * e[t - r - k];
        }
        e[t - r] = s;
    }
    return e;
}

std::vector<double> ma_from(std::span<const double> theta, std::span<const double> seasonal_theta, int period) {
    std::vector<double> a(theta.begin(), theta.end());
    std::vector<double> b(seasonal_theta.begin(), seasonal_theta.end());
    for (auto& v : a) v = -v;
    for (auto& v : b) v = -v;
    auto c = expand_lag_polynomial(a, b, period);
    for (auto& v : c) v = -v;
    return c;
}

struct Differenced {
    std::vector<double> w;
    std::vector<std::vector<double>> xt;
};

Differenced prepare(const TimeSeries& series, std::span<const TimeSeries> exog,
                    const std::vector<double>& dpoly) {
    Differenced out;
    out.w = apply_polynomial(series.values(), dpoly);
    for (const auto& x : exog) {
        out.xt.push_back(apply_polynomial(x.values(), dpoly));
    }
    return out;
}

void check_alignment(const TimeSeries& series, std::span<const TimeSeries> exog) {
    for (const auto& x : exog) {
        if (!x.same_range(series)) {
            throw Error(ErrorCode::MisalignedRegressor,
                        "regressor '" + x.name() + "' spans " + x.start().to_string() + ".." +
                            x.end().to_string() + " but the target spans " + series.start().to_string() +
                            ".." + series.end().to_string());
        }
    }
}

struct ArmaParams {
    std::vector<double> phi, theta, sphi, stheta;
};

struct Layout {
    std::size_t p, q, sp, sq;
    int period;

    std::size_t size() const { return p + q + sp + sq; }

    ArmaParams unpack(std::span<const double> x) const {
        ArmaParams a;
        auto it = x.begin();
        a.phi.assign(it, it + static_cast<std::ptrdiff_t>(p));
        it += static_cast<std::ptrdiff_t>(p);
        a.theta.assign(it, it + static_cast<std::ptrdiff_t>(q));
        it += static_cast<std::ptrdiff_t>(q);
        a.sphi.assign(it, it + static_cast<std::ptrdiff_t>(sp));
        it += static_cast<std::ptrdiff_t>(sp);
        a.stheta.assign(it, it + static_cast<std::ptrdiff_t>(sq));
        return a;
    }
};

struct Profile {
    double css = std::numeric_limits<double>::infinity();
    double intercept = 0.0;
    std::vector<double> beta;
    std::size_t n_eff = 0;
};

/// CSS with intercept and regression coefficients concentrated out; they enter the
/// innovations linearly once the ARMA polynomials are fixed.
Profile profile(const Differenced& data, const ArmaParams& arma, int period, bool with_intercept) {
    const auto ar = expand_lag_polynomial(arma.phi, arma.sphi, period);
    const auto ma = ma_from(arma.theta, arma.stheta, period);
    const auto base = innovations(data.w, ar, ma, 0.0);
    Profile out;
    out.n_eff = base.size();
    const std::size_t k = (with_intercept ? 1 : 0) + data.xt.size();
    if (k == 0) {
        double css = 0.0;
        for (double e : base) css += e * e;
        out.css = css;
        return out;
    }
    Eigen::MatrixXd g(static_cast<Eigen::Index>(base.size()), static_cast<Eigen::Index>(k));
    Eigen::Index col = 0;
    if (with_intercept) {
        const std::vector<double> zeros(data.w.size(), 0.0);
        const auto fc = innovations(zeros, ar, ma, -1.0);
        for (std::size_t i = 0; i < fc.size(); ++i) g(static_cast<Eigen::Index>(i), col) = fc[i];
        ++col;
    }
    for (const auto& x : data.xt) {
        const auto fx = innovations(x, ar, ma, 0.0);
        for (std::size_t i = 0; i < fx.size(); ++i) g(static_cast<Eigen::Index>(i), col) = fx[i];
        ++col;
    }
    const Eigen::Map<const Eigen::VectorXd> target(base.data(), static_cast<Eigen::Index>(base.size()));
    const auto sol = detail::ols(g, target);
    out.css = sol.rss;
    col = 0;
    if (with_intercept) {
        out.intercept = sol.coef(col++);
    }
    for (std::size_t j = 0; j < data.xt.size(); ++j) {
        out.beta.push_back(sol.coef(col++));
    }
    return out;
}

/// Hannan-Rissanen: long-AR residuals stand in for the innovations, then one regression
/// on lagged values and lagged residual proxies.
std::vector<double> hannan_rissanen(const Differenced& data, const Layout& layout, bool with_intercept) {
    const auto& w = data.w;
    const std::size_t n = w.size();
    const std::size_t m = to_size(std::max(layout.period, 1));
    std::vector<double> start(layout.size(), 0.0);

    std::vector<double> u = w;
    if (!data.xt.empty()) {
        Eigen::MatrixXd x(static_cast<Eigen::Index>(n),
                          static_cast<Eigen::Index>(data.xt.size() + (with_intercept ? 1 : 0)));
        Eigen::Index c = 0;
        if (with_intercept) x.col(c++).setOnes();
        for (const auto& col : data.xt) {
            x.col(c++) = Eigen::Map<const Eigen::VectorXd>(col.data(), static_cast<Eigen::Index>(n));
        }
        const auto beta = detail::min_norm_solve(x, Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(n)));
        for (std::size_t t = 0; t < n; ++t) {
            for (std::size_t j = 0; j < data.xt.size(); ++j) {
                u[t] -= beta(static_cast<Eigen::Index>(j + (with_intercept ? 1 : 0))) * data.xt[j][t];
            }
        }
    }

    const std::size_t ar_span = std::max(layout.p, layout.sp * m);
    const std::size_t ma_span = std::max(layout.q, layout.sq * m);
    std::vector<double> resid(n, 0.0);
    std::size_t first = ar_span;
    if (ma_span > 0) {
        std::size_t long_order = std::max(ar_span, ma_span) + 1;
        long_order = std::min(long_order, n / 3);
        if (long_order == 0 || n < 3 * long_order) {
            return start;
        }
        Eigen::MatrixXd x(static_cast<Eigen::Index>(n - long_order), static_cast<Eigen::Index>(long_order + 1));
        Eigen::VectorXd y(static_cast<Eigen::Index>(n - long_order));
        for (std::size_t t = long_order; t < n; ++t) {
            const auto r = static_cast<Eigen::Index>(t - long_order);
            y(r) = u[t];
            x(r, 0) = 1.0;
            for (std::size_t k = 1; k <= long_order; ++k) x(r, static_cast<Eigen::Index>(k)) = u[t - k];
        }
        const Eigen::VectorXd coef = detail::min_norm_solve(x, y);
        const Eigen::VectorXd fitted = x * coef;
        for (std::size_t t = long_order; t < n; ++t) {
            resid[t] = u[t] - fitted(static_cast<Eigen::Index>(t - long_order));
        }
        first = std::max(ar_span, long_order + ma_span);
    }

    const std::size_t cols = (with_intercept ? 1 : 0) + layout.size();
    if (n <= first + cols) {
        return start;
    }
    const std::size_t rows = n - first;
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows));
    for (std::size_t t = first; t < n; ++t) {
        const auto r = static_cast<Eigen::Index>(t - first);
        Eigen::Index c = 0;
        y(r) = u[t];
        if (with_intercept) x(r, c++) = 1.0;
        for (std::size_t i = 1; i <= layout.p; ++i) x(r, c++) = u[t - i];
        for (std::size_t i = 1; i <= layout.q; ++i) x(r, c++) = resid[t - i];
        for (std::size_t j = 1; j <= layout.sp; ++j) x(r, c++) = u[t - j * m];
        for (std::size_t j = 1; j <= layout.sq; ++j) x(r, c++) = resid[t - j * m];
    }
    const Eigen::VectorXd coef = detail::min_norm_solve(x, y);
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const double v = coef(static_cast<Eigen::Index>(i + (with_intercept ? 1 : 0)));
        start[i] = std::isfinite(v) ? v : 0.0;
    }
    return start;
}

bool has_near_unit_root(const std::vector<double>& ar) {
    if (ar.empty()) {
        return false;
    }
    // Companion eigenvalues are the reciprocals of the AR polynomial roots.
    const auto r = static_cast<Eigen::Index>(ar.size());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(r, r);
    for (Eigen::Index k = 0; k < r; ++k) companion(0, k) = ar[static_cast<std::size_t>(k)];
    for (Eigen::Index k = 1; k < r; ++k) companion(k, k - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    double largest = 0.0;
    for (Eigen::Index k = 0; k < r; ++k) largest = std::max(largest, std::abs(solver.eigenvalues()(k)));
    return largest > 0.0 && 1.0 / largest <= kUnitRootMargin;
}

void validate_orders(const ArimaOrder& order, const SeasonalOrder& seasonal) {
    if (order.p < 0 || order.d < 0 || order.q < 0 || seasonal.P < 0 || seasonal.D < 0 || seasonal.Q < 0) {
        throw Error(ErrorCode::InvalidOrder, "orders must be non-negative");
    }
    if (seasonal.active() && seasonal.M < 2) {
        throw Error(ErrorCode::InvalidOrder, "seasonal period M must be at least 2");
    }
}

/// Incremental differencing + filtering used by forecasting and residual extraction.
class Recursion {
public:
    Recursion(const ArimaModel& model, std::size_t n_exog)
        : model_(model),
          dpoly_(differencing_polynomial(model.order.d, model.seasonal.D, model.seasonal.M)),
          ar_(model.ar_lags()),
          ma_(model.ma_lags()),
          x_(n_exog),
          xt_(n_exog) {}

    std::size_t order_of_differencing() const { return dpoly_.size() - 1; }
    std::size_t differenced_size() const { return w_.size(); }
    const std::vector<double>& innovations() const { return e_; }

    void push(double y, std::span<const double> x, bool forecast) {
        y_.push_back(y);
        for (std::size_t j = 0; j < x_.size(); ++j) x_[j].push_back(x[j]);
        const std::size_t k = order_of_differencing();
        if (y_.size() <= k) {
            return;
        }
        double w = 0.0;
        for (std::size_t i = 0; i <= k; ++i) w += dpoly_[i] * y_[y_.size() - 1 - i];
        double u = w;
        for (std::size_t j = 0; j < x_.size(); ++j) {
            double xt = 0.0;
            for (std::size_t i = 0; i <= k; ++i) xt += dpoly_[i] * x_[j][x_[j].size() - 1 - i];
            xt_[j].push_back(xt);
            u -= model_.exog_beta[j] * xt;
        }
        const std::size_t t = w_.size();
        double e = 0.0;
        if (!forecast && t >= ar_.size()) {
            e = u - model_.intercept - arma_part(t);
        }
        w_.push_back(w);
        u_.push_back(u);
        e_.push_back(e);
    }

    /// Conditional mean of the next observation on the original scale.
    double next_mean(std::span<const double> x_next) const {
        const std::size_t k = order_of_differencing();
        const std::size_t t = w_.size();
        double w_hat = model_.intercept + arma_part(t);
        for (std::size_t j = 0; j < x_.size(); ++j) {
            double xt = x_next[j];
            for (std::size_t i = 1; i <= k; ++i) xt += dpoly_[i] * x_[j][x_[j].size() - i];
            w_hat += model_.exog_beta[j] * xt;
        }
        double y_hat = w_hat;
        for (std::size_t i = 1; i <= k; ++i) y_hat -= dpoly_[i] * y_[y_.size() - i];
        return y_hat;
    }

private:
    // sum ar_k u_{t-k} + sum ma_k e_{t-k}; pre-sample innovations are zero.
    double arma_part(std::size_t t) const {
        double s = 0.0;
        for (std::size_t i = 1; i <= ar_.size(); ++i) s += ar_[i - 1] * u_[t - i];
        for (std::size_t i = 1; i <= ma_.size() && i <= t; ++i) s += ma_[i - 1] * e_[t - i];
        return s;
    }

    const ArimaModel& model_;
    std::vector<double> dpoly_;
    std::vector<double> ar_;
    std::vector<double> ma_;
    std::vector<double> y_;
    std::vector<std::vector<double>> x_;
    std::vector<double> w_;
    std::vector<double> u_;
    std::vector<double> e_;
    std::vector<std::vector<double>> xt_;
};

Recursion run_history(const ArimaModel& model, const TimeSeries& history, std::span<const TimeSeries> exog) {
    model.validate();
    if (exog.size() != model.exog_beta.size()) {
        throw Error(ErrorCode::MissingExogenous, "model has " + std::to_string(model.exog_beta.size()) +
                                                     " regressors, got " + std::to_string(exog.size()) +
                                                     " history series");
    }
    check_alignment(history, exog);
    Recursion rec(model, exog.size());
    const std::size_t needed = model.dropped_by_differencing() + model.ar_lags().size();
    if (history.size() < std::max<std::size_t>(needed, 1)) {
        throw Error(ErrorCode::HistoryTooShort, "history of length " + std::to_string(history.size()) +
                                                    " but the model needs " + std::to_string(needed));
    }
    std::vector<double> x(exog.size());
    for (std::size_t t = 0; t < history.size(); ++t) {
        for (std::size_t j = 0; j < exog.size(); ++j) x[j] = exog[j][t];
        rec.push(history[t], x, false);
    }
    return rec;
}

}  // namespace

void ArimaModel::validate() const {
    validate_orders(order, seasonal);
    if (phi.size() != to_size(order.p) || theta.size() != to_size(order.q) ||
        seasonal_phi.size() != to_size(seasonal.P) || seasonal_theta.size() != to_size(seasonal.Q)) {
        throw Error(ErrorCode::InvalidOrder, "coefficient vector lengths do not match the declared orders");
    }
    if (sigma2 < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "sigma2 must be non-negative");
    }
}

std::size_t ArimaModel::dropped_by_differencing() const {
    return to_size(order.d) + to_size(seasonal.D) * to_size(std::max(seasonal.M, 0));
}

std::vector<double> ArimaModel::ar_lags() const {
    return expand_lag_polynomial(phi, seasonal_phi, seasonal.M);
}

std::vector<double> ArimaModel::ma_lags() const {
    return ma_from(theta, seasonal_theta, seasonal.M);
}

std::vector<double> expand_lag_polynomial(std::span<const double> nonseasonal, std::span<const double> seasonal,
                                          int period) {
    const std::size_t m = seasonal.empty() ? 0 : to_size(period);
    std::vector<double> out(nonseasonal.size() + seasonal.size() * m, 0.0);
    for (std::size_t i = 1; i <= nonseasonal.size(); ++i) out[i - 1] += nonseasonal[i - 1];
    for (std::size_t j = 1; j <= seasonal.size(); ++j) {
        out[j * m - 1] += seasonal[j - 1];
        for (std::size_t i = 1; i <= nonseasonal.size(); ++i) {
            out[i + j * m - 1] -= nonseasonal[i - 1] * seasonal[j - 1];
        }
    }
    return out;
}

ArimaModel fit(const TimeSeries& series, const ArimaOrder& order, const SeasonalOrder& seasonal,
               std::span<const TimeSeries> exog, const FitOptions& options) {
    validate_orders(order, seasonal);
    const bool with_intercept = order.d + seasonal.D == 0;
    if (order.p + order.q + seasonal.P + seasonal.Q == 0 && with_intercept && exog.empty()) {
        throw Error(ErrorCode::InvalidOrder, "intercept-only model: need p + q >= 1, differencing or regressors");
    }
    check_alignment(series, exog);

    const Layout layout{to_size(order.p), to_size(order.q), to_size(seasonal.P), to_size(seasonal.Q), seasonal.M};
    const auto dpoly = differencing_polynomial(order.d, seasonal.D, seasonal.M);
    const Differenced data = prepare(series, exog, dpoly);

    const std::size_t max_lag = layout.p + layout.sp * to_size(std::max(seasonal.M, 0));
    const std::size_t n_params = layout.size() + (with_intercept ? 1 : 0) + exog.size();
    if (data.w.size() <= n_params + max_lag) {
        throw Error(ErrorCode::SeriesTooShort, "differenced length " + std::to_string(data.w.size()) +
                                                   " must exceed parameter count plus maximum lag (" +
                                                   std::to_string(n_params + max_lag) + ")");
    }
    if (!exog.empty()) {
        // Collinear regressors are rejected up front rather than inside the optimizer.
        Eigen::MatrixXd x(static_cast<Eigen::Index>(data.w.size()),
                          static_cast<Eigen::Index>(exog.size() + (with_intercept ? 1 : 0)));
        Eigen::Index c = 0;
        if (with_intercept) x.col(c++).setOnes();
        for (const auto& col : data.xt) {
            x.col(c++) = Eigen::Map<const Eigen::VectorXd>(col.data(), static_cast<Eigen::Index>(col.size()));
        }
        detail::ols(x, Eigen::VectorXd::Zero(x.rows()));
    }

    auto objective = [&](std::span<const double> x) {
        try {
            return profile(data, layout.unpack(x), seasonal.M, with_intercept).css;
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    auto start = hannan_rissanen(data, layout, with_intercept);
    double start_value = objective(start);
    if (!std::isfinite(start_value)) {
        std::fill(start.begin(), start.end(), 0.0);
        start_value = objective(start);
    }
    const auto opt = nelder_mead(objective, start, options.optimizer);
    if (!opt.converged && options.throw_on_nonconvergence) {
        throw Error(ErrorCode::NonConvergence, "Nelder-Mead hit the iteration cap of " +
                                                   std::to_string(options.optimizer.max_iterations));
    }

    const auto arma = layout.unpack(opt.x);
    const auto best = profile(data, arma, seasonal.M, with_intercept);

    ArimaModel model;
    model.order = order;
    model.seasonal = seasonal;
    model.phi = arma.phi;
    model.theta = arma.theta;
    model.seasonal_phi = arma.sphi;
    model.seasonal_theta = arma.stheta;
    model.exog_beta = best.beta;
    model.intercept = best.intercept;
    model.css = best.css;
    model.initial_css = start_value;
    model.effective_n = best.n_eff;
    model.sigma2 = best.css / static_cast<double>(best.n_eff);
    model.iterations = opt.iterations;
    model.converged = opt.converged;
    model.near_unit_root = has_near_unit_root(model.ar_lags());
    const std::size_t dropped = model.dropped_by_differencing();
    model.pivots.assign(series.values().begin(), series.values().begin() + static_cast<std::ptrdiff_t>(dropped));
    return model;
}

double forecast_one_step(const ArimaModel& model, const TimeSeries& history, std::span<const TimeSeries> exog_history,
                         std::span<const double> exog_next) {
    if (exog_next.size() != model.exog_beta.size()) {
        throw Error(ErrorCode::MissingExogenous, "expected " + std::to_string(model.exog_beta.size()) +
                                                     " next-step regressor values, got " +
                                                     std::to_string(exog_next.size()));
    }
    const auto rec = run_history(model, history, exog_history);
    return rec.next_mean(exog_next);
}

std::vector<double> forecast_path(const ArimaModel& model, const TimeSeries& history, std::size_t h,
                                  std::span<const TimeSeries> exog_history,
                                  const std::vector<std::vector<double>>& exog_future) {
    if (h == 0) {
        throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
    }
    const std::size_t k = model.exog_beta.size();
    if (k > 0 && exog_future.size() < h) {
        throw Error(ErrorCode::MissingExogenous, "need regressor values for all " + std::to_string(h) + " steps");
    }
    for (std::size_t i = 0; i < std::min(h, exog_future.size()); ++i) {
        if (exog_future[i].size() != k) {
            throw Error(ErrorCode::MissingExogenous, "regressor row " + std::to_string(i) + " has the wrong width");
        }
    }
    auto rec = run_history(model, history, exog_history);
    std::vector<double> path;
    path.reserve(h);
    const std::vector<double> none;
    for (std::size_t i = 0; i < h; ++i) {
        const std::span<const double> x = k > 0 ? std::span<const double>(exog_future[i]) : std::span<const double>(none);
        const double y_hat = rec.next_mean(x);
        path.push_back(y_hat);
        rec.push(y_hat, x, true);
    }
    return path;
}

TimeSeries residuals(const ArimaModel& model, const TimeSeries& series, std::span<const TimeSeries> exog) {
    const auto rec = run_history(model, series, exog);
    const std::size_t r = model.ar_lags().size();
    const auto& e = rec.innovations();
    if (e.size() <= r) {
        throw Error(ErrorCode::HistoryTooShort, "no usable observations after differencing and AR lags");
    }
    const std::size_t offset = model.dropped_by_differencing() + r;
    return TimeSeries(series.month_at(offset), std::vector<double>(e.begin() + static_cast<std::ptrdiff_t>(r), e.end()),
                      series.name() + "_residuals");
}

}  // namespace tourcast::arima
