#include "oracles.hpp"

#include "tourcast/arima.hpp"
#include "tourcast/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tourcast;
using namespace tourcast::arima;

namespace {

TimeSeries ts(std::vector<double> v, std::string name = "y") { return TimeSeries({2010, 1}, std::move(v), name); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::ConfigError;
}

ArimaModel ar_model(std::vector<double> phi, double intercept = 0.0, int d = 0) {
    ArimaModel m;
    m.order = {static_cast<int>(phi.size()), d, 0};
    m.phi = std::move(phi);
    m.intercept = intercept;
    return m;
}

std::vector<double> periodic_plus_trend(std::size_t n) {
    const double profile[12] = {3, -1, 4, 1, -5, 9, 2, -6, 5, 3, -5, 8};
    std::vector<double> v(n);
    for (std::size_t t = 0; t < n; ++t) v[t] = 100.0 + 2.0 * static_cast<double>(t) + 10.0 * profile[t % 12];
    return v;
}

}  // namespace

TEST(ExpandLagPolynomial, SeasonalProduct) {
    const std::vector<double> a{0.5};
    const std::vector<double> b{0.3};
    const auto c = expand_lag_polynomial(a, b, 12);
    ASSERT_EQ(c.size(), 13u);
    for (std::size_t k = 1; k <= 13; ++k) {
        const double want = k == 1 ? 0.5 : k == 12 ? 0.3 : k == 13 ? -0.15 : 0.0;
        EXPECT_NEAR(c[k - 1], want, 1e-15) << k;
    }
}

TEST(ExpandLagPolynomial, EmptySeasonalIsIdentity) {
    const std::vector<double> a{0.1, -0.4, 0.7};
    EXPECT_EQ(expand_lag_polynomial(a, {}, 12), a);
}

TEST(ExpandLagPolynomial, PureSeasonal) {
    const std::vector<double> b{0.6};
    const auto c = expand_lag_polynomial({}, b, 4);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(c, (std::vector<double>{0, 0, 0, 0.6}));
}

TEST(ArimaFit, Ar1WithinBandAndMatchesOls) {
    const std::vector<double> phi{0.7};
    const auto y = oracle::simulate_ar(phi, 0.0, 1.0, 2000, 101);
    const auto m = fit(ts(y), {1, 0, 0});
    EXPECT_GE(m.phi[0], 0.65);
    EXPECT_LE(m.phi[0], 0.75);
    const auto frame = oracle::lag_frame(y, 1, true);
    const auto b = oracle::ols(frame.x, frame.y);
    EXPECT_NEAR(m.phi[0], b[1], 1e-5);
    EXPECT_NEAR(m.intercept, b[0], 1e-5);
    EXPECT_LE(m.css, m.initial_css);
    EXPECT_TRUE(m.converged);
}

TEST(ArimaFit, ExactRecursionRecovered) {
    std::vector<double> y{0.0};
    for (int t = 1; t < 60; ++t) y.push_back(0.5 * y.back() + 1.0);
    const auto m = fit(ts(y), {1, 0, 0});
    EXPECT_NEAR(m.phi[0], 0.5, 1e-6);
    EXPECT_NEAR(m.intercept, 1.0, 1e-6);
    const auto res = residuals(m, ts(y));
    for (double r : res.values()) EXPECT_NEAR(r, 0.0, 1e-8);
}

TEST(ArimaFit, DefaultOrderOnLongSeries) {
    oracle::Normal rng(9);
    std::vector<double> y(156);
    double level = 1000.0;
    for (auto& v : y) v = level += 10.0 + rng(50.0);
    const auto m = fit(ts(y), {3, 1, 0});
    EXPECT_EQ(m.phi.size(), 3u);
    EXPECT_EQ(m.intercept, 0.0);
    EXPECT_GE(m.sigma2, 0.0);
    EXPECT_EQ(m.pivots.size(), 1u);
}

TEST(ArimaFit, CssNeverWorseThanInitialPoint) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::vector<double> phi{0.4, 0.2};
        auto y = oracle::simulate_ar(phi, 1.0, 2.0, 300, seed);
        const auto m = fit(ts(y), {2, 0, 1});
        EXPECT_LE(m.css, m.initial_css * (1 + 1e-12));
    }
}

TEST(ArimaFit, Ma1Recovered) {
    oracle::Normal rng(77);
    std::vector<double> e(3001);
    for (auto& v : e) v = rng();
    std::vector<double> y;
    for (std::size_t t = 1; t < e.size(); ++t) y.push_back(e[t] + 0.5 * e[t - 1]);
    const auto m = fit(ts(y), {0, 0, 1});
    EXPECT_NEAR(m.theta[0], 0.5, 0.05);
    EXPECT_NEAR(m.sigma2, 1.0, 0.08);
}

TEST(ArimaFit, SeasonalAnnihilation) {
    const auto y = periodic_plus_trend(96);
    const auto m = fit(ts(y), {3, 1, 0}, {1, 1, 0, 12});
    const auto res = residuals(m, ts(y));
    for (double r : res.values()) EXPECT_LT(std::abs(r), 1e-6);
}

TEST(ArimaFit, RejectsInterceptOnlyModel) {
    EXPECT_EQ(code_of([] { fit(ts(std::vector<double>(50, 1.0)), {0, 0, 0}); }), ErrorCode::InvalidOrder);
}

TEST(ArimaFit, SeriesTooShort) {
    EXPECT_EQ(code_of([] { fit(ts({1, 2, 3, 4, 5}), {3, 1, 0}); }), ErrorCode::SeriesTooShort);
}

TEST(ArimaFit, CollinearExog) {
    oracle::Normal rng(3);
    std::vector<double> y(80), x(80);
    for (std::size_t t = 0; t < 80; ++t) {
        x[t] = rng();
        y[t] = 2.0 * x[t] + rng();
    }
    const std::vector<TimeSeries> exog{ts(x, "a"), ts(x, "b")};
    EXPECT_EQ(code_of([&] { fit(ts(y), {1, 0, 0}, {}, exog); }), ErrorCode::SingularDesign);
}

TEST(ArimaFit, MisalignedExog) {
    const std::vector<TimeSeries> exog{ts(std::vector<double>(79, 1.0), "x")};
    EXPECT_EQ(code_of([&] { fit(ts(std::vector<double>(80, 1.0)), {1, 0, 0}, {}, exog); }),
              ErrorCode::MisalignedRegressor);
}

TEST(ArimaFit, ExogCoefficientRecovered) {
    oracle::Normal rng(5);
    std::vector<double> x(400), y(400);
    double u = 0.0;
    for (std::size_t t = 0; t < 400; ++t) {
        x[t] = 10.0 * rng();
        u = 0.5 * u + rng();
        y[t] = 3.0 * x[t] + u;
    }
    const std::vector<TimeSeries> exog{ts(x, "x")};
    const auto m = fit(ts(y), {1, 0, 0}, {}, exog);
    EXPECT_NEAR(m.exog_beta[0], 3.0, 0.02);
    EXPECT_NEAR(m.phi[0], 0.5, 0.1);
}

TEST(ArimaFit, NonConvergenceReported) {
    const std::vector<double> phi{0.5, -0.2};
    const auto y = oracle::simulate_ar(phi, 0.0, 1.0, 500, 2);
    FitOptions opts;
    opts.optimizer.max_iterations = 3;
    EXPECT_EQ(code_of([&] { fit(ts(y), {2, 0, 1}, {}, {}, opts); }), ErrorCode::NonConvergence);
    opts.throw_on_nonconvergence = false;
    EXPECT_FALSE(fit(ts(y), {2, 0, 1}, {}, {}, opts).converged);
}

TEST(ArimaFit, NearUnitRootFlag) {
    oracle::Normal rng(12);
    std::vector<double> y(500);
    double level = 0.0;
    for (auto& v : y) v = level += rng();
    EXPECT_TRUE(fit(ts(y), {1, 0, 0}).near_unit_root);
    const std::vector<double> phi{0.3};
    EXPECT_FALSE(fit(ts(oracle::simulate_ar(phi, 0.0, 1.0, 500, 3)), {1, 0, 0}).near_unit_root);
}

TEST(ForecastOneStep, Ar1Substitution) {
    const auto m = ar_model({0.8});
    EXPECT_DOUBLE_EQ(forecast_one_step(m, ts({3, 5, 10})), 8.0);
}

TEST(ForecastOneStep, RandomWalk) {
    ArimaModel m;
    m.order = {0, 1, 0};
    EXPECT_DOUBLE_EQ(forecast_one_step(m, ts({40, 41, 42})), 42.0);
}

TEST(ForecastOneStep, ExogIsAffine) {
    auto m = ar_model({0.5});
    m.exog_beta = {2.0};
    const auto y = ts({1, 2, 3, 4});
    const std::vector<TimeSeries> x{ts({0.5, 1, 1.5, 2}, "x")};
    const std::vector<double> at0{0.0};
    const std::vector<double> at3{3.0};
    const double base = forecast_one_step(m, y, x, at0);
    EXPECT_NEAR(forecast_one_step(m, y, x, at3) - base, 6.0, 1e-12);
}

TEST(ForecastOneStep, Errors) {
    auto m = ar_model({0.5, 0.1});
    EXPECT_EQ(code_of([&] { forecast_one_step(m, ts({1})); }), ErrorCode::HistoryTooShort);
    m.exog_beta = {1.0};
    EXPECT_EQ(code_of([&] { forecast_one_step(m, ts({1, 2, 3})); }), ErrorCode::MissingExogenous);
}

TEST(ForecastOneStep, MaUsesFilteredResiduals) {
    ArimaModel m;
    m.order = {0, 0, 1};
    m.theta = {0.5};
    m.intercept = 1.0;
    // e_0 = 3 - 1 = 2, e_1 = 2 - 1 - 0.5 * 2 = 0, forecast = 1 + 0.5 * 0
    EXPECT_DOUBLE_EQ(forecast_one_step(m, ts({3, 2})), 1.0);
    // e_1 = 4 - 1 - 1 = 2, forecast = 1 + 1
    EXPECT_DOUBLE_EQ(forecast_one_step(m, ts({3, 4})), 2.0);
}

TEST(ForecastPath, GeometricDecay) {
    const auto path = forecast_path(ar_model({0.5}), ts({1, 16}), 3);
    EXPECT_EQ(path, (std::vector<double>{8, 4, 2}));
}

TEST(ForecastPath, FirstStepMatchesOneStep) {
    const std::vector<double> phi{0.4, 0.3};
    const auto y = ts(oracle::simulate_ar(phi, 2.0, 1.0, 200, 4));
    const auto m = fit(y, {2, 1, 1});
    const auto path = forecast_path(m, y, 12);
    EXPECT_EQ(path.size(), 12u);
    EXPECT_DOUBLE_EQ(path[0], forecast_one_step(m, y));
}

TEST(Residuals, CountAndVariance) {
    const std::vector<double> phi{0.6};
    const auto y = oracle::simulate_ar(phi, 0.0, 1.0, 5000, 31);
    const auto m = fit(ts(y), {1, 0, 0});
    const auto r = residuals(m, ts(y));
    EXPECT_EQ(r.size(), y.size() - 1);
    double ss = 0.0;
    double mean = 0.0;
    for (double v : r.values()) mean += v;
    mean /= static_cast<double>(r.size());
    for (double v : r.values()) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(r.size()));
    EXPECT_GE(sd, 0.95);
    EXPECT_LE(sd, 1.05);
    double ms = 0.0;
    for (double v : r.values()) ms += v * v;
    EXPECT_NEAR(ms / static_cast<double>(r.size()), m.sigma2, 1e-9);
}

TEST(Residuals, CountWithSeasonalDifferencing) {
    const auto y = periodic_plus_trend(80);
    const auto m = fit(ts(y), {3, 1, 0}, {1, 1, 0, 12});
    // differenced length 80 - 13, minus combined AR lag 15
    EXPECT_EQ(residuals(m, ts(y)).size(), 80u - 13u - 15u);
}

TEST(ArimaModel, ValidateShapes) {
    auto m = ar_model({0.5});
    m.theta = {0.1};
    EXPECT_EQ(code_of([&] { m.validate(); }), ErrorCode::InvalidOrder);
}
