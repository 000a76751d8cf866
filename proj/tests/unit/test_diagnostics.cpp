#include "oracles.hpp"

#include "tourcast/diagnostics.hpp"
#include "tourcast/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tourcast;

namespace {

TimeSeries ts(std::vector<double> v) { return TimeSeries({2000, 1}, std::move(v), "y"); }

std::vector<double> white_noise(std::size_t n, std::uint64_t seed) {
    oracle::Normal rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng();
    return v;
}

}  // namespace

TEST(Acf, LagZeroIsOne) {
    const auto r = acf(ts({1, 4, 2, 8, 5, 7}), 3);
    EXPECT_EQ(r[0], 1.0);
    EXPECT_EQ(r.size(), 4u);
}

TEST(Acf, WhiteNoiseMatchesFormula) {
    const auto v = white_noise(5000, 21);
    const auto r = acf(ts(v), 10);
    for (std::size_t k = 1; k <= 10; ++k) {
        EXPECT_LT(std::abs(r[k]), 0.05);
        EXPECT_NEAR(r[k], oracle::autocorrelation(v, k), 1e-12);
    }
}

TEST(Acf, Ar1FirstLag) {
    const std::vector<double> phi{0.8};
    const auto v = oracle::simulate_ar(phi, 0.0, 1.0, 5000, 4);
    const auto r = acf(ts(v), 1);
    EXPECT_GE(r[1], 0.75);
    EXPECT_LE(r[1], 0.85);
    EXPECT_NEAR(r[1], oracle::autocorrelation(v, 1), 1e-12);
}

TEST(Acf, Errors) {
    EXPECT_THROW(acf(ts({1, 2, 3}), 3), Error);
    EXPECT_THROW(acf(ts({2, 2, 2, 2}), 1), Error);
}

TEST(Pacf, FirstEqualsAcf) {
    const auto v = white_noise(300, 2);
    EXPECT_EQ(pacf(ts(v), 5)[1], acf(ts(v), 5)[1]);
}

TEST(Pacf, Ar2CutsOff) {
    const std::vector<double> phi{0.6, -0.3};
    const auto v = oracle::simulate_ar(phi, 0.0, 1.0, 5000, 8);
    const auto r = pacf(ts(v), 10);
    for (std::size_t k = 3; k <= 10; ++k) EXPECT_LT(std::abs(r[k]), 0.05) << k;
    EXPECT_NEAR(r[2], -0.3, 0.05);
}

TEST(Pacf, MatchesYuleWalkerOracle) {
    const std::vector<double> phi{0.5, 0.2, -0.1};
    const auto v = oracle::simulate_ar(phi, 0.0, 1.0, 400, 17);
    const auto r = pacf(ts(v), 6);
    for (std::size_t k = 1; k <= 6; ++k) EXPECT_NEAR(r[k], oracle::partial_autocorrelation(v, k), 1e-10);
}

TEST(Pacf, WhiteNoise) {
    const auto r = pacf(ts(white_noise(5000, 33)), 10);
    for (std::size_t k = 1; k <= 10; ++k) EXPECT_LT(std::abs(r[k]), 0.05);
}

TEST(Pacf, LagTooLarge) {
    try {
        pacf(ts(white_noise(10, 1)), 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LagTooLarge);
    }
}

TEST(Correlations, StayInUnitInterval) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        oracle::Normal rng(seed);
        std::vector<double> v(60);
        double level = 0.0;
        for (auto& x : v) x = level += rng();
        for (double r : acf(ts(v), 20)) EXPECT_LE(std::abs(r), 1.0 + 1e-12);
        for (double r : pacf(ts(v), 20)) EXPECT_LE(std::abs(r), 1.0 + 1e-12);
    }
}

namespace {

double adf_oracle(const std::vector<double>& y) {
    const std::size_t n = y.size();
    const auto k = static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(n - 1))));
    std::vector<double> dy(n - 1);
    for (std::size_t t = 1; t < n; ++t) dy[t - 1] = y[t] - y[t - 1];
    oracle::Matrix x;
    std::vector<double> target;
    for (std::size_t t = k; t < dy.size(); ++t) {
        std::vector<double> row{1.0, y[t]};
        for (std::size_t i = 1; i <= k; ++i) row.push_back(dy[t - i]);
        x.push_back(row);
        target.push_back(dy[t]);
    }
    const auto b = oracle::ols(x, target);
    const std::size_t m = b.size();
    double rss = 0.0;
    for (std::size_t r = 0; r < x.size(); ++r) {
        double f = 0.0;
        for (std::size_t i = 0; i < m; ++i) f += x[r][i] * b[i];
        rss += (target[r] - f) * (target[r] - f);
    }
    const double s2 = rss / static_cast<double>(x.size() - m);
    // (X'X)^-1 entry for the lagged level: solve X'X v = e_1.
    oracle::Matrix xtx(m, std::vector<double>(m, 0.0));
    for (const auto& row : x) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) xtx[i][j] += row[i] * row[j];
        }
    }
    std::vector<double> e(m, 0.0);
    e[1] = 1.0;
    const auto v = oracle::solve(xtx, e);
    return b[1] / std::sqrt(s2 * v[1]);
}

}  // namespace

TEST(Adf, RandomWalkFailsToReject) {
    oracle::Normal rng(42);
    std::vector<double> y(500);
    double level = 0.0;
    for (auto& v : y) v = level += rng();
    const auto r = adf_test(ts(y));
    EXPECT_FALSE(r.reject_unit_root);
    EXPECT_NEAR(r.statistic, adf_oracle(y), 1e-8);
    EXPECT_EQ(r.lags, 7u);
}

TEST(Adf, WhiteNoiseRejects) {
    const auto y = white_noise(500, 43);
    const auto r = adf_test(ts(y));
    EXPECT_TRUE(r.reject_unit_root);
    EXPECT_LT(r.statistic, -2.86);
    EXPECT_NEAR(r.statistic, adf_oracle(y), 1e-8);
}

TEST(Adf, ConstantSeries) {
    try {
        adf_test(ts(std::vector<double>(40, 3.0)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstantSeries);
    }
}

TEST(Adf, TooShort) { EXPECT_THROW(adf_test(ts(white_noise(24, 1))), Error); }
