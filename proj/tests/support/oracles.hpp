#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

/// Gaussian elimination with partial pivoting. Throws std::runtime_error when singular.
std::vector<double> solve(Matrix a, std::vector<double> b);

/// Least squares through the normal equations X'X b = X'y.
std::vector<double> ols(const Matrix& x, std::span<const double> y);

/// Frame of [1, y_{t-1}, ..., y_{t-p}] rows with y_t targets, optionally without the constant.
struct LagFrame {
    Matrix x;
    std::vector<double> y;
};
LagFrame lag_frame(std::span<const double> values, std::size_t p, bool constant);

/// Naive (1-L)^d (1-L^M)^D by repeated subtraction.
std::vector<double> difference(std::vector<double> v, int d, int seasonal_d, int period);

double mean(std::span<const double> v);
double correlation(std::span<const double> a, std::span<const double> b);
/// Biased sample autocorrelation at one lag.
double autocorrelation(std::span<const double> v, std::size_t lag);
/// Last coefficient of the order-k Yule-Walker system.
double partial_autocorrelation(std::span<const double> v, std::size_t k);

/// Dense solve of the epsilon-SVR dual
///   max  -1/2 b'Kb - eps sum|b_i| + y'b   s.t. sum b = 0, -c <= b_i <= c
/// by a primal-dual interior point method on the split (lambda, lambda*) form followed by an
/// exact solve on the identified free set.
struct SvrDual {
    std::vector<double> beta;
    double bias = 0.0;
    double objective = 0.0;
};
SvrDual svr_dual(const Matrix& kernel, std::span<const double> y, double c, double eps);
double svr_dual_objective(const Matrix& kernel, std::span<const double> y, double eps,
                          std::span<const double> beta);

/// Central differences of f at x with step h.
std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::vector<double> x, double h);

/// Seeded Gaussian draws for simulations.
class Normal {
public:
    explicit Normal(std::uint64_t seed) : rng_(seed) {}
    double operator()(double sd = 1.0) { return dist_(rng_) * sd; }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> dist_{0.0, 1.0};
};

/// y_t = c + sum phi_i y_{t-i} + e_t with a discarded burn-in.
std::vector<double> simulate_ar(std::span<const double> phi, double c, double sd, std::size_t n,
                                std::uint64_t seed);

}  // namespace oracle
