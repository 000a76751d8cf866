#pragma once

#include "tourcast/series.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tourcast::svr {

enum class KernelKind { Linear, Polynomial, Gaussian };

struct KernelSpec {
    KernelKind kind = KernelKind::Gaussian;
    int degree = 3;      // polynomial only
    double sigma = 0.0;  // gaussian width; 0 picks the median pairwise distance at fit time

    static KernelSpec linear() { return {KernelKind::Linear, 1, 0.0}; }
    static KernelSpec polynomial(int degree) { return {KernelKind::Polynomial, degree, 0.0}; }
    static KernelSpec gaussian(double sigma = 0.0) { return {KernelKind::Gaussian, 3, sigma}; }

    std::string describe() const;
};

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> z);

struct SvrConfig {
    double c = 10.0;          // box constraint on each multiplier
    double epsilon = 0.05;    // tube half-width, in normalized target units
    KernelSpec kernel{};
    double tol = 1e-3;        // maximal KKT violation at termination
    std::size_t max_passes = 0;  // iteration cap = max_passes * n; 0 means 10 * n
    bool normalize = true;    // standardize inputs, map targets to [0, 1]
};

/// Per-feature standardization. Empty vectors mean identity.
struct FeatureScaler {
    std::vector<double> mean;
    std::vector<double> scale;

    std::vector<double> apply(std::span<const double> x) const;
};

/// Affine target map y -> (y - offset) / range.
struct TargetScaler {
    double offset = 0.0;
    double range = 1.0;

    double to_unit(double y) const { return (y - offset) / range; }
    double from_unit(double u) const { return u * range + offset; }
};

struct SvrModel {
    KernelSpec kernel;
    std::vector<std::vector<double>> support_inputs;  // normalized rows
    std::vector<double> dual_deltas;                  // lambda_i - lambda_i^*, never zero
    std::vector<std::size_t> support_indices;         // rows of the training frame
    double bias = 0.0;                                // normalized target units
    FeatureScaler input_scaler;
    TargetScaler target_scaler;

    double c = 0.0;
    double epsilon = 0.0;
    double dual_objective = 0.0;  // value of the maximized dual at the solution
    std::size_t iterations = 0;
    bool converged = true;

    std::size_t dimension() const noexcept {
        return support_inputs.empty() ? input_scaler.mean.size() : support_inputs.front().size();
    }
};

SvrModel fit(const SupervisedFrame& frame, const SvrConfig& config);

double predict(const SvrModel& model, std::span<const double> x);

/// One-step forecasts for the last `n_test` points, each built from observed lags.
std::vector<double> forecast_rolling(const SvrModel& model, const TimeSeries& series, std::size_t p,
                                     std::size_t n_test);
/// Fits on everything before the test window, then forecasts it.
std::vector<double> forecast_rolling(const SvrConfig& config, const TimeSeries& series, std::size_t p,
                                     std::size_t n_test);

}  // namespace tourcast::svr
