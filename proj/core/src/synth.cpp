#include "tourcast/synth.hpp"

#include "tourcast/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace tourcast::io {

namespace {

class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : rng_(seed) {}

    // Box-Muller on 53-bit uniforms; the standard distributions are not portable across
    // standard libraries and the generator output has to be.
    double operator()(double sd) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_ * sd;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2) * sd;
    }

private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace

DatasetBundle synth_dataset(std::uint64_t seed, std::size_t n_months, const SynthParams& params) {
    if (n_months < 36) {
        throw Error(ErrorCode::SeriesTooShort, "synthetic dataset needs at least 36 months");
    }
    Gaussian noise(seed);
    const auto breakpoint = static_cast<double>(n_months) * params.breakpoint_fraction;
    long spike = params.spike_index;
    if (spike < 0) {
        spike = YearMonth{params.start.year + 10, 7}.months_since(params.start);
    }

    std::vector<double> visitors(n_months);
    for (std::size_t t = 0; t < n_months; ++t) {
        const double ti = static_cast<double>(t);
        const double trend = ti <= breakpoint ? params.early_slope * ti
                                              : params.early_slope * breakpoint + params.late_slope * (ti - breakpoint);
        const int month = params.start.plus(static_cast<long>(t)).month;
        double mean = params.baseline + trend + params.seasonal_amplitude * params.seasonal_profile[month - 1];
        if (static_cast<long>(t) == spike) {
            mean *= params.spike_factor;
        }
        visitors[t] = std::max(0.0, std::round(mean + noise(params.noise_sd)));
    }

    const double peak = *std::max_element(visitors.begin(), visitors.end());
    std::vector<double> index(n_months);
    for (std::size_t t = 0; t < n_months; ++t) {
        const double raw = params.trend_index_peak * visitors[t] / peak + noise(params.trend_index_noise_sd);
        index[t] = std::clamp(std::round(raw), 0.0, 100.0);
    }

    DatasetBundle bundle{TimeSeries(params.start, std::move(visitors), "visitors"), {},
                         "synthetic seed=" + std::to_string(seed) + " months=" + std::to_string(n_months)};
    bundle.regressors.emplace("google_trend", TimeSeries(params.start, std::move(index), "google_trend"));
    return bundle;
}

}  // namespace tourcast::io
