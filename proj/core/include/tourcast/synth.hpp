#pragma once

#include "tourcast/series.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

namespace tourcast::io {

/// Target series plus named regressors covering the same months.
struct DatasetBundle {
    TimeSeries target;
    std::map<std::string, TimeSeries> regressors;
    std::string provenance;
};

/// Shape of the synthetic visitor series: level + piecewise trend that steepens
/// part-way + a 12-month profile peaking in July/August + one spike month + noise.
struct SynthParams {
    YearMonth start{2010, 1};
    double baseline = 9000.0;
    double early_slope = 40.0;  // visitors per month
    double late_slope = 110.0;
    double breakpoint_fraction = 0.55;
    double seasonal_amplitude = 7000.0;
    std::array<double, 12> seasonal_profile{-0.55, -0.5, -0.3, -0.05, 0.2, 0.4, 1.0, 0.95, 0.3, -0.05, -0.4, -0.5};
    long spike_index = -1;  // -1: July of the eleventh year
    double spike_factor = 1.4;
    double noise_sd = 700.0;
    double trend_index_peak = 90.0;  // search index of the largest month before noise
    double trend_index_noise_sd = 1.0;
};

/// Deterministic for a given seed. Visitor counts are integers; the "google_trend"
/// regressor is an integer index in [0, 100].
DatasetBundle synth_dataset(std::uint64_t seed, std::size_t n_months, const SynthParams& params = {});

}  // namespace tourcast::io
