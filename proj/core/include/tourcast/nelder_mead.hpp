#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tourcast {

struct NelderMeadOptions {
    double diameter_tol = 1e-8;  // stop when every vertex is within this of the best (max-norm)
    std::size_t max_iterations = 2000;
    double initial_step = 0.1;   // relative to max(|x0_i|, step_floor)
    double step_floor = 0.1;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimizer. The returned point is never worse than x0.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace tourcast
