#include "tourcast/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tourcast {

namespace {

double safe_eval(const std::function<double(std::span<const double>)>& f, std::span<const double> x) {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> x0, const NelderMeadOptions& options) {
    const std::size_t n = x0.size();
    NelderMeadResult result;
    if (n == 0) {
        result.value = safe_eval(objective, x0);
        result.x = std::move(x0);
        result.converged = true;
        return result;
    }

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += options.initial_step * std::max(std::abs(x0[i]), options.step_floor);
    }
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = safe_eval(objective, simplex[i]);
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n);
    std::vector<double> trial(n);
    const auto point = [&](double coeff, const std::vector<double>& worst) {
        for (std::size_t j = 0; j < n; ++j) {
            trial[j] = centroid[j] + coeff * (worst[j] - centroid[j]);
        }
        return safe_eval(objective, trial);
    };

    std::size_t iter = 0;
    for (;; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        // Stable so equal values keep the earlier vertex (x0 is vertex 0) in front.
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[best][j]));
            }
        }
        if (diameter < options.diameter_tol) {
            result.converged = true;
            break;
        }
        if (iter >= options.max_iterations) {
            break;
        }

        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& v = simplex[order[k]];
            for (std::size_t j = 0; j < n; ++j) {
                centroid[j] += v[j] / static_cast<double>(n);
            }
        }

        const double f_reflect = point(-1.0, simplex[worst]);
        if (f_reflect < values[best]) {
            const std::vector<double> reflected = trial;
            const double f_expand = point(-2.0, simplex[worst]);
            if (f_expand < f_reflect) {
                simplex[worst] = trial;
                values[worst] = f_expand;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }
        // Outside contraction when the reflection beat the worst vertex, inside otherwise.
        const bool outside = f_reflect < values[worst];
        const double f_contract = point(outside ? -0.5 : 0.5, simplex[worst]);
        if (f_contract < std::min(f_reflect, values[worst])) {
            simplex[worst] = trial;
            values[worst] = f_contract;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = safe_eval(objective, simplex[i]);
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best = static_cast<std::size_t>(best_it - values.begin());
    result.x = simplex[best];
    result.value = values[best];
    result.iterations = iter;
    return result;
}

}  // namespace tourcast
