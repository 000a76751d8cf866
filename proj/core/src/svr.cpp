#include "tourcast/svr.hpp"

#include "tourcast/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tourcast::svr {

namespace {

constexpr double kTau = 1e-12;

double dot(std::span<const double> x, std::span<const double> z) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * z[i];
    return s;
}

double squared_distance(std::span<const double> x, std::span<const double> z) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - z[i];
        s += d * d;
    }
    return s;
}

double median_pairwise_distance(const std::vector<std::vector<double>>& rows) {
    std::vector<double> dist;
    dist.reserve(rows.size() * (rows.size() - 1) / 2);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            dist.push_back(std::sqrt(squared_distance(rows[i], rows[j])));
        }
    }
    if (dist.empty()) {
        return 1.0;
    }
    const auto mid = dist.begin() + static_cast<std::ptrdiff_t>(dist.size() / 2);
    std::nth_element(dist.begin(), mid, dist.end());
    double median = *mid;
    if (dist.size() % 2 == 0) {
        median = 0.5 * (median + *std::max_element(dist.begin(), mid));
    }
    return median > 0.0 ? median : 1.0;
}

void validate(const KernelSpec& spec) {
    if (spec.kind == KernelKind::Polynomial && spec.degree < 1) {
        throw Error(ErrorCode::InvalidArgument, "polynomial degree must be at least 1");
    }
    if (spec.kind == KernelKind::Gaussian && spec.sigma < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "gaussian width must be positive");
    }
}

/// Dual of epsilon-SVR over the 2n multipliers [lambda; lambda*], written as the
/// minimization 0.5 a'Qa + p'a with y'a = 0, 0 <= a <= C.
class SmoSolver {
public:
    SmoSolver(const std::vector<double>& kernel, const std::vector<double>& z, double c, double epsilon)
        : n_(z.size()), kernel_(kernel), c_(c), alpha_(2 * n_, 0.0), grad_(2 * n_) {
        for (std::size_t i = 0; i < n_; ++i) {
            p_.push_back(epsilon - z[i]);
        }
        for (std::size_t i = 0; i < n_; ++i) {
            p_.push_back(epsilon + z[i]);
        }
        grad_ = p_;
    }

    struct Outcome {
        std::size_t iterations = 0;
        bool converged = false;
    };

    Outcome solve(double tol, std::size_t max_iterations) {
        Outcome out;
        while (out.iterations < max_iterations) {
            std::size_t i = 0;
            std::size_t j = 0;
            if (!select_working_set(tol, i, j)) {
                out.converged = true;
                return out;
            }
            update_pair(i, j);
            ++out.iterations;
        }
        std::size_t i = 0;
        std::size_t j = 0;
        out.converged = !select_working_set(tol, i, j);
        return out;
    }

    /// Bias of the decision function f(x) = sum delta_i K(x, x_i) + bias.
    double bias() const {
        double ub = std::numeric_limits<double>::infinity();
        double lb = -std::numeric_limits<double>::infinity();
        double sum_free = 0.0;
        std::size_t n_free = 0;
        for (std::size_t t = 0; t < 2 * n_; ++t) {
            const double yg = sign(t) * grad_[t];
            if (at_upper(t)) {
                if (sign(t) < 0) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else if (at_lower(t)) {
                if (sign(t) > 0) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else {
                ++n_free;
                sum_free += yg;
            }
        }
        const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : 0.5 * (ub + lb);
        return -rho;
    }

    double delta(std::size_t i) const { return alpha_[i] - alpha_[i + n_]; }

    /// Value of the maximized dual: -(0.5 a'Qa + p'a).
    double dual_objective() const {
        double v = 0.0;
        for (std::size_t t = 0; t < 2 * n_; ++t) v += alpha_[t] * (grad_[t] + p_[t]);
        return -0.5 * v;
    }

private:
    double sign(std::size_t t) const { return t < n_ ? 1.0 : -1.0; }
    double k(std::size_t a, std::size_t b) const { return kernel_[(a % n_) * n_ + (b % n_)]; }
    double q(std::size_t a, std::size_t b) const { return sign(a) * sign(b) * k(a, b); }
    bool at_upper(std::size_t t) const { return alpha_[t] >= c_; }
    bool at_lower(std::size_t t) const { return alpha_[t] <= 0.0; }

    // Maximal violating index first, then the partner with the largest second-order
    // objective decrease. Strict comparisons keep the lowest index on ties.
    bool select_working_set(double tol, std::size_t& out_i, std::size_t& out_j) const {
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = 2 * n_;
        for (std::size_t t = 0; t < 2 * n_; ++t) {
            if (sign(t) > 0) {
                if (!at_upper(t) && -grad_[t] > gmax) {
                    gmax = -grad_[t];
                    i = t;
                }
            } else if (!at_lower(t) && grad_[t] > gmax) {
                gmax = grad_[t];
                i = t;
            }
        }
        if (i == 2 * n_) {
            return false;
        }
        double gmax2 = -std::numeric_limits<double>::infinity();
        double best = std::numeric_limits<double>::infinity();
        std::size_t j = 2 * n_;
        const double qii = k(i, i);
        for (std::size_t t = 0; t < 2 * n_; ++t) {
            double grad_diff = 0.0;
            if (sign(t) > 0) {
                if (at_lower(t)) continue;
                grad_diff = gmax + grad_[t];
                gmax2 = std::max(gmax2, grad_[t]);
            } else {
                if (at_upper(t)) continue;
                grad_diff = gmax - grad_[t];
                gmax2 = std::max(gmax2, -grad_[t]);
            }
            if (grad_diff > 0.0) {
                double quad = qii + k(t, t) - 2.0 * sign(i) * q(i, t);
                if (quad <= 0.0) quad = kTau;
                const double obj = -(grad_diff * grad_diff) / quad;
                if (obj < best) {
                    best = obj;
                    j = t;
                }
            }
        }
        if (gmax + gmax2 < tol || j == 2 * n_) {
            return false;
        }
        out_i = i;
        out_j = j;
        return true;
    }

    void update_pair(std::size_t i, std::size_t j) {
        const double old_i = alpha_[i];
        const double old_j = alpha_[j];
        const double qij = q(i, j);
        if (sign(i) != sign(j)) {
            double quad = k(i, i) + k(j, j) + 2.0 * qij;
            if (quad <= 0.0) quad = kTau;
            const double step = (-grad_[i] - grad_[j]) / quad;
            const double diff = alpha_[i] - alpha_[j];
            alpha_[i] += step;
            alpha_[j] += step;
            if (diff > 0.0) {
                if (alpha_[j] < 0.0) {
                    alpha_[j] = 0.0;
                    alpha_[i] = diff;
                }
            } else if (alpha_[i] < 0.0) {
                alpha_[i] = 0.0;
                alpha_[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha_[i] > c_) {
                    alpha_[i] = c_;
                    alpha_[j] = c_ - diff;
                }
            } else if (alpha_[j] > c_) {
                alpha_[j] = c_;
                alpha_[i] = c_ + diff;
            }
        } else {
            double quad = k(i, i) + k(j, j) - 2.0 * qij;
            if (quad <= 0.0) quad = kTau;
            const double step = (grad_[i] - grad_[j]) / quad;
            const double sum = alpha_[i] + alpha_[j];
            alpha_[i] -= step;
            alpha_[j] += step;
            if (sum > c_) {
                if (alpha_[i] > c_) {
                    alpha_[i] = c_;
                    alpha_[j] = sum - c_;
                }
            } else if (alpha_[j] < 0.0) {
                alpha_[j] = 0.0;
                alpha_[i] = sum;
            }
            if (sum > c_) {
                if (alpha_[j] > c_) {
                    alpha_[j] = c_;
                    alpha_[i] = sum - c_;
                }
            } else if (alpha_[i] < 0.0) {
                alpha_[i] = 0.0;
                alpha_[j] = sum;
            }
        }
        const double di = alpha_[i] - old_i;
        const double dj = alpha_[j] - old_j;
        for (std::size_t t = 0; t < 2 * n_; ++t) {
            grad_[t] += q(t, i) * di + q(t, j) * dj;
        }
    }

    std::size_t n_;
    const std::vector<double>& kernel_;
    double c_;
    std::vector<double> alpha_;
    std::vector<double> p_;
    std::vector<double> grad_;
};

}  // namespace

std::string KernelSpec::describe() const {
    switch (kind) {
    case KernelKind::Linear: return "linear";
    case KernelKind::Polynomial: return "polynomial(degree=" + std::to_string(degree) + ")";
    case KernelKind::Gaussian: return "gaussian(sigma=" + std::to_string(sigma) + ")";
    }
    return "unknown";
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> z) {
    if (x.size() != z.size()) {
        throw Error(ErrorCode::DimensionMismatch, "kernel arguments have dimensions " + std::to_string(x.size()) +
                                                      " and " + std::to_string(z.size()));
    }
    switch (spec.kind) {
    case KernelKind::Linear: return dot(x, z);
    case KernelKind::Polynomial: return std::pow(dot(x, z), spec.degree);
    case KernelKind::Gaussian: {
        if (!(spec.sigma > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "gaussian kernel needs sigma > 0");
        }
        return std::exp(-squared_distance(x, z) / (2.0 * spec.sigma * spec.sigma));
    }
    }
    return 0.0;
}

std::vector<double> FeatureScaler::apply(std::span<const double> x) const {
    std::vector<double> out(x.begin(), x.end());
    if (mean.empty()) {
        return out;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (out[i] - mean[i]) / scale[i];
    }
    return out;
}

SvrModel fit(const SupervisedFrame& frame, const SvrConfig& config) {
    if (!(config.c > 0.0) || config.epsilon < 0.0 || !(config.tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "SVR needs c > 0, epsilon >= 0 and tol > 0");
    }
    validate(config.kernel);
    const std::size_t n = frame.rows();
    if (n < 2) {
        throw Error(ErrorCode::DegenerateFrame, "SVR needs at least 2 samples, got " + std::to_string(n));
    }
    const std::size_t dim = frame.cols();
    for (std::size_t i = 0; i < n; ++i) {
        if (frame.inputs[i].size() != dim) {
            throw Error(ErrorCode::DimensionMismatch, "ragged input rows");
        }
        if (!std::isfinite(frame.targets[i])) {
            throw Error(ErrorCode::NonFiniteValue, "non-finite target at row " + std::to_string(i));
        }
    }

    SvrModel model;
    model.c = config.c;
    model.epsilon = config.epsilon;

    if (config.normalize) {
        model.input_scaler.mean.assign(dim, 0.0);
        model.input_scaler.scale.assign(dim, 0.0);
        for (std::size_t f = 0; f < dim; ++f) {
            double mean = 0.0;
            for (const auto& row : frame.inputs) mean += row[f];
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (const auto& row : frame.inputs) var += (row[f] - mean) * (row[f] - mean);
            const double sd = std::sqrt(var / static_cast<double>(n));
            model.input_scaler.mean[f] = mean;
            model.input_scaler.scale[f] = sd > 0.0 ? sd : 1.0;
        }
        const auto [mn, mx] = std::minmax_element(frame.targets.begin(), frame.targets.end());
        model.target_scaler.offset = *mn;
        model.target_scaler.range = *mx > *mn ? *mx - *mn : 1.0;
    }

    std::vector<std::vector<double>> x;
    x.reserve(n);
    for (const auto& row : frame.inputs) x.push_back(model.input_scaler.apply(row));
    std::vector<double> z;
    z.reserve(n);
    for (double t : frame.targets) z.push_back(model.target_scaler.to_unit(t));

    model.kernel = config.kernel;
    if (model.kernel.kind == KernelKind::Gaussian && model.kernel.sigma == 0.0) {
        model.kernel.sigma = median_pairwise_distance(x);
    }

    std::vector<double> kernel(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = kernel_eval(model.kernel, x[i], x[j]);
            kernel[i * n + j] = v;
            kernel[j * n + i] = v;
        }
    }

    SmoSolver solver(kernel, z, config.c, config.epsilon);
    const std::size_t passes = config.max_passes > 0 ? config.max_passes : 10 * n;
    const auto outcome = solver.solve(config.tol, passes * n);

    model.iterations = outcome.iterations;
    model.converged = outcome.converged;
    model.bias = solver.bias();
    model.dual_objective = solver.dual_objective();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = solver.delta(i);
        if (d != 0.0) {
            model.support_inputs.push_back(x[i]);
            model.dual_deltas.push_back(d);
            model.support_indices.push_back(i);
        }
    }
    return model;
}

double predict(const SvrModel& model, std::span<const double> x) {
    const std::size_t dim = model.dimension();
    if (dim != 0 && x.size() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim) + " features, got " +
                                                      std::to_string(x.size()));
    }
    const auto xs = model.input_scaler.apply(x);
    double f = model.bias;
    for (std::size_t i = 0; i < model.support_inputs.size(); ++i) {
        f += model.dual_deltas[i] * kernel_eval(model.kernel, xs, model.support_inputs[i]);
    }
    return model.target_scaler.from_unit(f);
}

std::vector<double> forecast_rolling(const SvrModel& model, const TimeSeries& series, std::size_t p,
                                     std::size_t n_test) {
    if (p == 0 || n_test == 0) {
        throw Error(ErrorCode::InvalidArgument, "lags and n_test must be positive");
    }
    if (series.size() <= p + n_test) {
        throw Error(ErrorCode::SeriesTooShort, "series of length " + std::to_string(series.size()) +
                                                   " cannot supply " + std::to_string(p) + " lags for " +
                                                   std::to_string(n_test) + " test steps");
    }
    std::vector<double> out;
    out.reserve(n_test);
    const auto y = series.values();
    for (std::size_t t = series.size() - n_test; t < series.size(); ++t) {
        out.push_back(predict(model, y.subspan(t - p, p)));
    }
    return out;
}

std::vector<double> forecast_rolling(const SvrConfig& config, const TimeSeries& series, std::size_t p,
                                     std::size_t n_test) {
    if (series.size() <= p + n_test) {
        throw Error(ErrorCode::SeriesTooShort, "series of length " + std::to_string(series.size()) +
                                                   " cannot supply " + std::to_string(p) + " lags for " +
                                                   std::to_string(n_test) + " test steps");
    }
    const auto train = series.values().first(series.size() - n_test);
    const auto model = fit(make_supervised(train, p), config);
    return forecast_rolling(model, series, p, n_test);
}

}  // namespace tourcast::svr
