#pragma once

#include <Eigen/Dense>

namespace tourcast::detail {

struct OlsFit {
    Eigen::VectorXd coef;
    double rss = 0.0;
    /// (X'X)^{-1}, only filled when requested.
    Eigen::MatrixXd xtx_inverse;
};

/// Full-rank least squares via column-pivoted QR; throws SingularDesign on rank loss.
OlsFit ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& target, bool with_inverse = false);

/// Minimum-norm least squares; never throws on rank deficiency.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& design, const Eigen::VectorXd& target);

}  // namespace tourcast::detail
