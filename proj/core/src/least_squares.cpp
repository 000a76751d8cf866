#include "least_squares.hpp"

#include "tourcast/error.hpp"

namespace tourcast::detail {

OlsFit ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& target, bool with_inverse) {
    const Eigen::Index k = design.cols();
    if (design.rows() < k) {
        throw Error(ErrorCode::SingularDesign, "fewer rows than regressors");
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < k) {
        throw Error(ErrorCode::SingularDesign, "design matrix is rank deficient (rank " +
                                                   std::to_string(qr.rank()) + " < " + std::to_string(k) +
                                                   ")");
    }
    OlsFit fit;
    fit.coef = qr.solve(target);
    fit.rss = (target - design * fit.coef).squaredNorm();
    if (with_inverse) {
        const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
        const Eigen::MatrixXd r_inv =
            r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
        const Eigen::MatrixXd permuted = r_inv * r_inv.transpose();
        fit.xtx_inverse = qr.colsPermutation() * permuted * qr.colsPermutation().transpose();
    }
    return fit;
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& design, const Eigen::VectorXd& target) {
    if (design.cols() == 0) {
        return Eigen::VectorXd();
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
    return cod.solve(target);
}

}  // namespace tourcast::detail
