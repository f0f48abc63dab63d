#include "bss/preprocess.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "bss/error.hpp"
#include "bss/kernels.hpp"

namespace bss {

std::pair<SignalMatrix, Eigen::VectorXd> center(const SignalMatrix& x) {
    if (x.rows() == 0 || x.cols() == 0) {
        throw std::invalid_argument("center: empty input");
    }
    Eigen::VectorXd mean = kernels::row_means(x);
    return {kernels::centered(x, mean), std::move(mean)};
}

Eigen::MatrixXd sample_covariance(const SignalMatrix& x) {
    if (x.rows() == 0) throw std::invalid_argument("sample_covariance: empty input");
    if (x.cols() < 2) throw std::invalid_argument("sample_covariance: need at least 2 samples");
    return kernels::covariance(x);
}

std::pair<SignalMatrix, WhiteningModel> whiten(const SignalMatrix& x) {
    const Eigen::Index m = x.rows();
    const Eigen::Index n = x.cols();
    if (m == 0 || n == 0) throw std::invalid_argument("whiten: empty input");
    if (n < m) throw std::invalid_argument("whiten: need at least as many samples as channels");
    if (n < 2) throw std::invalid_argument("whiten: need at least 2 samples");
    if (!x.allFinite()) throw std::invalid_argument("whiten: input contains non-finite entries");

    auto [centered_x, mean] = center(x);
    const Eigen::MatrixXd cov = kernels::covariance(centered_x);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw DegenerateInputError("whiten: eigendecomposition failed");
    }

    // Eigen returns eigenvalues ascending; flip to descending.
    Eigen::VectorXd eigenvalues(m);
    Eigen::MatrixXd eigenvectors(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        eigenvalues[i] = solver.eigenvalues()[m - 1 - i];
        eigenvectors.col(i) = solver.eigenvectors().col(m - 1 - i);
    }

    // Sign convention: largest-magnitude entry of each eigenvector positive,
    // ties broken by lowest index.
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::Index pivot = 0;
        for (Eigen::Index r = 1; r < m; ++r) {
            if (std::abs(eigenvectors(r, i)) > std::abs(eigenvectors(pivot, i))) pivot = r;
        }
        if (eigenvectors(pivot, i) < 0.0) eigenvectors.col(i) = -eigenvectors.col(i);
    }

    const double threshold = 1e-10 * eigenvalues[0];
    for (Eigen::Index i = 0; i < m; ++i) {
        if (!(eigenvalues[i] > threshold) || !(eigenvalues[i] > 0.0)) {
            throw DegenerateInputError(
                "whiten: covariance eigenvalue " + std::to_string(i) +
                " (of " + std::to_string(m) + ", sorted descending) is " +
                std::to_string(eigenvalues[i]) + ", below the rank threshold");
        }
    }

    WhiteningModel model;
    model.mean = std::move(mean);
    const Eigen::VectorXd inv_sqrt = eigenvalues.array().sqrt().inverse();
    model.whitener = inv_sqrt.asDiagonal() * eigenvectors.transpose();
    model.dewhitener = eigenvectors * eigenvalues.array().sqrt().matrix().asDiagonal();

    SignalMatrix z = kernels::apply_linear(model.whitener, centered_x);
    return {std::move(z), std::move(model)};
}

} // namespace bss
