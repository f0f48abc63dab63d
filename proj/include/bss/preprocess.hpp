#pragma once

#include <utility>

#include <Eigen/Dense>

#include "bss/types.hpp"

namespace bss {

// Sample mean plus the whitening transform derived from the eigendecomposition
// of the sample covariance. whitener * dewhitener = I, and applying whitener
// to centered data yields identity sample covariance.
struct WhiteningModel {
    Eigen::VectorXd mean;
    Eigen::MatrixXd whitener;     // D^(-1/2) E^T, eigenvalues sorted descending
    Eigen::MatrixXd dewhitener;   // E D^(1/2)
};

// Subtracts each row's sample mean. Returns the centered matrix and the
// vector of subtracted means.
std::pair<SignalMatrix, Eigen::VectorXd> center(const SignalMatrix& x);

// (1/N) X X^T of a centered matrix. Symmetric positive semidefinite.
Eigen::MatrixXd sample_covariance(const SignalMatrix& x);

// Centers x and maps it to unit sample covariance. Eigenvalues are sorted
// descending and each eigenvector's sign is fixed so its largest-magnitude
// entry is positive (ties broken by lowest index), which makes the transform
// deterministic for a fixed input. Throws DegenerateInputError when any
// eigenvalue falls at or below 1e-10 times the largest one.
std::pair<SignalMatrix, WhiteningModel> whiten(const SignalMatrix& x);

} // namespace bss
