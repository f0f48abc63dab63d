#pragma once

#include <Eigen/Dense>

#include "bss/nonlinearity.hpp"
#include "bss/types.hpp"

namespace bss::kernels {

// Per-sample accumulations over the sample axis, which is where all the data
// parallelism in this library lives. The production entry points below split
// the sample range into fixed-size chunks, accumulate each chunk on its own,
// and combine the partials in chunk order. Chunk boundaries depend only on N,
// so the floating-point result is bit-identical for any thread count,
// including a build without OpenMP. kernels::serial holds the plain-loop
// reference implementations used by the tests and the kernel benchmark.

inline constexpr Eigen::Index kChunkSamples = 4096;

// Sums needed by the fixed-point update: E[z g(w^T z)] and E[g'(w^T z)].
struct FixedPointStats {
    Eigen::VectorXd weighted_mean;   // (1/N) sum_n z_n g(w^T z_n)
    double score_derivative_mean;    // (1/N) sum_n g'(w^T z_n)
};

// First and second moments feeding a Pearson correlation.
struct PearsonTerms {
    double mean_x;
    double mean_y;
    double ss_x;    // sum (x - mean_x)^2
    double ss_y;    // sum (y - mean_y)^2
    double cross;   // sum (x - mean_x)(y - mean_y)
};

Eigen::VectorXd row_means(const SignalMatrix& x);

// x with `means` subtracted from each row.
SignalMatrix centered(const SignalMatrix& x, const Eigen::VectorXd& means);

// (1/N) X X^T of an already-centered matrix.
Eigen::MatrixXd covariance(const SignalMatrix& centered_x);

// A (K x M) applied to every sample of x (M x N), giving K x N.
SignalMatrix apply_linear(const Eigen::MatrixXd& a, const SignalMatrix& x);

FixedPointStats fixed_point_stats(const SignalMatrix& z, const Eigen::VectorXd& w,
                                  NonlinearityKind kind);

// (1/N) sum_n G(w^T z_n).
double mean_contrast(const SignalMatrix& z, const Eigen::VectorXd& w,
                     NonlinearityKind kind);

PearsonTerms pearson_terms(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

namespace serial {

Eigen::VectorXd row_means(const SignalMatrix& x);
SignalMatrix centered(const SignalMatrix& x, const Eigen::VectorXd& means);
Eigen::MatrixXd covariance(const SignalMatrix& centered_x);
SignalMatrix apply_linear(const Eigen::MatrixXd& a, const SignalMatrix& x);
FixedPointStats fixed_point_stats(const SignalMatrix& z, const Eigen::VectorXd& w,
                                  NonlinearityKind kind);
double mean_contrast(const SignalMatrix& z, const Eigen::VectorXd& w,
                     NonlinearityKind kind);
PearsonTerms pearson_terms(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

} // namespace serial

} // namespace bss::kernels
