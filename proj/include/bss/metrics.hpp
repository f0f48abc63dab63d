#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bss/types.hpp"

namespace bss {

// Result of pairing estimated channels with true sources. ICA recovers
// sources only up to permutation and sign, so the pairing maximizes the
// total absolute correlation over all assignments.
struct MatchReport {
    std::vector<int> assignment;           // estimate index for each source
    std::vector<int> signs;                // sign of the matched pair's raw C
    std::vector<double> pair_correlations; // |C| per matched pair
    double c_ave = 0.0;                    // mean of pair_correlations
};

// Pearson correlation coefficient C(x, y) = cov(x, y) / sqrt(cov(x,x) cov(y,y)),
// clamped into [-1, 1]. Throws std::invalid_argument on length mismatch or
// N < 2, DegenerateInputError when either input has zero variance.
double correlation(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Builds the M x M |C| matrix between source and estimate channels, solves the
// optimal assignment maximizing total |C|, and reports the matched |C| values,
// their mean, and the matched pairs' signs.
MatchReport match_sources(const SignalMatrix& sources, const SignalMatrix& estimates);

// Assignment maximizing the total value over rows; value is square. Exposed
// for reuse and for oracle testing against brute-force enumeration.
std::vector<int> max_total_assignment(const Eigen::MatrixXd& value);

} // namespace bss
