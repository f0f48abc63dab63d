#pragma once

#include <Eigen/Dense>

namespace bss {

// An M-channel x N-sample real matrix. Rows are signal channels, columns are
// samples. Column-major storage keeps each sample contiguous, which is what
// the per-sample kernels iterate over.
using SignalMatrix = Eigen::MatrixXd;

// Square M x M matrix mapping sources to mixtures, x = A s.
using MixingMatrix = Eigen::MatrixXd;

} // namespace bss
