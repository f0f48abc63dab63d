#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bss/nonlinearity.hpp"
#include "bss/random.hpp"
#include "bss/types.hpp"

namespace bss {

struct FastIcaConfig {
    NonlinearityKind nonlinearity = NonlinearityKind::Sin;
    double epsilon = 1e-6;          // sign-invariant convergence tolerance
    int max_iterations = 1000;
    Eigen::Index components = 0;    // M, the number of sources to extract
    std::uint64_t seed = 0;         // seeds the initial weight vectors
};

struct SeparationResult {
    Eigen::MatrixXd w;              // rows are weight vectors, extraction order
    SignalMatrix estimates;         // W * Z (Z = whitened input)
    std::vector<int> iterations;    // fixed-point updates per component
    std::vector<bool> converged;
    double elapsed_seconds = 0.0;   // whitening start through last component
};

struct ExtractOutcome {
    Eigen::VectorXd w;
    int iterations = 0;
    bool converged = false;
};

// Un-normalized fixed-point update
//   w+ = (1/N) sum_n z_n g(w^T z_n) - ((1/N) sum_n g'(w^T z_n)) w.
Eigen::VectorXd one_unit_update(const SignalMatrix& z, const Eigen::VectorXd& w,
                                NonlinearityKind kind);

// Gram-Schmidt projection of w against the previously extracted vectors,
// followed by normalization. Throws DegenerateProjectionError when the
// residual norm is at or below 1e-12; the caller re-randomizes.
Eigen::VectorXd deflate(const Eigen::VectorXd& w,
                        std::span<const Eigen::VectorXd> previous);

// Extracts one component: update, deflate, normalize until the sign-invariant
// change 1 - |<w_new, w_old>| drops below epsilon or the iteration budget
// runs out. The first draw from rng is the initial weight vector; degenerate
// projections re-randomize from the same stream (at most 5 times, then
// ExtractionError names the failing component).
ExtractOutcome extract_component(const SignalMatrix& z,
                                 std::span<const Eigen::VectorXd> previous,
                                 const FastIcaConfig& config, Rng& rng);

// The full deflationary pipeline: center + whiten, then extract
// config.components weight vectors sequentially. Deterministic for a fixed
// seed. elapsed_seconds covers whitening through the last component.
SeparationResult run(const SignalMatrix& x_mixed, const FastIcaConfig& config);

// {E[G(w^T z)] - E[G(v)]}^2, the negentropy proxy maximized per component.
double negentropy_objective(const Eigen::VectorXd& w, const SignalMatrix& z,
                            NonlinearityKind kind);

} // namespace bss
