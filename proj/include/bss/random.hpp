#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace bss {

// Seeded random stream used everywhere randomness is needed. std::mt19937_64
// produces the same sequence on every platform; the mappings below avoid
// std::uniform_real_distribution, whose output is implementation-defined.
using Rng = std::mt19937_64;

// Uniform draw on the open interval (0, 1). The half-step offset keeps the
// result strictly inside the interval, so log(u) and log(1 - u) stay finite.
inline double uniform_open01(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform draw on (-1, 1).
inline double uniform_pm1(Rng& rng) {
    return 2.0 * uniform_open01(rng) - 1.0;
}

// Random direction: entries uniform on (-1, 1), then normalized. Redraws in
// the (vanishingly rare) case the raw vector is too short to normalize.
inline Eigen::VectorXd random_unit_vector(Rng& rng, Eigen::Index m) {
    Eigen::VectorXd w(m);
    double norm = 0.0;
    do {
        for (Eigen::Index i = 0; i < m; ++i) w[i] = uniform_pm1(rng);
        norm = w.norm();
    } while (norm < 1e-12);
    return w / norm;
}

} // namespace bss
