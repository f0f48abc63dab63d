#pragma once

#include <cmath>

#include "bss/nonlinearity.hpp"

namespace bss::detail {

// Unchecked evaluators shared by the scalar API and the bulk kernels. The
// kernels run these inside OpenMP regions, so they must not throw; the scalar
// wrappers in nonlinearity.cpp add the finiteness check.

inline double eval_contrast(NonlinearityKind kind, double u) {
    switch (kind) {
        case NonlinearityKind::Tanh: {
            const double a = std::abs(u);
            return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453;
        }
        case NonlinearityKind::Gauss: return -std::exp(-0.5 * u * u);
        case NonlinearityKind::Pow3: return 0.25 * u * u * u * u;
        case NonlinearityKind::Sin: return -std::cos(u);
    }
    return 0.0;
}

inline double eval_score(NonlinearityKind kind, double u) {
    switch (kind) {
        case NonlinearityKind::Tanh: return std::tanh(u);
        case NonlinearityKind::Gauss: return u * std::exp(-0.5 * u * u);
        case NonlinearityKind::Pow3: return u * u * u;
        case NonlinearityKind::Sin: return std::sin(u);
    }
    return 0.0;
}

inline double eval_score_derivative(NonlinearityKind kind, double u) {
    switch (kind) {
        case NonlinearityKind::Tanh: {
            const double t = std::tanh(u);
            return 1.0 - t * t;
        }
        case NonlinearityKind::Gauss: return (1.0 - u * u) * std::exp(-0.5 * u * u);
        case NonlinearityKind::Pow3: return 3.0 * u * u;
        case NonlinearityKind::Sin: return std::cos(u);
    }
    return 0.0;
}

} // namespace bss::detail
