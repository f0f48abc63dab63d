#include "bss/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

#include "bss/detail/nonlinearity_eval.hpp"

namespace bss {

namespace {

void require_finite(double u) {
    if (!std::isfinite(u)) {
        throw std::domain_error("nonlinearity input must be finite");
    }
}

} // namespace

NonlinearityKind parse_nonlinearity(std::string_view name) {
    if (name == "tanh") return NonlinearityKind::Tanh;
    if (name == "gauss") return NonlinearityKind::Gauss;
    if (name == "pow3") return NonlinearityKind::Pow3;
    if (name == "sin") return NonlinearityKind::Sin;
    throw std::invalid_argument("unknown nonlinearity '" + std::string(name) +
                                "' (expected tanh, gauss, pow3 or sin)");
}

std::string to_string(NonlinearityKind kind) {
    switch (kind) {
        case NonlinearityKind::Tanh: return "tanh";
        case NonlinearityKind::Gauss: return "gauss";
        case NonlinearityKind::Pow3: return "pow3";
        case NonlinearityKind::Sin: return "sin";
    }
    throw std::invalid_argument("invalid NonlinearityKind");
}

double contrast(NonlinearityKind kind, double u) {
    require_finite(u);
    return detail::eval_contrast(kind, u);
}

double score(NonlinearityKind kind, double u) {
    require_finite(u);
    return detail::eval_score(kind, u);
}

double score_derivative(NonlinearityKind kind, double u) {
    require_finite(u);
    return detail::eval_score_derivative(kind, u);
}

double gaussian_expectation(NonlinearityKind kind) {
    switch (kind) {
        // Quadrature of log cosh(v) phi(v) over the real line.
        case NonlinearityKind::Tanh: return 0.37456720749143797;
        // -1/sqrt(2), closed-form Gaussian integral.
        case NonlinearityKind::Gauss: return -0.70710678118654752;
        // E[v^4]/4 = 3/4.
        case NonlinearityKind::Pow3: return 0.75;
        // E[-cos(v)] = -e^(-1/2), from the Gaussian characteristic function.
        case NonlinearityKind::Sin: return -0.60653065971263342;
    }
    throw std::invalid_argument("invalid NonlinearityKind");
}

} // namespace bss
