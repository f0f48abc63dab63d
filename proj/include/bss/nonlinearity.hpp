#pragma once

#include <string>
#include <string_view>

namespace bss {

// The four supported contrast/nonlinearity pairs:
//
//   kind     G(u)            g(u) = G'(u)      g'(u)
//   tanh     log cosh(u)     tanh(u)           1 - tanh^2(u)
//   gauss    -exp(-u^2/2)    u exp(-u^2/2)     (1 - u^2) exp(-u^2/2)
//   pow3     u^4 / 4         u^3               3 u^2
//   sin      -cos(u)         sin(u)            cos(u)
enum class NonlinearityKind { Tanh, Gauss, Pow3, Sin };

inline constexpr NonlinearityKind kAllNonlinearities[] = {
    NonlinearityKind::Tanh,
    NonlinearityKind::Gauss,
    NonlinearityKind::Pow3,
    NonlinearityKind::Sin,
};

// Accepts exactly "tanh", "gauss", "pow3", "sin"; throws std::invalid_argument
// for anything else.
NonlinearityKind parse_nonlinearity(std::string_view name);

std::string to_string(NonlinearityKind kind);

// Contrast function G(u). Throws std::domain_error for non-finite u.
double contrast(NonlinearityKind kind, double u);

// Nonlinearity g(u) = dG/du. Throws std::domain_error for non-finite u.
double score(NonlinearityKind kind, double u);

// g'(u) = dg/du. Throws std::domain_error for non-finite u.
double score_derivative(NonlinearityKind kind, double u);

// E[G(v)] for v ~ N(0,1). Returned as a precomputed constant.
double gaussian_expectation(NonlinearityKind kind);

} // namespace bss
