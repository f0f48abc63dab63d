#include "bss/fastica.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "bss/error.hpp"
#include "bss/kernels.hpp"
#include "bss/preprocess.hpp"

namespace bss {

namespace {

void validate_config(const FastIcaConfig& config) {
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
        throw std::invalid_argument("fastica: epsilon must lie in (0, 1)");
    }
    if (config.max_iterations < 1) {
        throw std::invalid_argument("fastica: max_iterations must be at least 1");
    }
    if (config.components < 1) {
        throw std::invalid_argument("fastica: components must be at least 1");
    }
}

constexpr int kMaxRerandomizations = 5;

} // namespace

Eigen::VectorXd one_unit_update(const SignalMatrix& z, const Eigen::VectorXd& w,
                                NonlinearityKind kind) {
    if (w.size() != z.rows()) {
        throw std::invalid_argument("one_unit_update: weight length does not match channel count");
    }
    const auto stats = kernels::fixed_point_stats(z, w, kind);
    return stats.weighted_mean - stats.score_derivative_mean * w;
}

Eigen::VectorXd deflate(const Eigen::VectorXd& w,
                        std::span<const Eigen::VectorXd> previous) {
    for (const auto& p : previous) {
        if (p.size() != w.size()) {
            throw std::invalid_argument("deflate: vector length mismatch");
        }
    }
    Eigen::VectorXd v = w;
    // Two projection passes keep the residual orthogonal even when it is
    // small relative to the input.
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& p : previous) {
            v -= p.dot(v) * p;
        }
    }
    const double norm = v.norm();
    if (norm <= 1e-12) {
        throw DegenerateProjectionError("deflate: residual norm " + std::to_string(norm) +
                                        " is at or below 1e-12");
    }
    return v / norm;
}

ExtractOutcome extract_component(const SignalMatrix& z,
                                 std::span<const Eigen::VectorXd> previous,
                                 const FastIcaConfig& config, Rng& rng) {
    validate_config(config);
    const Eigen::Index m = z.rows();
    if (static_cast<Eigen::Index>(previous.size()) >= m) {
        throw std::invalid_argument("extract_component: all components already extracted");
    }

    ExtractOutcome out;
    out.w = random_unit_vector(rng, m);
    int rerandomizations = 0;

    while (out.iterations < config.max_iterations) {
        ++out.iterations;
        Eigen::VectorXd w_new;
        try {
            w_new = deflate(one_unit_update(z, out.w, config.nonlinearity), previous);
        } catch (const DegenerateProjectionError&) {
            if (++rerandomizations > kMaxRerandomizations) {
                throw ExtractionError("extract_component: component " +
                                      std::to_string(previous.size()) +
                                      " hit " + std::to_string(kMaxRerandomizations) +
                                      " degenerate projections");
            }
            out.w = random_unit_vector(rng, m);
            continue;
        }
        const double change = 1.0 - std::abs(w_new.dot(out.w));
        out.w = std::move(w_new);
        if (change < config.epsilon) {
            out.converged = true;
            break;
        }
    }
    return out;
}

SeparationResult run(const SignalMatrix& x_mixed, const FastIcaConfig& config) {
    validate_config(config);
    if (x_mixed.rows() != config.components) {
        throw std::invalid_argument("run: input has " + std::to_string(x_mixed.rows()) +
                                    " channels but config asks for " +
                                    std::to_string(config.components) + " components");
    }

    const Eigen::Index m = config.components;
    Rng rng(config.seed);

    const auto start = std::chrono::steady_clock::now();
    auto [z, model] = whiten(x_mixed);

    std::vector<Eigen::VectorXd> extracted;
    extracted.reserve(m);
    SeparationResult result;
    result.iterations.reserve(m);
    result.converged.reserve(m);

    for (Eigen::Index p = 0; p < m; ++p) {
        ExtractOutcome out = extract_component(z, extracted, config, rng);
        result.iterations.push_back(out.iterations);
        result.converged.push_back(out.converged);
        extracted.push_back(std::move(out.w));
    }
    const auto stop = std::chrono::steady_clock::now();
    result.elapsed_seconds = std::chrono::duration<double>(stop - start).count();

    result.w.resize(m, m);
    for (Eigen::Index p = 0; p < m; ++p) {
        result.w.row(p) = extracted[p].transpose();
    }
    result.estimates = kernels::apply_linear(result.w, z);
    return result;
}

double negentropy_objective(const Eigen::VectorXd& w, const SignalMatrix& z,
                            NonlinearityKind kind) {
    if (w.size() != z.rows()) {
        throw std::invalid_argument("negentropy_objective: weight length does not match channel count");
    }
    const double diff = kernels::mean_contrast(z, w, kind) - gaussian_expectation(kind);
    return diff * diff;
}

} // namespace bss
