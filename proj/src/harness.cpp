#include "bss/harness.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "bss/error.hpp"
#include "bss/kernels.hpp"
#include "bss/metrics.hpp"
#include "bss/random.hpp"

namespace bss {

namespace {

SourceSpec::Kind parse_source_kind(const std::string& name) {
    using Kind = SourceSpec::Kind;
    if (name == "sine") return Kind::Sine;
    if (name == "sawtooth") return Kind::Sawtooth;
    if (name == "square") return Kind::Square;
    if (name == "uniform") return Kind::UniformNoise;
    if (name == "laplacian") return Kind::LaplacianNoise;
    throw std::invalid_argument("unknown source kind '" + name +
                                "' (expected sine, sawtooth, square, uniform or laplacian)");
}

const char* source_kind_name(SourceSpec::Kind kind) {
    switch (kind) {
        case SourceSpec::Kind::Sine: return "sine";
        case SourceSpec::Kind::Sawtooth: return "sawtooth";
        case SourceSpec::Kind::Square: return "square";
        case SourceSpec::Kind::UniformNoise: return "uniform";
        case SourceSpec::Kind::LaplacianNoise: return "laplacian";
    }
    throw std::invalid_argument("invalid SourceSpec::Kind");
}

bool is_periodic(SourceSpec::Kind kind) {
    return kind == SourceSpec::Kind::Sine || kind == SourceSpec::Kind::Sawtooth ||
           kind == SourceSpec::Kind::Square;
}

void validate_spec(const SourceSpec& spec) {
    if (is_periodic(spec.kind)) {
        if (!spec.has_period || spec.period_samples < 2) {
            throw std::invalid_argument(std::string("source spec '") + source_kind_name(spec.kind) +
                                        "' needs a period of at least 2 samples");
        }
        if (spec.has_seed) {
            throw std::invalid_argument(std::string("source spec '") + source_kind_name(spec.kind) +
                                        "' takes a period, not a seed");
        }
    } else {
        if (!spec.has_seed) {
            throw std::invalid_argument(std::string("source spec '") + source_kind_name(spec.kind) +
                                        "' needs a seed");
        }
        if (spec.has_period) {
            throw std::invalid_argument(std::string("source spec '") + source_kind_name(spec.kind) +
                                        "' takes a seed, not a period");
        }
    }
}

double laplacian_draw(Rng& rng) {
    // Inverse CDF of the unit-variance Laplace distribution. uniform_open01
    // never returns 0 or 1, so the log stays finite.
    const double t = uniform_open01(rng) - 0.5;
    const double sign = t < 0.0 ? -1.0 : 1.0;
    return -sign * std::log(1.0 - 2.0 * std::abs(t)) / std::numbers::sqrt2;
}

std::string format_fixed(double value, int precision) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                         std::chars_format::fixed, precision);
    if (ec != std::errc{}) throw std::invalid_argument("format_fixed: value out of range");
    return std::string(buf, ptr);
}

} // namespace

SourceSpec SourceSpec::periodic(Kind kind, int period_samples) {
    SourceSpec spec;
    spec.kind = kind;
    spec.period_samples = period_samples;
    spec.has_period = true;
    validate_spec(spec);
    return spec;
}

SourceSpec SourceSpec::noise(Kind kind, std::uint64_t seed) {
    SourceSpec spec;
    spec.kind = kind;
    spec.seed = seed;
    spec.has_seed = true;
    validate_spec(spec);
    return spec;
}

SourceSpec SourceSpec::parse(const std::string& text) {
    const size_t colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const Kind kind = parse_source_kind(name);

    if (colon == std::string::npos) {
        throw std::invalid_argument("source spec '" + text + "' needs a ':" +
                                    (is_periodic(kind) ? "period" : "seed") + "' suffix");
    }
    const std::string arg = text.substr(colon + 1);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (arg.empty() || ec != std::errc{} || ptr != arg.data() + arg.size()) {
        throw std::invalid_argument("source spec '" + text + "': '" + arg + "' is not a number");
    }
    if (is_periodic(kind)) {
        if (value < 2 || value > 1u << 30) {
            throw std::invalid_argument("source spec '" + text + "': period must be in [2, 2^30]");
        }
        return periodic(kind, static_cast<int>(value));
    }
    return noise(kind, value);
}

std::string SourceSpec::to_string() const {
    const std::string arg = is_periodic(kind) ? std::to_string(period_samples)
                                              : std::to_string(seed);
    return std::string(source_kind_name(kind)) + ":" + arg;
}

SignalMatrix gen_sources(const std::vector<SourceSpec>& specs, Eigen::Index n) {
    if (specs.empty()) throw std::invalid_argument("gen_sources: no source specs");
    if (n < 2) throw std::invalid_argument("gen_sources: need at least 2 samples");

    SignalMatrix sources(static_cast<Eigen::Index>(specs.size()), n);
    for (size_t row = 0; row < specs.size(); ++row) {
        const SourceSpec& spec = specs[row];
        validate_spec(spec);
        const auto r = static_cast<Eigen::Index>(row);

        switch (spec.kind) {
            case SourceSpec::Kind::Sine: {
                const double step = 2.0 * std::numbers::pi / spec.period_samples;
                for (Eigen::Index i = 0; i < n; ++i) sources(r, i) = std::sin(step * i);
                break;
            }
            case SourceSpec::Kind::Sawtooth: {
                const double period = spec.period_samples;
                for (Eigen::Index i = 0; i < n; ++i) {
                    sources(r, i) = 2.0 * (static_cast<double>(i % spec.period_samples) / period) - 1.0;
                }
                break;
            }
            case SourceSpec::Kind::Square: {
                for (Eigen::Index i = 0; i < n; ++i) {
                    sources(r, i) = (i % spec.period_samples) * 2 < spec.period_samples ? 1.0 : -1.0;
                }
                break;
            }
            case SourceSpec::Kind::UniformNoise: {
                Rng rng(spec.seed);
                for (Eigen::Index i = 0; i < n; ++i) sources(r, i) = uniform_pm1(rng);
                break;
            }
            case SourceSpec::Kind::LaplacianNoise: {
                Rng rng(spec.seed);
                for (Eigen::Index i = 0; i < n; ++i) sources(r, i) = laplacian_draw(rng);
                break;
            }
        }

        // Scale to zero mean, unit variance (1/N convention).
        const double mean = sources.row(r).mean();
        sources.row(r).array() -= mean;
        const double variance = sources.row(r).squaredNorm() / static_cast<double>(n);
        // Every generator has O(1) amplitude, so anything this small is a
        // constant row up to rounding (a period-2 sine samples sin(pi*k),
        // which is pure floating-point residue). Normalizing it would just
        // amplify that noise to unit variance.
        if (variance <= 1e-20) {
            throw DegenerateInputError("gen_sources: spec '" + spec.to_string() +
                                       "' generated a constant row");
        }
        sources.row(r) /= std::sqrt(variance);
    }
    return sources;
}

SignalMatrix mix(const SignalMatrix& sources, const MixingMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("mix: mixing matrix must be square");
    if (a.rows() != sources.rows()) {
        throw std::invalid_argument("mix: mixing matrix is " + std::to_string(a.rows()) +
                                    "x" + std::to_string(a.cols()) + " but sources have " +
                                    std::to_string(sources.rows()) + " channels");
    }
    const double det = a.partialPivLu().determinant();
    if (std::abs(det) <= 1e-12) {
        throw std::invalid_argument("mix: mixing matrix is singular (|det| = " +
                                    std::to_string(std::abs(det)) + ")");
    }
    return kernels::apply_linear(a, sources);
}

MixingMatrix random_mixing_matrix(Eigen::Index m, std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("random_mixing_matrix: need at least 2 channels");
    Rng rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        MixingMatrix a(m, m);
        for (Eigen::Index c = 0; c < m; ++c) {
            for (Eigen::Index r = 0; r < m; ++r) a(r, c) = uniform_open01(rng);
        }
        if (std::abs(a.partialPivLu().determinant()) > 0.01) return a;
    }
    throw GenerationError("random_mixing_matrix: 100 consecutive near-singular draws");
}

BenchmarkReport benchmark(const SignalMatrix& sources, const MixingMatrix& a,
                          const std::vector<NonlinearityKind>& kinds, int repeats,
                          std::uint64_t base_seed, const std::string& experiment_label) {
    if (repeats < 1) throw std::invalid_argument("benchmark: repeats must be at least 1");
    if (kinds.empty()) throw std::invalid_argument("benchmark: no nonlinearities requested");

    const SignalMatrix mixed = mix(sources, a);
    const Eigen::Index m = sources.rows();

    BenchmarkReport report;
    report.repeats = repeats;
    report.experiment_label = experiment_label;

    for (const NonlinearityKind kind : kinds) {
        double c_sum = 0.0;
        double t_sum = 0.0;
        long iteration_sum = 0;
        long converged_count = 0;

        for (int r = 0; r < repeats; ++r) {
            FastIcaConfig config;
            config.nonlinearity = kind;
            config.components = m;
            config.seed = base_seed + static_cast<std::uint64_t>(r);
            try {
                const SeparationResult result = run(mixed, config);
                c_sum += match_sources(sources, result.estimates).c_ave;
                t_sum += result.elapsed_seconds;
                for (int it : result.iterations) iteration_sum += it;
                for (bool ok : result.converged) converged_count += ok ? 1 : 0;
            } catch (const Error&) {
                // Failed repeat: scores nothing, converges nothing.
            }
        }

        const double trials = static_cast<double>(m) * repeats;
        BenchmarkRow row;
        row.nonlinearity = kind;
        row.c_ave = c_sum / repeats;
        row.t_ave_seconds = t_sum / repeats;
        row.mean_iterations = static_cast<double>(iteration_sum) / trials;
        row.convergence_rate = static_cast<double>(converged_count) / trials;
        report.rows.push_back(row);
    }
    return report;
}

std::string report_to_csv(const BenchmarkReport& report) {
    std::string out = "nonlinearity,c_ave,t_ave_seconds,mean_iterations,convergence_rate\n";
    for (const BenchmarkRow& row : report.rows) {
        out += to_string(row.nonlinearity);
        out += ',' + format_fixed(row.c_ave, 6);
        out += ',' + format_fixed(row.t_ave_seconds, 6);
        out += ',' + format_fixed(row.mean_iterations, 3);
        out += ',' + format_fixed(row.convergence_rate, 6);
        out += '\n';
    }
    return out;
}

std::string report_to_json(const BenchmarkReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const BenchmarkRow& row : report.rows) {
        rows.push_back({
            {"nonlinearity", to_string(row.nonlinearity)},
            {"c_ave", row.c_ave},
            {"t_ave_seconds", row.t_ave_seconds},
            {"mean_iterations", row.mean_iterations},
            {"convergence_rate", row.convergence_rate},
        });
    }
    const nlohmann::json j = {
        {"experiment_label", report.experiment_label},
        {"repeats", report.repeats},
        {"rows", rows},
    };
    return j.dump(2) + "\n";
}

} // namespace bss
