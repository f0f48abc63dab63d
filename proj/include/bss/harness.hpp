#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bss/fastica.hpp"
#include "bss/nonlinearity.hpp"
#include "bss/types.hpp"

namespace bss {

// Deterministic synthetic source: a desk-scale stand-in for audio or image
// material. Periodic kinds use period_samples; noise kinds use seed.
struct SourceSpec {
    enum class Kind { Sine, Sawtooth, Square, UniformNoise, LaplacianNoise };
    Kind kind = Kind::Sine;
    int period_samples = 0;
    std::uint64_t seed = 0;
    bool has_period = false;
    bool has_seed = false;

    static SourceSpec periodic(Kind kind, int period_samples);
    static SourceSpec noise(Kind kind, std::uint64_t seed);

    // "sine:100", "sawtooth:173", "square:8", "uniform:42", "laplacian:7".
    static SourceSpec parse(const std::string& text);
    std::string to_string() const;
};

struct BenchmarkRow {
    NonlinearityKind nonlinearity = NonlinearityKind::Sin;
    double c_ave = 0.0;
    double t_ave_seconds = 0.0;
    double mean_iterations = 0.0;
    double convergence_rate = 0.0;   // converged components / (components * repeats)
};

struct BenchmarkReport {
    std::vector<BenchmarkRow> rows;  // one per requested nonlinearity, in order
    int repeats = 0;
    std::string experiment_label;
};

// One row per spec, each scaled to zero mean and unit variance.
SignalMatrix gen_sources(const std::vector<SourceSpec>& specs, Eigen::Index n);

// x = A s. A must be square, match the source channel count, and be
// invertible (|det| > 1e-12).
SignalMatrix mix(const SignalMatrix& sources, const MixingMatrix& a);

// Entries uniform on (0, 1) from the seeded stream, redrawn until
// |det| > 0.01. Throws GenerationError after 100 near-singular draws.
MixingMatrix random_mixing_matrix(Eigen::Index m, std::uint64_t seed);

// Runs `repeats` full separations per nonlinearity (seeds base_seed ..
// base_seed + repeats - 1) on mix(sources, a), scoring each run against the
// true sources, and averages. A failed run counts as zero correlation and
// zero converged components rather than aborting the report.
BenchmarkReport benchmark(const SignalMatrix& sources, const MixingMatrix& a,
                          const std::vector<NonlinearityKind>& kinds, int repeats,
                          std::uint64_t base_seed,
                          const std::string& experiment_label = "synthetic");

// Header line plus one row per nonlinearity:
// nonlinearity,c_ave,t_ave_seconds,mean_iterations,convergence_rate
std::string report_to_csv(const BenchmarkReport& report);

// JSON object mirroring the report fields.
std::string report_to_json(const BenchmarkReport& report);

} // namespace bss
