// bss: blind source separation from the command line.
//
//   bss gen       synthesize source signals into a CSV
//   bss mix       apply a mixing matrix (given or randomly drawn)
//   bss separate  recover independent components from a mixture
//   bss benchmark score every nonlinearity over repeated seeded runs

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bss/error.hpp"
#include "bss/fastica.hpp"
#include "bss/harness.hpp"
#include "bss/io.hpp"
#include "bss/metrics.hpp"
#include "bss/nonlinearity.hpp"
#include "bss/types.hpp"

namespace {

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bss::IoError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw bss::IoError("short write to '" + path.string() + "'");
}

std::string fixed6(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                         std::chars_format::fixed, 6);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

struct LoadedInput {
    bss::SignalMatrix signal;
    int sample_rate = 0;   // 0 when no WAV was involved
};

LoadedInput load_inputs(const std::vector<std::string>& paths) {
    LoadedInput loaded;
    std::vector<bss::SignalMatrix> parts;
    Eigen::Index rows = 0;
    Eigen::Index cols = -1;

    for (const std::string& text : paths) {
        const std::filesystem::path path(text);
        const std::string ext = lower_extension(path);
        bss::SignalMatrix part;
        if (ext == ".csv") {
            part = bss::io::read_csv_matrix(path);
        } else if (ext == ".wav") {
            bss::io::AudioBuffer audio = bss::io::read_wav(path);
            part = std::move(audio.signal);
            if (loaded.sample_rate == 0) loaded.sample_rate = audio.sample_rate;
        } else if (ext == ".pgm") {
            part = bss::io::read_pgm(path).signal;
        } else {
            throw std::invalid_argument("input '" + text + "' must be a .csv, .wav or .pgm file");
        }
        if (cols >= 0 && part.cols() != cols) {
            throw std::invalid_argument("input '" + text + "' has " + std::to_string(part.cols()) +
                                        " samples per channel, earlier inputs have " +
                                        std::to_string(cols));
        }
        cols = part.cols();
        rows += part.rows();
        parts.push_back(std::move(part));
    }

    loaded.signal.resize(rows, cols);
    Eigen::Index at = 0;
    for (const bss::SignalMatrix& part : parts) {
        loaded.signal.middleRows(at, part.rows()) = part;
        at += part.rows();
    }
    return loaded;
}

void write_estimates(const std::filesystem::path& path, const bss::SignalMatrix& estimates,
                     int sample_rate) {
    const std::string ext = lower_extension(path);
    if (ext == ".csv") {
        bss::io::write_csv_matrix(path, estimates);
        return;
    }
    if (ext == ".wav") {
        // Estimates have roughly unit variance, so peaks land well outside
        // [-1, 1]; rescale each channel to 0.99 full scale before quantizing.
        bss::io::AudioBuffer audio;
        audio.signal = estimates;
        audio.sample_rate = sample_rate > 0 ? sample_rate : 44100;
        for (Eigen::Index r = 0; r < audio.signal.rows(); ++r) {
            const double peak = audio.signal.row(r).cwiseAbs().maxCoeff();
            if (peak > 0.0) audio.signal.row(r) *= 0.99 / peak;
        }
        bss::io::write_wav(path, audio);
        return;
    }
    throw std::invalid_argument("output '" + path.string() + "' must be a .csv or .wav file");
}

nlohmann::json separation_report(const bss::FastIcaConfig& config,
                                 const bss::SeparationResult& result) {
    return {
        {"nonlinearity", bss::to_string(config.nonlinearity)},
        {"epsilon", config.epsilon},
        {"max_iterations", config.max_iterations},
        {"seed", config.seed},
        {"components", result.w.rows()},
        {"iterations", result.iterations},
        {"converged", result.converged},
        {"elapsed_seconds", result.elapsed_seconds},
    };
}

nlohmann::json match_block(const bss::MatchReport& match) {
    return {
        {"assignment", match.assignment},
        {"signs", match.signs},
        {"pair_correlations", match.pair_correlations},
        {"c_ave", match.c_ave},
    };
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind source separation via fixed-point ICA"};
    app.require_subcommand(1);
    app.failure_message([](const CLI::App*, const CLI::Error& e) {
        return std::string("bss: ") + e.what() + "\n";
    });

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Generate synthetic source signals");
    std::vector<std::string> gen_specs;
    std::int64_t gen_samples = 0;
    std::string gen_out;
    gen->add_option("--spec", gen_specs,
                    "Source spec, repeatable: sine:P, sawtooth:P, square:P, uniform:S, laplacian:S")
        ->required();
    gen->add_option("--samples", gen_samples, "Samples per channel")->required();
    gen->add_option("--out", gen_out, "Output CSV, one row per source")->required();
    gen->callback([&] {
        std::vector<bss::SourceSpec> specs;
        specs.reserve(gen_specs.size());
        for (const std::string& text : gen_specs) specs.push_back(bss::SourceSpec::parse(text));
        bss::io::write_csv_matrix(gen_out, bss::gen_sources(specs, gen_samples));
    });

    // --- mix ---------------------------------------------------------------
    auto* mixcmd = app.add_subcommand("mix", "Mix sources through a matrix");
    std::string mix_sources, mix_matrix, mix_out, mix_save;
    std::uint64_t mix_seed = 0;
    mixcmd->add_option("--sources", mix_sources, "Source CSV, one row per channel")->required();
    auto* mix_matrix_opt = mixcmd->add_option("--matrix", mix_matrix, "Mixing matrix CSV");
    auto* mix_seed_opt = mixcmd->add_option("--seed", mix_seed, "Draw a random mixing matrix");
    mixcmd->add_option("--out", mix_out, "Output CSV of mixed channels")->required();
    mixcmd->add_option("--save-matrix", mix_save, "Write the mixing matrix that was used");
    mixcmd->callback([&] {
        if (mix_matrix_opt->count() + mix_seed_opt->count() != 1) {
            throw std::invalid_argument("mix: exactly one of --matrix or --seed is required");
        }
        const bss::SignalMatrix sources = bss::io::read_csv_matrix(mix_sources);
        const bss::MixingMatrix a = mix_matrix_opt->count() > 0
                                        ? bss::MixingMatrix(bss::io::read_csv_matrix(mix_matrix))
                                        : bss::random_mixing_matrix(sources.rows(), mix_seed);
        bss::io::write_csv_matrix(mix_out, bss::mix(sources, a));
        if (!mix_save.empty()) bss::io::write_csv_matrix(mix_save, a);
    });

    // --- separate ----------------------------------------------------------
    auto* sep = app.add_subcommand("separate", "Recover independent components");
    std::vector<std::string> sep_inputs;
    std::int64_t sep_components = 0;
    std::string sep_kind, sep_out, sep_truth, sep_report;
    bss::FastIcaConfig config;
    sep->add_option("--input", sep_inputs, "Mixture file (.csv, .wav or .pgm); repeatable to stack channels")
        ->required();
    sep->add_option("--components", sep_components, "Number of components to extract")->required();
    sep->add_option("--nonlinearity", sep_kind, "One of tanh, gauss, pow3, sin")->required();
    sep->add_option("--epsilon", config.epsilon, "Convergence tolerance");
    sep->add_option("--max-iter", config.max_iterations, "Iteration cap per component");
    sep->add_option("--seed", config.seed, "Seed for the initial weight vectors");
    sep->add_option("--out", sep_out, "Estimates file (.csv or .wav)")->required();
    sep->add_option("--sources", sep_truth, "True sources CSV; prints c_ave after matching");
    sep->add_option("--report", sep_report, "Write a JSON run report");
    sep->callback([&] {
        const LoadedInput input = load_inputs(sep_inputs);
        config.nonlinearity = bss::parse_nonlinearity(sep_kind);
        config.components = sep_components;
        const bss::SeparationResult result = bss::run(input.signal, config);
        write_estimates(sep_out, result.estimates, input.sample_rate);

        nlohmann::json report = separation_report(config, result);
        if (!sep_truth.empty()) {
            const bss::SignalMatrix truth = bss::io::read_csv_matrix(sep_truth);
            const bss::MatchReport match = bss::match_sources(truth, result.estimates);
            report["match"] = match_block(match);
            std::cout << "c_ave " << fixed6(match.c_ave) << "\n";
        }
        if (!sep_report.empty()) write_text_file(sep_report, report.dump(2) + "\n");
    });

    // --- benchmark ---------------------------------------------------------
    auto* bench = app.add_subcommand("benchmark", "Score nonlinearities over repeated runs");
    std::string bench_sources, bench_matrix, bench_out;
    std::vector<std::string> bench_kinds = {"tanh", "gauss", "pow3", "sin"};
    int bench_repeats = 0;
    std::uint64_t bench_seed = 0;
    bench->add_option("--sources", bench_sources, "True sources CSV")->required();
    bench->add_option("--matrix", bench_matrix, "Mixing matrix CSV")->required();
    bench->add_option("--repeats", bench_repeats, "Runs per nonlinearity")->required();
    bench->add_option("--nonlinearities", bench_kinds, "Comma-separated subset of tanh,gauss,pow3,sin")
        ->delimiter(',');
    bench->add_option("--seed", bench_seed, "Base seed; run r uses seed + r");
    bench->add_option("--out", bench_out, "Report file (.csv or .json)")->required();
    bench->callback([&] {
        const bss::SignalMatrix sources = bss::io::read_csv_matrix(bench_sources);
        const bss::MixingMatrix a = bss::io::read_csv_matrix(bench_matrix);
        std::vector<bss::NonlinearityKind> kinds;
        kinds.reserve(bench_kinds.size());
        for (const std::string& name : bench_kinds) kinds.push_back(bss::parse_nonlinearity(name));

        const std::string label = std::filesystem::path(bench_sources).stem().string();
        const bss::BenchmarkReport report =
            bss::benchmark(sources, a, kinds, bench_repeats, bench_seed, label);

        const std::string ext = lower_extension(bench_out);
        if (ext == ".json") {
            write_text_file(bench_out, bss::report_to_json(report));
        } else if (ext == ".csv") {
            write_text_file(bench_out, bss::report_to_csv(report));
        } else {
            throw std::invalid_argument("benchmark: --out must end in .csv or .json");
        }
        std::cout << bss::report_to_csv(report);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "bss: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
