#pragma once

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "bss/random.hpp"
#include "bss/types.hpp"

namespace testutil {

// Standard normal draw via Box-Muller; uniform_open01 keeps the log finite.
inline double gaussian(bss::Rng& rng) {
    const double u1 = bss::uniform_open01(rng);
    const double u2 = bss::uniform_open01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline Eigen::MatrixXd gaussian_matrix(bss::Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = gaussian(rng);
    }
    return m;
}

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0; ; ++i) {
            auto candidate = base / (tag + "-" + std::to_string(i));
            if (std::filesystem::create_directory(candidate)) {
                path_ = candidate;
                break;
            }
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path file(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace testutil
