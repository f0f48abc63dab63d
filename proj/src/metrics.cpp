#include "bss/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bss/error.hpp"
#include "bss/kernels.hpp"

namespace bss {

double correlation(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("correlation: length mismatch (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()) + ")");
    }
    if (x.size() < 2) {
        throw std::invalid_argument("correlation: need at least 2 samples");
    }
    const auto t = kernels::pearson_terms(x, y);
    if (t.ss_x <= 0.0) throw DegenerateInputError("correlation: first input has zero variance");
    if (t.ss_y <= 0.0) throw DegenerateInputError("correlation: second input has zero variance");
    const double c = t.cross / (std::sqrt(t.ss_x) * std::sqrt(t.ss_y));
    return std::clamp(c, -1.0, 1.0);
}

// Hungarian algorithm with potentials, O(M^3). Runs on cost = -value so the
// minimum-cost assignment maximizes total value.
std::vector<int> max_total_assignment(const Eigen::MatrixXd& value) {
    if (value.rows() != value.cols()) {
        throw std::invalid_argument("max_total_assignment: matrix must be square");
    }
    const int n = static_cast<int>(value.rows());
    if (n == 0) return {};

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = match[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = -value(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> assignment(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (match[j] != 0) assignment[match[j] - 1] = j - 1;
    }
    return assignment;
}

MatchReport match_sources(const SignalMatrix& sources, const SignalMatrix& estimates) {
    const Eigen::Index m = sources.rows();
    if (estimates.rows() != m) {
        throw std::invalid_argument("match_sources: channel count mismatch");
    }
    if (estimates.cols() != sources.cols()) {
        throw std::invalid_argument("match_sources: sample count mismatch");
    }
    if (m == 0) throw std::invalid_argument("match_sources: empty input");

    // Channels are copied out once so the correlation kernel sees contiguous
    // data instead of strided matrix rows.
    std::vector<Eigen::VectorXd> src(m), est(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        src[i] = sources.row(i);
        est[i] = estimates.row(i);
    }

    Eigen::MatrixXd raw(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            try {
                raw(i, j) = correlation(src[i], est[j]);
            } catch (const DegenerateInputError&) {
                const bool source_bad = kernels::pearson_terms(src[i], src[i]).ss_x <= 0.0;
                const std::string which = source_bad ? "source" : "estimate";
                const Eigen::Index idx = source_bad ? i : j;
                throw DegenerateInputError("match_sources: " + which + " channel " +
                                           std::to_string(idx) + " has zero variance");
            }
        }
    }

    MatchReport report;
    report.assignment = max_total_assignment(raw.cwiseAbs());
    report.signs.resize(m);
    report.pair_correlations.resize(m);
    double total = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double c = raw(i, report.assignment[i]);
        report.signs[i] = c < 0.0 ? -1 : 1;
        report.pair_correlations[i] = std::abs(c);
        total += std::abs(c);
    }
    report.c_ave = total / static_cast<double>(m);
    return report;
}

} // namespace bss
