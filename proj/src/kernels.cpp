#include "bss/kernels.hpp"

#include <stdexcept>
#include <vector>

#include "bss/detail/nonlinearity_eval.hpp"

namespace bss::kernels {

namespace {

Eigen::Index chunk_count(Eigen::Index n) {
    return (n + kChunkSamples - 1) / kChunkSamples;
}

Eigen::Index chunk_end(Eigen::Index begin, Eigen::Index n) {
    return std::min(begin + kChunkSamples, n);
}

} // namespace

Eigen::VectorXd row_means(const SignalMatrix& x) {
    const Eigen::Index m = x.rows();
    const Eigen::Index n = x.cols();
    if (n == 0) throw std::invalid_argument("row_means: empty matrix");

    const Eigen::Index chunks = chunk_count(n);
    std::vector<Eigen::VectorXd> partial(chunks, Eigen::VectorXd::Zero(m));

#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < chunks; ++c) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(m);
        const Eigen::Index end = chunk_end(c * kChunkSamples, n);
        for (Eigen::Index j = c * kChunkSamples; j < end; ++j) {
            acc += x.col(j);
        }
        partial[c] = std::move(acc);
    }

    Eigen::VectorXd sum = Eigen::VectorXd::Zero(m);
    for (const auto& p : partial) sum += p;
    return sum / static_cast<double>(n);
}

SignalMatrix centered(const SignalMatrix& x, const Eigen::VectorXd& means) {
    if (means.size() != x.rows()) {
        throw std::invalid_argument("centered: mean vector length does not match channel count");
    }
    const Eigen::Index n = x.cols();
    SignalMatrix out(x.rows(), n);
    const Eigen::Index chunks = chunk_count(n);

#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < chunks; ++c) {
        const Eigen::Index begin = c * kChunkSamples;
        const Eigen::Index end = chunk_end(begin, n);
        for (Eigen::Index j = begin; j < end; ++j) {
            out.col(j) = x.col(j) - means;
        }
    }
    return out;
}

Eigen::MatrixXd covariance(const SignalMatrix& centered_x) {
    const Eigen::Index m = centered_x.rows();
    const Eigen::Index n = centered_x.cols();
    if (n < 2) throw std::invalid_argument("covariance: need at least 2 samples");

    const Eigen::Index chunks = chunk_count(n);
    std::vector<Eigen::MatrixXd> partial(chunks, Eigen::MatrixXd::Zero(m, m));

#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < chunks; ++c) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
        const Eigen::Index end = chunk_end(c * kChunkSamples, n);
        for (Eigen::Index j = c * kChunkSamples; j < end; ++j) {
            acc.selfadjointView<Eigen::Lower>().rankUpdate(centered_x.col(j));
        }
        partial[c] = std::move(acc);
    }

    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(m, m);
    for (const auto& p : partial) sum += p;
    sum /= static_cast<double>(n);
    return sum.selfadjointView<Eigen::Lower>();
}

SignalMatrix apply_linear(const Eigen::MatrixXd& a, const SignalMatrix& x) {
    if (a.cols() != x.rows()) {
        throw std::invalid_argument("apply_linear: matrix columns do not match channel count");
    }
    const Eigen::Index n = x.cols();
    SignalMatrix out(a.rows(), n);
    const Eigen::Index chunks = chunk_count(n);

#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < chunks; ++c) {
        const Eigen::Index begin = c * kChunkSamples;
        const Eigen::Index end = chunk_end(begin, n);
        out.middleCols(begin, end - begin).noalias() = a * x.middleCols(begin, end - begin);
    }
    return out;
}

FixedPointStats fixed_point_stats(const SignalMatrix& z, const Eigen::VectorXd& w,
                                  NonlinearityKind kind) {
    const Eigen::Index m = z.rows();
    const Eigen::Index n = z.cols();
    if (w.size() != m) {
        throw std::invalid_argument("fixed_point_stats: weight length does not match channel count");
    }
    if (n == 0) throw std::invalid_argument("fixed_point_stats: empty matrix");

    const Eigen::Index chunks = chunk_count(n);
    std::vector<Eigen::VectorXd> partial_vec(chunks, Eigen::VectorXd::Zero(m));
    std::vector<double> partial_deriv(chunks, 0.0);

#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < chunks; ++c) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(m);
        double deriv = 0.0;
        const Eigen::Index end = chunk_end(c * kChunkSamples, n);
        for (Eigen::Index j = c * kChunkSamples; j < end; ++j) {
            const double u = w.dot(z.col(j));
            acc += z.col(j) * detail::eval_score(kind, u);
            deriv += detail::eval_score_derivative(kind, u);
        }
        partial_vec[c] = std::move(acc);
        partial_deriv[c] = deriv;
    }

    FixedPointStats stats;
    stats.weighted_mean = Eigen::VectorXd::Zero(m);
    stats.score_derivative_mean = 0.0;
    for (Eigen::Index c = 0; c < chunks; ++c) {
        stats.weighted_mean += partial_vec[c];
        stats.score_derivative_mean += partial_deriv[c];
    }
    stats.weighted_mean /= static_cast<double>(n);
    stats.score_derivative_mean /= static_cast<double>(n);
    return stats;
}

double mean_contrast(const SignalMatrix& z, const Eigen::VectorXd& w,
                     NonlinearityKind kind) {
    const Eigen::Index n = z.cols();
    if (w.size() != z.rows()) {
        throw std::invalid_argument("mean_contrast: weight length does not match channel count");
    }
    if (n == 0) throw std::invalid_argument("mean_contrast: empty matrix");

    const Eigen::Index chunks = chunk_count(n);
    std::vector<double> partial(chunks, 0.0);

#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < chunks; ++c) {
        double acc = 0.0;
        const Eigen::Index end = chunk_end(c * kChunkSamples, n);
        for (Eigen::Index j = c * kChunkSamples; j < end; ++j) {
            acc += detail::eval_contrast(kind, w.dot(z.col(j)));
        }
        partial[c] = acc;
    }

    double sum = 0.0;
    for (double p : partial) sum += p;
    return sum / static_cast<double>(n);
}

PearsonTerms pearson_terms(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::Index n = x.size();
    if (y.size() != n) throw std::invalid_argument("pearson_terms: length mismatch");
    if (n == 0) throw std::invalid_argument("pearson_terms: empty input");

    const Eigen::Index chunks = chunk_count(n);
    std::vector<double> sx(chunks, 0.0), sy(chunks, 0.0);

#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < chunks; ++c) {
        double ax = 0.0, ay = 0.0;
        const Eigen::Index end = chunk_end(c * kChunkSamples, n);
        for (Eigen::Index j = c * kChunkSamples; j < end; ++j) {
            ax += x[j];
            ay += y[j];
        }
        sx[c] = ax;
        sy[c] = ay;
    }
    double total_x = 0.0, total_y = 0.0;
    for (Eigen::Index c = 0; c < chunks; ++c) {
        total_x += sx[c];
        total_y += sy[c];
    }

    PearsonTerms t;
    t.mean_x = total_x / static_cast<double>(n);
    t.mean_y = total_y / static_cast<double>(n);

    std::vector<double> ssx(chunks, 0.0), ssy(chunks, 0.0), sxy(chunks, 0.0);
#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < chunks; ++c) {
        double ax = 0.0, ay = 0.0, axy = 0.0;
        const Eigen::Index end = chunk_end(c * kChunkSamples, n);
        for (Eigen::Index j = c * kChunkSamples; j < end; ++j) {
            const double dx = x[j] - t.mean_x;
            const double dy = y[j] - t.mean_y;
            ax += dx * dx;
            ay += dy * dy;
            axy += dx * dy;
        }
        ssx[c] = ax;
        ssy[c] = ay;
        sxy[c] = axy;
    }
    t.ss_x = 0.0;
    t.ss_y = 0.0;
    t.cross = 0.0;
    for (Eigen::Index c = 0; c < chunks; ++c) {
        t.ss_x += ssx[c];
        t.ss_y += ssy[c];
        t.cross += sxy[c];
    }
    return t;
}

namespace serial {

Eigen::VectorXd row_means(const SignalMatrix& x) {
    if (x.cols() == 0) throw std::invalid_argument("row_means: empty matrix");
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(x.rows());
    for (Eigen::Index j = 0; j < x.cols(); ++j) sum += x.col(j);
    return sum / static_cast<double>(x.cols());
}

SignalMatrix centered(const SignalMatrix& x, const Eigen::VectorXd& means) {
    if (means.size() != x.rows()) {
        throw std::invalid_argument("centered: mean vector length does not match channel count");
    }
    return x.colwise() - means;
}

Eigen::MatrixXd covariance(const SignalMatrix& centered_x) {
    if (centered_x.cols() < 2) throw std::invalid_argument("covariance: need at least 2 samples");
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(centered_x.rows(), centered_x.rows());
    for (Eigen::Index j = 0; j < centered_x.cols(); ++j) {
        sum.selfadjointView<Eigen::Lower>().rankUpdate(centered_x.col(j));
    }
    sum /= static_cast<double>(centered_x.cols());
    return sum.selfadjointView<Eigen::Lower>();
}

SignalMatrix apply_linear(const Eigen::MatrixXd& a, const SignalMatrix& x) {
    if (a.cols() != x.rows()) {
        throw std::invalid_argument("apply_linear: matrix columns do not match channel count");
    }
    return a * x;
}

FixedPointStats fixed_point_stats(const SignalMatrix& z, const Eigen::VectorXd& w,
                                  NonlinearityKind kind) {
    if (w.size() != z.rows()) {
        throw std::invalid_argument("fixed_point_stats: weight length does not match channel count");
    }
    if (z.cols() == 0) throw std::invalid_argument("fixed_point_stats: empty matrix");
    FixedPointStats stats;
    stats.weighted_mean = Eigen::VectorXd::Zero(z.rows());
    stats.score_derivative_mean = 0.0;
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        const double u = w.dot(z.col(j));
        stats.weighted_mean += z.col(j) * detail::eval_score(kind, u);
        stats.score_derivative_mean += detail::eval_score_derivative(kind, u);
    }
    stats.weighted_mean /= static_cast<double>(z.cols());
    stats.score_derivative_mean /= static_cast<double>(z.cols());
    return stats;
}

double mean_contrast(const SignalMatrix& z, const Eigen::VectorXd& w,
                     NonlinearityKind kind) {
    if (w.size() != z.rows()) {
        throw std::invalid_argument("mean_contrast: weight length does not match channel count");
    }
    if (z.cols() == 0) throw std::invalid_argument("mean_contrast: empty matrix");
    double sum = 0.0;
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        sum += detail::eval_contrast(kind, w.dot(z.col(j)));
    }
    return sum / static_cast<double>(z.cols());
}

PearsonTerms pearson_terms(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::Index n = x.size();
    if (y.size() != n) throw std::invalid_argument("pearson_terms: length mismatch");
    if (n == 0) throw std::invalid_argument("pearson_terms: empty input");

    PearsonTerms t;
    t.mean_x = x.mean();
    t.mean_y = y.mean();
    t.ss_x = 0.0;
    t.ss_y = 0.0;
    t.cross = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double dx = x[j] - t.mean_x;
        const double dy = y[j] - t.mean_y;
        t.ss_x += dx * dx;
        t.ss_y += dy * dy;
        t.cross += dx * dy;
    }
    return t;
}

} // namespace serial

} // namespace bss::kernels
