#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "bss/error.hpp"
#include "bss/preprocess.hpp"
#include "bss/random.hpp"
#include "test_util.hpp"

using bss::center;
using bss::sample_covariance;
using bss::whiten;

TEST_CASE("center subtracts per-row means") {
    bss::SignalMatrix x(3, 4);
    x.row(0) << 1, 2, 3, 2;
    x.row(1) << -1, 1, -1, 1;
    x.row(2) << 5, 5, 5, 5;
    const auto [c, mean] = center(x);
    CHECK(mean[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(mean[1] == 0.0);
    CHECK(mean[2] == 5.0);
    CHECK(c.row(2).cwiseAbs().maxCoeff() == 0.0);
    for (Eigen::Index r = 0; r < 3; ++r) {
        const double scale = std::max(1.0, x.row(r).cwiseAbs().maxCoeff());
        CHECK(std::abs(c.row(r).mean()) < 1e-12 * scale);
    }
}

TEST_CASE("center rejects empty input") {
    CHECK_THROWS_AS(center(bss::SignalMatrix(0, 0)), std::invalid_argument);
}

TEST_CASE("sample_covariance against hand-computed cases") {
    bss::SignalMatrix one(1, 2);
    one << 1, -1;
    CHECK(sample_covariance(one)(0, 0) == doctest::Approx(1.0).epsilon(1e-15));

    bss::SignalMatrix same(2, 2);
    same.row(0) << 1, -1;
    same.row(1) << 1, -1;
    const Eigen::MatrixXd cs = sample_covariance(same);
    CHECK((cs - Eigen::MatrixXd::Ones(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

    bss::SignalMatrix opposite(2, 2);
    opposite.row(0) << 1, -1;
    opposite.row(1) << -1, 1;
    Eigen::MatrixXd expected(2, 2);
    expected << 1, -1, -1, 1;
    CHECK((sample_covariance(opposite) - expected).cwiseAbs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(sample_covariance(bss::SignalMatrix(2, 1)), std::invalid_argument);
}

TEST_CASE("whiten of a single channel divides by the standard deviation") {
    bss::SignalMatrix x(1, 2);
    x << 2, -2;
    const auto [z, model] = whiten(x);
    CHECK(z(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(z(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(model.whitener(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(model.dewhitener(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("whiten sorts eigenvalues descending") {
    // Two independent channels, variances 4 and 1: the whitener must scale
    // the high-variance channel by 0.5 and the other by 1.
    bss::SignalMatrix x(2, 4);
    x.row(0) << 2, -2, 2, -2;
    x.row(1) << 1, 1, -1, -1;
    const auto [z, model] = whiten(x);
    Eigen::MatrixXd expected(2, 2);
    expected << 0.5, 0, 0, 1;
    CHECK((model.whitener - expected).cwiseAbs().maxCoeff() < 1e-12);
    (void)z;
}

TEST_CASE("whitening contract on random full-rank inputs") {
    // 50 inputs across M in {2, 3, 5}: identity covariance and exact
    // reconstruction, both within 1e-8.
    bss::Rng rng(99);
    const Eigen::Index n = 1000;
    int checked = 0;
    const Eigen::Index sizes[] = {2, 3, 5};
    for (int round = 0; checked < 50; ++round) {
        const Eigen::Index m = sizes[round % 3];
        const bss::SignalMatrix x = testutil::gaussian_matrix(rng, m, n);
        const auto [z, model] = whiten(x);

        const Eigen::MatrixXd cov = sample_covariance(z);
        CHECK((cov - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-8);

        const auto [centered_x, mean] = center(x);
        const double err = (model.dewhitener * z - centered_x).norm() / centered_x.norm();
        CHECK(err < 1e-8);

        const Eigen::MatrixXd round_trip = model.whitener * model.dewhitener;
        CHECK((round_trip - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-8);
        ++checked;
    }
}

TEST_CASE("whiten is deterministic and sign-fixed") {
    bss::Rng rng(7);
    const bss::SignalMatrix x = testutil::gaussian_matrix(rng, 3, 200);
    const auto [z1, m1] = whiten(x);
    const auto [z2, m2] = whiten(x);
    CHECK(z1 == z2);
    CHECK(m1.whitener == m2.whitener);
    // Sign convention: each eigenvector's largest-magnitude entry is positive,
    // so each dewhitener column's largest-magnitude entry is positive too
    // (scaling by sqrt of the eigenvalue preserves signs).
    for (Eigen::Index c = 0; c < 3; ++c) {
        Eigen::Index at = 0;
        m2.dewhitener.col(c).cwiseAbs().maxCoeff(&at);
        CHECK(m2.dewhitener(at, c) > 0.0);
    }
}

TEST_CASE("whiten rejects rank-deficient input") {
    bss::Rng rng(11);
    bss::SignalMatrix x(3, 100);
    x.row(0) = testutil::gaussian_matrix(rng, 1, 100);
    x.row(1) = testutil::gaussian_matrix(rng, 1, 100);
    x.row(2) = 2.0 * x.row(0) - 3.0 * x.row(1);
    CHECK_THROWS_AS(whiten(x), bss::DegenerateInputError);

    CHECK_THROWS_AS(whiten(bss::SignalMatrix(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(whiten(bss::SignalMatrix(0, 0)), std::invalid_argument);
}

TEST_CASE("whitening white data is at most a rotation") {
    bss::Rng rng(23);
    const Eigen::Index n = 20000;
    bss::SignalMatrix x = testutil::gaussian_matrix(rng, 2, n);
    // Make the sample covariance exactly identity and the mean exactly zero.
    const auto [c, mean] = center(x);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(sample_covariance(c));
    const Eigen::MatrixXd fix = eigen.operatorInverseSqrt();
    x = fix * c;
    const auto [z, model] = whiten(x);
    // whitener must then be orthogonal.
    const Eigen::MatrixXd wwt = model.whitener * model.whitener.transpose();
    CHECK((wwt - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((sample_covariance(z) - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
}
