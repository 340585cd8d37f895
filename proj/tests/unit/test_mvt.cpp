#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>

#include "arakelov/mvt.hpp"
#include "arakelov/sampler.hpp"
#include "../support/oracles.hpp"

using namespace arakelov;

TEST_CASE("right side of the mean value formula") {
    const NumberField Q = NumberField::rational();
    CHECK(mvt_rhs(Q, 3, 1, {1.0}) == doctest::Approx(4 * std::numbers::pi / 3).epsilon(1e-14));
    CHECK(mvt_rhs(Q, 3, 2, {1.0, 1.0}) == doctest::Approx(17.546).epsilon(1e-4));
    CHECK(mvt_rhs(Q, 4, 2, {0.5, 2.0}) == doctest::Approx(oracle::ball_volume(4) * oracle::ball_volume(4)));
    CHECK(mvt_rhs(Q, 3, 2, {1.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(mvt_rhs(Q, 3, 3, {1, 1, 1}), InvalidArgument);
    CHECK_THROWS_AS(mvt_rhs(Q, 3, 2, {1}), InvalidArgument);
    // Z[i]^2 in C^2 = R^4 with doubled measure: disc^-1 * 2^2 * V_4.
    CHECK(mvt_rhs(NumberField::quadratic(-1), 2, 1, {1.0}) ==
          doctest::Approx(std::pow(4.0, -1.0) * 4 * oracle::ball_volume(4)));
}

TEST_CASE("rank tuples exclude dependent vectors") {
    for (int n = 2; n <= 6; ++n) {
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
        CHECK(count_rank_tuples(I, {1.0}) == static_cast<std::uint64_t>(2 * n));
        CHECK(count_rank_tuples(I, {1.0, 1.0}) == static_cast<std::uint64_t>(2 * n * (2 * n - 2)));
    }
    // In Z^2 with t = sqrt 2: 8 vectors; partners of v exclude +-v.
    CHECK(count_rank_tuples(Eigen::MatrixXd::Identity(2, 2), {std::sqrt(2.0), std::sqrt(2.0)}) == 8 * 6);
    CHECK(count_rank_tuples(Eigen::MatrixXd::Identity(3, 3), {1.0, 0.5}) == 0);
}

TEST_CASE("summaries use the unbiased variance") {
    const MonteCarloEstimate e = summarize({1, 2, 3, 4});
    CHECK(e.mean == doctest::Approx(2.5));
    CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(summarize({2, 2, 2}).std_error == 0.0);
}

TEST_CASE("Monte Carlo side is thread invariant and consistent") {
    RandomLatticeSpec spec;
    spec.n = 3;
    spec.p = 100003;
    spec.seed = 7;
    MvtOptions serial;
    serial.trials = 400;
    MvtOptions parallel = serial;
    parallel.threads = 4;
    const MonteCarloEstimate a = mvt_lhs_estimate(3, 1, {1.0}, spec, serial);
    const MonteCarloEstimate b = mvt_lhs_estimate(3, 1, {1.0}, spec, parallel);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.trials == 400);
    CHECK(a.n == 3);
    CHECK(a.p == 100003);

    const MvtComparison c = mvt_compare(3, 1, {1.0}, spec, serial);
    CHECK(c.rhs == doctest::Approx(4 * std::numbers::pi / 3));
    CHECK(c.z_score == doctest::Approx((c.lhs.mean - c.rhs) / c.lhs.std_error));
    CHECK(std::abs(c.z_score) < 4);

    MvtOptions few;
    few.trials = 10;
    CHECK_THROWS_AS(mvt_lhs_estimate(3, 1, {1.0}, spec, few), InvalidArgument);
    RandomLatticeSpec gaussian = spec;
    gaussian.field = NumberField::quadratic(-1);
    CHECK_THROWS_AS(mvt_lhs_estimate(3, 1, {1.0}, gaussian, serial), Unsupported);
}

TEST_CASE("parallel_for visits every index and rethrows") {
    std::vector<std::atomic<int>> seen(1000);
    parallel_for(1000, 8, [&](std::uint64_t i) { seen[i]++; });
    for (const auto& s : seen) REQUIRE(s.load() == 1);
    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [](std::uint64_t i) {
                                     if (i == 57) throw InvalidArgument("boom");
                                 }),
                    InvalidArgument);
}

TEST_CASE("right side scales homogeneously in the radii") {
    const NumberField Q = NumberField::rational();
    CHECK(mvt_rhs(Q, 4, 1, {1.5}) == doctest::Approx(oracle::ball_volume(4) * std::pow(1.5, 4)).epsilon(1e-14));
    for (int n = 3; n <= 6; ++n)
        for (int l = 1; l < n && l <= 3; ++l) {
            std::vector<double> radii(l), scaled(l);
            for (int j = 0; j < l; ++j) {
                radii[j] = 0.7 + 0.2 * j;
                scaled[j] = 1.3 * radii[j];
            }
            CHECK(mvt_rhs(Q, n, l, scaled) ==
                  doctest::Approx(mvt_rhs(Q, n, l, radii) * std::pow(1.3, n * l)).epsilon(1e-13));
        }
}

TEST_CASE("tiny radii see no lattice points") {
    RandomLatticeSpec spec;
    spec.n = 3;
    spec.p = 100003;
    spec.seed = 21;
    MvtOptions options;
    options.trials = 500;
    CHECK(mvt_lhs_estimate(3, 1, {0.01}, spec, options).mean < 0.05);
}
