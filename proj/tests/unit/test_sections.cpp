#include <doctest.h>

#include <cmath>
#include <random>

#include "arakelov/gram_io.hpp"
#include "arakelov/sections.hpp"
#include "../support/oracles.hpp"

using namespace arakelov;

namespace {

const NumberField kQ = NumberField::rational();

std::string data_file(const std::string& name) { return std::string(ARAKELOV_DATA_DIR) + "/" + name; }

bool closed_under_negation(const std::vector<ModuleVector>& v) {
    for (ModuleVector x : v) {
        for (auto& c : x) c = -c;
        if (!std::binary_search(v.begin(), v.end(), x)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sections of small bundles over Q") {
    CHECK(global_sections(trivial_bundle(kQ, 1)).nonzero_sections == std::vector<ModuleVector>{{-1}, {1}});
    CHECK(global_sections(make_rational_bundle(Eigen::MatrixXd::Constant(1, 1, 9.0))).nonzero_sections.empty());
    CHECK(global_sections(trivial_bundle(kQ, 2)).nonzero_sections ==
          std::vector<ModuleVector>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
}

TEST_CASE("existence of sections in rank eight") {
    CHECK_FALSE(has_nonzero_section(scale(trivial_bundle(kQ, 8), 1.01)));
    CHECK(has_nonzero_section(trivial_bundle(kQ, 8)));
    const ArakelovBundle E8 = read_gram_file(data_file("e8.gram"));
    CHECK(E8.rank() == 8);
    CHECK(degree(E8) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(has_nonzero_section(E8));
    CHECK(shortest_vector_length(E8) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(count_in_region(E8, {std::sqrt(2.0)}) == 240);
}

TEST_CASE("node cap is indeterminate rather than false") {
    const ArakelovBundle big = scale(trivial_bundle(kQ, 10), 0.2);
    CHECK_THROWS_AS(has_nonzero_section(big, 5), Indeterminate);
    const SectionReport r = global_sections(big, 5);
    CHECK(r.truncated);
}

TEST_CASE("points in a region") {
    CHECK(count_in_region(trivial_bundle(kQ, 1), {2.5}) == 4);
    CHECK(count_in_region(trivial_bundle(kQ, 2), {1.0}) == 4);
    CHECK(count_in_region(trivial_bundle(kQ, 3), {1e-9}) == 0);
    CHECK(count_in_region(trivial_bundle(NumberField::quadratic(-1), 2), {0.0}) == 0);
    // Z[i]: 4 units of norm 1, 4 elements of norm 2.
    CHECK(count_in_region(trivial_bundle(NumberField::quadratic(-1), 1), {std::sqrt(2.0)}) == 8);
    CHECK_THROWS_AS(count_in_region(trivial_bundle(kQ, 1), {1.0, 1.0}), InvalidArgument);
}

TEST_CASE("Minkowski guarantee") {
    for (int n = 1; n <= 24; ++n) CHECK_FALSE(minkowski_guarantee(trivial_bundle(kQ, n)));
    // Rank two over Q: exp(deg) V_2 > 2^2 holds for the Gram c I exactly when c < pi / 4.
    const double edge = std::numbers::pi / 4;
    const ArakelovBundle inside = make_rational_bundle(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * (edge - 1e-6)));
    CHECK(minkowski_guarantee(inside));
    CHECK(has_nonzero_section(inside));
    CHECK_FALSE(minkowski_guarantee(make_rational_bundle(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * (edge + 1e-6)))));
    // A generous example: deg = log 6 + log(16 / pi).
    const double c = std::numbers::pi / 96;
    const ArakelovBundle wide = make_rational_bundle(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * c));
    CHECK(std::exp(degree(wide)) * std::numbers::pi > 16);
    CHECK(minkowski_guarantee(wide));
    CHECK_FALSE(global_sections(wide).nonzero_sections.empty());
    // Over Z[i], every guaranteed bundle tested has a section.
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::MatrixXcd H = oracle::random_hpd(rng, 2, 0.1, 0.6, 0.2);
        const ArakelovBundle E = make_bundle(NumberField::quadratic(-1), {H});
        if (minkowski_guarantee(E)) REQUIRE(has_nonzero_section(E));
    }
}

TEST_CASE("sections match a box search over Q") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 5;
        const Eigen::MatrixXd G = oracle::random_spd(rng, n, 0.3, 1.3, 0.4);
        const SectionReport r = global_sections(make_rational_bundle(G));
        REQUIRE_FALSE(r.truncated);
        REQUIRE(r.nonzero_sections == oracle::real_ball(G, 1.0, 0.0));
        REQUIRE(closed_under_negation(r.nonzero_sections));
    }
}

TEST_CASE("sections match a box search over imaginary quadratic fields") {
    std::mt19937_64 rng(77);
    for (long long D : {-1LL, -2LL, -3LL, -7LL}) {
        CAPTURE(D);
        const NumberField K = NumberField::quadratic(D);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + trial % 3;
            const Eigen::MatrixXcd H = oracle::random_hpd(rng, n, 0.4, 1.2, 0.3);
            const ArakelovBundle E = make_bundle(K, {H});
            const SectionReport r = global_sections(E);
            REQUIRE_FALSE(r.truncated);
            REQUIRE(r.nonzero_sections == oracle::hermitian_ball(D, H, 1.0, 0.0));
            const ZLatticeView view = restrict_scalars(E);
            for (const auto& x : r.nonzero_sections) REQUIRE(view.norms(x)[0] <= 1 + 1e-12);
        }
    }
}

TEST_CASE("sections over a real quadratic field respect every place") {
    const NumberField K = NumberField::quadratic(5);
    const ArakelovBundle E = trivial_bundle(K, 1);
    // Units eps^k have |eps^k| |eps^-k| = 1, so only +-1 lie in both unit balls.
    CHECK(global_sections(E).nonzero_sections.size() == 2);
    const ArakelovBundle wide = scale(E, 2.0);
    for (const auto& x : global_sections(wide).nonzero_sections) {
        for (double v : restrict_scalars(wide).norms(x)) CHECK(v <= 1 + 1e-12);
    }
}
