#include <doctest.h>

#include <cmath>
#include <numbers>

#include "arakelov/bounds.hpp"
#include "arakelov/search.hpp"
#include "../support/oracles.hpp"

using namespace arakelov;

namespace {

const NumberField kQ = NumberField::rational();

RandomLatticeSpec spec_with_seed(std::uint64_t seed, long long p = kDefaultHeckePrime) {
    RandomLatticeSpec s;
    s.seed = seed;
    s.p = p;
    return s;
}

}  // namespace

TEST_CASE("expected count for a line bundle") {
    const double mu = corollary_threshold(kQ, 8, 1);
    const double expected = oracle::ball_volume(8) / (2 * oracle::zeta(8)) * std::exp(8 * mu);
    CHECK(expected_section_count(trivial_bundle(kQ, 1), 8, mu) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("a section free twist below the corollary threshold") {
    const ArakelovBundle O = trivial_bundle(kQ, 1);
    const int n = 8;
    const double mu = corollary_threshold(kQ, n, 1);
    const SearchOutcome o = find_section_free(O, n, mu, 200, spec_with_seed(11));
    REQUIRE(o.status == SearchStatus::found);
    REQUIRE(o.witness.has_value());
    CHECK(std::abs(slope(*o.witness) - mu) <= 1e-9);
    CHECK(o.certificate.nonzero_sections.empty());
    CHECK_FALSE(o.certificate.truncated);
    CHECK(o.expected_count < 1);

    // Independent check: no integer vector of the witness Gram has norm <= 1.
    const Eigen::MatrixXd G = tensor(O, *o.witness).gram_at(0).real();
    CHECK(oracle::real_ball(G, 1.0).empty());

    SearchOptions threaded;
    threaded.threads = 4;
    const SearchOutcome p = find_section_free(O, n, mu, 200, spec_with_seed(11), threaded);
    CHECK(p.attempts == o.attempts);
    CHECK(p.witness->gram_at(0) == o.witness->gram_at(0));
}

TEST_CASE("searches above the converse threshold are blocked") {
    const SearchOutcome o = find_section_free(trivial_bundle(kQ, 1), 8, 0.5, 50, spec_with_seed(3));
    CHECK(o.status == SearchStatus::blocked_by_converse);
    REQUIRE(o.converse_l.has_value());
    CHECK(*o.converse_l == 1);
    REQUIRE(o.converse_confirmed.has_value());
    CHECK(*o.converse_confirmed);
    CHECK_FALSE(o.witness.has_value());
    CHECK(to_string(o.status) == "blocked_by_converse");
}

TEST_CASE("exhausted searches report their draws") {
    // Far above the threshold but with a huge epsilon the converse does not apply.
    SearchOptions options;
    options.epsilon = 5.0;
    const SearchOutcome o = find_section_free(trivial_bundle(kQ, 1), 4, 0.6, 20, spec_with_seed(1), options);
    CHECK(o.status == SearchStatus::exhausted);
    CHECK(o.attempts == 20);
    CHECK(to_string(o.status) == "exhausted");
}

TEST_CASE("search preconditions") {
    CHECK_THROWS_AS(find_section_free(trivial_bundle(kQ, 3), 3, 0.0, 10, spec_with_seed(1)), InvalidArgument);
    CHECK_THROWS_AS(find_section_free(trivial_bundle(kQ, 3), 12, 0.0, 10, spec_with_seed(1)), InvalidArgument);
    SearchOptions large;
    large.allow_large = true;
    CHECK_NOTHROW(find_section_free(trivial_bundle(kQ, 3), 12, -1.0, 2, spec_with_seed(1), large));
}

TEST_CASE("search over the Gaussian integers") {
    const NumberField K = NumberField::quadratic(-1);
    RandomLatticeSpec s = spec_with_seed(5, 1009);
    s.field = K;
    const SearchOutcome o = find_section_free(trivial_bundle(K, 1), 4, -0.5, 100, s);
    REQUIRE(o.status == SearchStatus::found);
    CHECK(o.witness->field() == K);
    const Eigen::MatrixXcd H = o.witness->gram_at(0);
    CHECK(oracle::hermitian_ball(-1, H, 1.0).empty());
}

TEST_CASE("success rate is a proportion") {
    const double mu = corollary_threshold(kQ, 8, 1);
    const MonteCarloEstimate e = success_rate_experiment(trivial_bundle(kQ, 1), 8, mu, 200, spec_with_seed(11));
    CHECK(e.mean > 0);
    CHECK(e.mean < 1);
    CHECK(e.std_error == doctest::Approx(std::sqrt(e.mean * (1 - e.mean) / 199)).epsilon(1e-9));
    // The fraction of section-free draws is at least 1 - expected count.
    const double expected = expected_section_count(trivial_bundle(kQ, 1), 8, mu);
    CHECK(e.mean >= 1 - expected - 4 * e.std_error);
}

TEST_CASE("expected count in rank five") {
    const ArakelovBundle O = trivial_bundle(kQ, 1);
    const double mu = -std::log(3.0) / 5;
    const double v5 = 8 * std::numbers::pi * std::numbers::pi / 15;
    CHECK(expected_section_count(O, 5, mu) == doctest::Approx(v5 / (2 * oracle::zeta(5)) / 3).epsilon(1e-12));
    CHECK(expected_section_count(O, 5, mu) == doctest::Approx(0.846).epsilon(1e-3));
    CHECK(expected_section_count(O, 5, -20) < 1e-40);
}

TEST_CASE("success rates follow the slope") {
    const ArakelovBundle O = trivial_bundle(kQ, 1);
    const int n = 5;
    RandomLatticeSpec spec = spec_with_seed(40);
    const MonteCarloEstimate low = success_rate_experiment(O, n, -2.0, 200, spec);
    CHECK(low.mean == 1.0);
    const MonteCarloEstimate high = success_rate_experiment(O, n, converse_threshold(kQ, n, 1, 0.05), 200, spec);
    CHECK(high.mean == 0.0);

    std::vector<MonteCarloEstimate> rates;
    for (double mu : {-0.5, -0.3, -0.1})
        rates.push_back(success_rate_experiment(O, n, mu, 400, spec));
    for (std::size_t i = 0; i + 1 < rates.size(); ++i) {
        const double sigma = std::hypot(rates[i].std_error, rates[i + 1].std_error);
        CHECK(rates[i].mean >= rates[i + 1].mean - 2 * sigma);
    }
}
