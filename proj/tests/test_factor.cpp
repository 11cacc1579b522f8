#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "qf/factor.hpp"

using qf::errc;
using qf::FactorConfig;
using qf::Natural;

namespace {
const Natural hard_semiprime = Natural(1000003) * 1000033;  // no factor below 10^6
}

TEST_CASE("is_prime on cited values") {
    CHECK(qf::is_prime(8191));
    CHECK_FALSE(qf::is_prime(1));
    CHECK_FALSE(qf::is_prime(0));
    CHECK_FALSE(qf::is_prime(105301));  // 307 * 7^3
    CHECK(qf::is_prime(2));
    CHECK(qf::is_prime(3));
    CHECK_FALSE(qf::is_prime(4));
    CHECK(qf::is_prime(1451));
    CHECK(qf::is_prime(1192181));
}

TEST_CASE("is_prime agrees with a sieve below 10^6") {
    auto flags = oracle::sieve_flags(1'000'000);
    for (std::uint32_t n = 0; n < 1'000'000; ++n) {
        if (qf::is_prime(n) != flags[n]) {
            CAPTURE(n);
            REQUIRE(qf::is_prime(n) == flags[n]);
        }
    }
    SUCCEED("exhaustive sweep done");
}

TEST_CASE("is_prime beyond 64 bits") {
    const Natural m89 = qf::pow_natural(2, 89) - 1;
    CHECK(qf::is_prime(m89));                       // strong Lucas path
    CHECK_FALSE(qf::is_prime(m89 + 2));
    CHECK(qf::is_prime(qf::pow_natural(2, 127) - 1));
    CHECK_FALSE(qf::is_prime(qf::pow_natural(2, 67) - 1));
    CHECK_FALSE(qf::is_prime(m89 * m89));
}

TEST_CASE("factorize on cited values") {
    auto f = qf::factorize(105301);
    REQUIRE(f.complete());
    CHECK(f.str() == "7^3*307");

    CHECK(qf::factorize(91).str() == "7*13");
    CHECK(qf::factorize(361).str() == "19^2");
    CHECK(qf::factorize(qf::pow_natural(2, 20)).str() == "2^20");

    CHECK(oracle::code_of([] { qf::factorize(1); }) == errc::invalid_input);
    CHECK(oracle::code_of([] { qf::factorize(0); }) == errc::invalid_input);
}

TEST_CASE("factorize crosses the trial-division horizon") {
    // 2^67 - 1: both factors exceed the sieve, Brent rho must find them
    auto f = qf::factorize(qf::pow_natural(2, 67) - 1);
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == Natural("193707721"));
    CHECK(f.factors[1].first == Natural("761838257287"));

    // perfect power of a prime beyond the sieve
    const Natural p = Natural(1000000007);
    auto square = qf::factorize(p * p);
    REQUIRE(square.complete());
    REQUIRE(square.factors.size() == 1);
    CHECK(square.factors[0] == std::pair<Natural, unsigned>(p, 2u));
}

TEST_CASE("factorize respects the rho budget and never mislabels") {
    FactorConfig tiny{.rho_budget = 4};
    auto f = qf::factorize(hard_semiprime, tiny);
    CHECK_FALSE(f.complete());
    CHECK(f.residual == hard_semiprime);
    CHECK(f.value() == hard_semiprime);

    auto full = qf::factorize(hard_semiprime);  // default budget cracks it
    REQUIRE(full.complete());
    CHECK(full.str() == "1000003*1000033");
}

TEST_CASE("factorize recombines to its input") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 120; ++i) {
        Natural n = Natural(rng() >> (rng() % 50)) + 2;  // mixed magnitudes up to 2^64
        auto f = qf::factorize(n);
        REQUIRE(f.complete());
        REQUIRE(f.value() == n);
        Natural last = 1;
        for (const auto& [p, e] : f.factors) {
            REQUIRE(p > last);  // strictly ascending
            REQUIRE(e >= 1);
            REQUIRE(qf::is_prime(p));
            last = p;
        }
    }
}

TEST_CASE("largest_prime_factor") {
    CHECK(qf::largest_prime_factor(15961) == 1451);
    CHECK(qf::largest_prime_factor(361) == 19);
    CHECK(qf::largest_prime_factor(8191) == 8191);
    FactorConfig tiny{.rho_budget = 4};
    CHECK(oracle::code_of([&] { qf::largest_prime_factor(hard_semiprime, tiny); }) ==
          errc::effort_exceeded);
}

TEST_CASE("is_perfect_nth_power") {
    CHECK(qf::is_perfect_nth_power(361, 2) == Natural(19));
    CHECK_FALSE(qf::is_perfect_nth_power(361, 3).has_value());
    for (unsigned n : {2u, 3u, 5u, 7u}) CHECK(qf::is_perfect_nth_power(1, n) == Natural(1));

    std::mt19937_64 rng(1234);
    for (unsigned n : {2u, 3u, 5u, 7u}) {
        for (int i = 0; i < 200; ++i) {
            Natural x = 2 + rng() % 1'000'000;
            Natural v = qf::pow_natural(x, n);
            REQUIRE(qf::is_perfect_nth_power(v, n) == x);
            CHECK_FALSE(qf::is_perfect_nth_power(v + 1, n) == x);
            CHECK_FALSE(qf::is_perfect_nth_power(v - 1, n).has_value());
        }
    }
}

TEST_CASE("integer_nth_root is a floor") {
    CHECK(qf::integer_nth_root(7, 3) == 1);
    CHECK(qf::integer_nth_root(8, 3) == 2);
    CHECK(qf::integer_nth_root(9, 3) == 2);
    CHECK(qf::integer_nth_root(qf::pow_natural(10, 60), 5) == qf::pow_natural(10, 12));
}
