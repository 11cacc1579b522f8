#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qf/primitive_root.hpp"

using qf::errc;
using qf::Natural;
using qf::PrimePowerModulus;

TEST_CASE("multiplicative_order basics") {
    CHECK(qf::multiplicative_order(3, PrimePowerModulus(7, 1)) == 6);
    CHECK(qf::multiplicative_order(2, PrimePowerModulus(7, 1)) == 3);
    CHECK(qf::multiplicative_order(2, PrimePowerModulus(3, 2)) == 6);
    for (unsigned p : {3u, 7u, 487u})
        CHECK(qf::multiplicative_order(1, PrimePowerModulus(p, 2)) == 1);
    CHECK(oracle::code_of([] { qf::multiplicative_order(14, PrimePowerModulus(7, 2)); }) ==
          errc::invalid_input);
}

TEST_CASE("the 487 pathology") {
    PrimePowerModulus level1(487, 1), level2(487, 2);
    CHECK(qf::is_primitive_root(10, level1));
    CHECK_FALSE(qf::is_primitive_root(10, level2));
    CHECK(qf::multiplicative_order(10, level2) == 486);
    CHECK(qf::multiplicative_order(10, level1) == 486);
}

TEST_CASE("is_primitive_root examples") {
    CHECK(qf::is_primitive_root(3, PrimePowerModulus(7, 2)));
    CHECK(qf::is_primitive_root(5, PrimePowerModulus(7, 1)));
    CHECK(qf::is_primitive_root(5, PrimePowerModulus(7, 2)));
    CHECK_FALSE(qf::is_primitive_root(2, PrimePowerModulus(7, 1)));
}

TEST_CASE("find_primitive_root_mod_p_squared picks the smallest and verifies level 2") {
    struct Case {
        unsigned p;
        unsigned r;
    };
    for (Case c : {Case{3, 2}, Case{7, 3}, Case{13, 2}, Case{31, 3}, Case{43, 3}, Case{487, 3}}) {
        auto cert = qf::find_primitive_root_mod_p_squared(c.p);
        CAPTURE(c.p);
        CHECK(cert.r == c.r);
        CHECK(cert.verified_level == 2);
        CHECK(qf::is_primitive_root(cert.r, PrimePowerModulus(c.p, 2)));
    }
}

TEST_CASE("the lift path: 40487 is the prime whose least root fails at level 2") {
    // 5 generates mod 40487 but not mod 40487^2; the certificate must be 5 + 40487
    PrimePowerModulus level1(40487, 1), level2(40487, 2);
    CHECK(qf::is_primitive_root(5, level1));
    CHECK_FALSE(qf::is_primitive_root(5, level2));
    auto cert = qf::find_primitive_root_mod_p_squared(40487);
    CHECK(cert.r == 40492);
    CHECK(cert.verified_level == 2);
    CHECK(qf::is_primitive_root(cert.r, level2));
}

TEST_CASE("find is deterministic") {
    for (unsigned p : {7u, 13u, 101u, 487u}) {
        auto a = qf::find_primitive_root_mod_p_squared(p);
        auto b = qf::find_primitive_root_mod_p_squared(p);
        CHECK(a.r == b.r);
        CHECK(a.verified_level == b.verified_level);
    }
}

TEST_CASE("certificates lift through p, p^2, p^3 for every prime below 200") {
    auto flags = oracle::sieve_flags(200);
    for (unsigned p = 3; p < 200; p += 2) {
        if (!flags[p]) continue;
        auto cert = qf::find_primitive_root_mod_p_squared(p);
        for (unsigned k : {1u, 2u, 3u}) {
            CAPTURE(p, k);
            REQUIRE(qf::is_primitive_root(cert.r, PrimePowerModulus(p, k)));
        }
    }
}

TEST_CASE("orders divide phi for every prime below 500") {
    auto flags = oracle::sieve_flags(500);
    for (unsigned p = 3; p < 500; p += 2) {
        if (!flags[p]) continue;
        auto cert = qf::find_primitive_root_mod_p_squared(p);
        for (unsigned k : {1u, 2u, 3u}) {
            PrimePowerModulus pp(p, k);
            Natural order = qf::multiplicative_order(cert.r, pp);
            REQUIRE(qf::euler_phi_prime_power(pp) % order == 0);
        }
    }
}

TEST_CASE("construction rejects non-prime or even p") {
    CHECK(oracle::code_of([] { PrimePowerModulus(2, 1); }) == errc::invalid_input);
    CHECK(oracle::code_of([] { PrimePowerModulus(9, 1); }) == errc::invalid_input);
    CHECK(oracle::code_of([] { qf::find_primitive_root_mod_p_squared(15); }) ==
          errc::invalid_input);
}
