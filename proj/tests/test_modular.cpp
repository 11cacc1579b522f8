#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "qf/modular.hpp"
#include "qf/prime_power.hpp"

using qf::errc;
using qf::Natural;
using qf::Residue;

TEST_CASE("mod_pow reproduces the cited values") {
    CHECK(qf::mod_pow(3, 98, 343).value == 324);
    CHECK(qf::mod_pow(5, 4, 7).value == 2);
    for (Natural a : {Natural(0), Natural(1), Natural(7), Natural("123456789123456789")})
        for (Natural m : {Natural(2), Natural(343)})
            CHECK(qf::mod_pow(a, 0, m).value == 1 % m);
}

TEST_CASE("mod_pow rejects bad moduli") {
    CHECK(oracle::code_of([] { qf::mod_pow(3, 4, 1); }) == errc::invalid_modulus);
    CHECK(oracle::code_of([] { qf::mod_pow(3, 4, 0); }) == errc::invalid_modulus);
}

TEST_CASE("mod_pow agrees with repeated multiplication") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 4000; ++i) {
        Natural base = rng() % 50;
        std::uint64_t exp = rng() % 200;
        Natural mod = 2 + rng() % 998;
        CAPTURE(base.str(), exp, mod.str());
        REQUIRE(qf::mod_pow(base, exp, mod).value == oracle::modpow_naive(base, exp, mod));
    }
    // dense corner of the same domain
    for (unsigned base = 0; base < 16; ++base)
        for (std::uint64_t exp = 0; exp < 24; ++exp)
            for (unsigned mod = 2; mod < 40; ++mod)
                REQUIRE(qf::mod_pow(base, exp, mod).value ==
                        oracle::modpow_naive(base, exp, mod));
}

TEST_CASE("gcd basics") {
    CHECK(qf::gcd(91, 7) == 7);
    CHECK(qf::gcd(324, 343) == 1);
    for (Natural a : {Natural(1), Natural(17), Natural("987654321987654321")})
        CHECK(qf::gcd(a, a) == a);
    CHECK(qf::gcd(0, 5) == 5);
    CHECK(oracle::code_of([] { qf::gcd(0, 0); }) == errc::undefined_gcd);
}

TEST_CASE("mod_inverse examples and property") {
    CHECK(qf::mod_inverse(13, 7).value == 6);
    CHECK(qf::mod_inverse(7, 13).value == 2);
    for (Natural m : {Natural(2), Natural(97), Natural(343)})
        CHECK(qf::mod_inverse(1, m).value == 1);
    CHECK(oracle::code_of([] { qf::mod_inverse(6, 9); }) == errc::no_inverse);
    CHECK(oracle::code_of([] { qf::mod_inverse(0, 7); }) == errc::no_inverse);

    std::mt19937_64 rng(7);
    int checked = 0;
    while (checked < 500) {
        Natural m = 2 + rng() % 100000;
        Natural a = rng() % m;
        if (a == 0 || qf::gcd(a, m) != 1) continue;
        Natural x = qf::mod_inverse(a, m).value;
        REQUIRE((a * x) % m == 1);
        ++checked;
    }
}

TEST_CASE("euler_phi_prime_power") {
    CHECK(qf::euler_phi_prime_power(qf::PrimePowerModulus(7, 3)) == 294);
    CHECK(qf::euler_phi_prime_power(qf::PrimePowerModulus(487, 2)) == 236682);
    for (unsigned p : {3u, 5u, 7u, 11u, 101u})
        CHECK(qf::euler_phi_prime_power(qf::PrimePowerModulus(p, 1)) == p - 1);
    // phi(p^m) = phi(p) * p^(m-1)
    for (unsigned p : {3u, 5u, 7u, 487u})
        for (unsigned m : {1u, 2u, 3u}) {
            Natural lhs = qf::euler_phi_prime_power(qf::PrimePowerModulus(p, m));
            Natural rhs = qf::euler_phi_prime_power(qf::PrimePowerModulus(p, 1)) *
                          qf::pow_natural(p, m - 1);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("crt_combine examples") {
    Residue combined = qf::crt_combine({Residue(2, 7), Residue(3, 13)});
    CHECK(combined.value == 16);
    CHECK(combined.modulus == 91);

    CHECK(qf::crt_combine({Residue(5, 11)}) == Residue(5, 11));
    CHECK(qf::crt_combine({Residue(0, 9), Residue(0, 14)}) == Residue(0, 126));

    CHECK(oracle::code_of([] { qf::crt_combine({Residue(1, 6), Residue(2, 9)}); }) ==
          errc::moduli_not_coprime);
    CHECK(oracle::code_of([] { qf::crt_combine({}); }) == errc::invalid_input);
}

TEST_CASE("crt system exposes the M_i q_i construction") {
    auto sys = qf::crt_system({Residue(2, 7), Residue(3, 13)});
    REQUIRE(sys.subproducts.size() == 2);
    CHECK(sys.subproducts[0] == 13);
    CHECK(sys.subproducts[1] == 7);
    CHECK((sys.subproducts[0] * sys.inverses[0]) % 7 == 1);
    CHECK((sys.subproducts[1] * sys.inverses[1]) % 13 == 1);
}

TEST_CASE("crt_combine round-trips random coprime systems") {
    const unsigned primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29};
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Residue> congruences;
        unsigned count = 1 + rng() % 4;
        std::vector<unsigned> chosen;
        while (chosen.size() < count) {
            unsigned p = primes[rng() % std::size(primes)];
            if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) chosen.push_back(p);
        }
        for (unsigned p : chosen) {
            Natural modulus = qf::pow_natural(p, 1 + rng() % 3);
            congruences.emplace_back(Natural(rng()), modulus);
        }
        Residue combined = qf::crt_combine(congruences);
        for (const auto& c : congruences)
            REQUIRE(combined.value % c.modulus == c.value);
        REQUIRE(combined.value < combined.modulus);
    }
}

TEST_CASE("residues normalize to least nonnegative representatives") {
    CHECK(Residue(Natural(-5), Natural(7)).value == 2);
    CHECK(Residue(350, 343).value == 7);
    CHECK(oracle::code_of([] { Residue(3, 1); }) == errc::invalid_modulus);
}
