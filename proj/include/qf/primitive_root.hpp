#pragma once

#include <utility>
#include <vector>

#include "qf/error.hpp"
#include "qf/factor.hpp"
#include "qf/modular.hpp"
#include "qf/natural.hpp"
#include "qf/prime_power.hpp"

namespace qf {

/// A primitive root r of p together with the highest power p^k (k = 1 or 2)
/// at which it was verified directly. Level 2 is what the construction needs:
/// a primitive root modulo p^2 stays primitive modulo every higher power.
struct PrimitiveRootCert {
    Natural p;
    Natural r;
    int verified_level = 0;
};

namespace detail {

// Distinct primes of phi(p^m) = (p-1) p^(m-1).
inline std::vector<Natural> phi_prime_factors(const PrimePowerModulus& pp,
                                              const FactorConfig& config) {
    Factorization f = factorize(pp.p - 1, config);
    require(f.complete(), errc::effort_exceeded,
            "cannot factor " + Natural(pp.p - 1).str() + " within budget");
    std::vector<Natural> primes;
    for (const auto& [q, e] : f.factors) primes.push_back(q);
    if (pp.m >= 2) primes.push_back(pp.p);
    return primes;
}

}  // namespace detail

/// Least d >= 1 with a^d ≡ 1 (mod p^m), computed by stripping prime factors
/// out of phi(p^m) rather than enumerating powers.
inline Natural multiplicative_order(const Natural& a, const PrimePowerModulus& pp,
                                    const FactorConfig& config = {}) {
    require(a >= 0, errc::invalid_input, "value must be nonnegative");
    require(gcd(mod_reduce(a, pp.modulus), pp.modulus) == 1, errc::invalid_input,
            a.str() + " is not coprime to " + pp.modulus.str());
    Natural order = euler_phi_prime_power(pp);
    for (const Natural& q : detail::phi_prime_factors(pp, config)) {
        while (order % q == 0 && mod_pow(a, order / q, pp.modulus).value == 1) order /= q;
    }
    return order;
}

inline bool is_primitive_root(const Natural& r, const PrimePowerModulus& pp,
                              const FactorConfig& config = {}) {
    return multiplicative_order(r, pp, config) == euler_phi_prime_power(pp);
}

/// Smallest r >= 2 that is primitive modulo p, lifted to r + p in the rare
/// case it is not primitive modulo p^2 (at most one of r, r + p can fail, and
/// the survivor stays primitive modulo p^k for every k). Both levels are
/// verified by direct order computation; nothing is taken on faith.
inline PrimitiveRootCert find_primitive_root_mod_p_squared(const Natural& p,
                                                           const FactorConfig& config = {}) {
    PrimePowerModulus level1(p, 1);
    PrimePowerModulus level2(p, 2);
    const auto phi_primes = detail::phi_prime_factors(level1, config);

    Natural candidate = 2;
    for (;; ++candidate) {
        require(candidate < p, errc::theory_violation,
                "no primitive root found below " + p.str());
        bool primitive = true;
        for (const Natural& q : phi_primes) {
            if (mod_pow(candidate, (p - 1) / q, p).value == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) break;
    }

    Natural r = candidate;
    if (!is_primitive_root(r, level2, config)) r = candidate + p;
    require(is_primitive_root(r, level2, config), errc::theory_violation,
            "lift " + r.str() + " is not primitive modulo " + p.str() + "^2");
    return PrimitiveRootCert{p, r, 2};
}

}  // namespace qf
