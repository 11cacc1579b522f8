#pragma once

#include <utility>

#include "qf/error.hpp"
#include "qf/factor.hpp"
#include "qf/natural.hpp"

namespace qf {

/// An odd prime power p^m. Primality of p is verified at construction, so a
/// value of this type is proof enough for the functions that take one.
struct PrimePowerModulus {
    Natural p;
    unsigned m;
    Natural modulus;

    PrimePowerModulus(Natural prime, unsigned exponent)
        : p(std::move(prime)), m(exponent), modulus(pow_natural(p, exponent)) {
        require(p >= 3 && !is_even(p), errc::invalid_input,
                "p must be an odd prime, got " + p.str());
        require(is_prime(p), errc::invalid_input, p.str() + " is not prime");
        require(m >= 1, errc::invalid_input, "exponent must be >= 1");
    }
};

inline Natural euler_phi_prime_power(const PrimePowerModulus& pp) {
    return (pp.p - 1) * pow_natural(pp.p, pp.m - 1);
}

}  // namespace qf
