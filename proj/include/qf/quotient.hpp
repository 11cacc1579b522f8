#pragma once

#include <cassert>
#include <utility>

#include "qf/error.hpp"
#include "qf/factor.hpp"
#include "qf/modular.hpp"
#include "qf/natural.hpp"

namespace qf {

/// Validates that n is an odd prime >= 3 (the exponent domain everywhere).
inline void require_odd_prime(const Natural& n, const char* what = "exponent") {
    require(n >= 3 && !is_even(n) && is_prime(n), errc::invalid_exponent,
            std::string(what) + " must be an odd prime, got " + n.str());
}

inline void require_distinct_nonnegative(const Natural& z, const Natural& y) {
    require(z >= 0 && y >= 0, errc::invalid_input, "z and y must be nonnegative");
    require(z != y, errc::degenerate_input, "z and y must be distinct, both are " + z.str());
}

/// Power sum Σ_{k=0}^{n-1} z^k y^(n-1-k), the closed form of (z^n - y^n)/(z - y).
inline Natural quotient_power_sum(const Natural& z, const Natural& y, unsigned long n) {
    Natural sum = 0, zp = 1;
    std::vector<Natural> y_pows(n);
    y_pows[0] = 1;
    for (unsigned long k = 1; k < n; ++k) y_pows[k] = y_pows[k - 1] * y;
    for (unsigned long k = 0; k < n; ++k) {
        sum += zp * y_pows[n - 1 - k];
        if (k + 1 < n) zp *= z;
    }
    return sum;
}

/// Same sum for a Natural n (must fit in 64 bits).
inline Natural quotient_power_sum(const Natural& z, const Natural& y, const Natural& n) {
    return quotient_power_sum(z, y, static_cast<unsigned long>(to_u64(n)));
}

/// Σ_{k=0}^{n-1} z^k y^(n-1-k) mod m, evaluated by a Horner walk. This is how
/// every divisibility question about the quotient is answered without
/// materializing it.
inline Natural quotient_mod(const Natural& z, const Natural& y, const Natural& n,
                            const Natural& modulus) {
    require(modulus >= 1, errc::invalid_modulus, "modulus must be >= 1");
    std::uint64_t steps = to_u64(n);
    Natural zr = mod_reduce(z, modulus), yr = mod_reduce(y, modulus);
    Natural s = 1 % modulus, yp = yr;
    for (unsigned long j = 1; j < steps; ++j) {
        s = (s * zr + yp) % modulus;
        yp = (yp * yr) % modulus;
    }
    return s;
}

struct QuotientInstance {
    Natural z, y, n;
    Natural value;
};

/// Exact (z^n - y^n)/(z - y), by division with a zero-remainder check. The
/// power-sum route doubles as a cross-check in debug builds.
inline Natural quotient_value(const Natural& z, const Natural& y, const Natural& n) {
    require_distinct_nonnegative(z, y);
    require_odd_prime(n);
    const Natural& big = z > y ? z : y;
    const Natural& small = z > y ? y : z;
    unsigned long e = static_cast<unsigned long>(to_u64(n));
    Natural numerator = pow_natural(big, e) - pow_natural(small, e);
    Natural denominator = big - small;
    Natural q, r;
    boost::multiprecision::divide_qr(numerator, denominator, q, r);
    require(r == 0, errc::theory_violation, "z - y failed to divide z^n - y^n");
    assert(q == quotient_power_sum(z, y, e));
    return q;
}

inline QuotientInstance quotient(const Natural& z, const Natural& y, const Natural& n) {
    return QuotientInstance{z, y, n, quotient_value(z, y, n)};
}

/// The gcd skeleton of a coprime pair: either n | z - y and
/// gcd(z - y, Q) = n, or the three of n, z - y, Q are pairwise coprime.
struct GcdStructure {
    enum class Kind { gcd_is_n, pairwise_coprime };
    Kind kind;
    Natural gcd_diff_quotient;  // gcd(z - y, Q)
    Natural gcd_n_diff;         // gcd(n, z - y)
    Natural gcd_n_quotient;     // gcd(n, Q)
};

inline GcdStructure gcd_structure(const Natural& z, const Natural& y, const Natural& n) {
    require_distinct_nonnegative(z, y);
    require_odd_prime(n);
    require(gcd(z, y) == 1, errc::precondition_violation,
            "z and y must be coprime, gcd = " + gcd(z, y).str());

    Natural q = quotient_value(z, y, n);
    Natural diff = z > y ? z - y : y - z;
    GcdStructure out;
    out.gcd_diff_quotient = gcd(diff, q);
    out.gcd_n_diff = gcd(n, diff);
    out.gcd_n_quotient = gcd(n, q);
    if (diff % n == 0) {
        out.kind = GcdStructure::Kind::gcd_is_n;
        require(out.gcd_diff_quotient == n, errc::theory_violation,
                "expected gcd(z-y, Q) = n, got " + out.gcd_diff_quotient.str());
    } else {
        out.kind = GcdStructure::Kind::pairwise_coprime;
        require(out.gcd_diff_quotient == 1 && out.gcd_n_diff == 1 && out.gcd_n_quotient == 1,
                errc::theory_violation, "expected n, z-y, Q pairwise coprime");
    }
    return out;
}

/// Checks n^2 does not divide Q, by dividing. Returns true; a false outcome
/// is a theory violation, not a result.
inline bool n_squared_check(const Natural& z, const Natural& y, const Natural& n) {
    require(gcd(z, y) == 1, errc::precondition_violation, "z and y must be coprime");
    Natural q = quotient_value(z, y, n);
    require(q % (n * n) != 0, errc::theory_violation,
            "n^2 divides Q(" + z.str() + "," + y.str() + "," + n.str() + ")");
    return true;
}

/// Q mod n, asserted equal to (z-y)^(n-1) mod n.
inline Residue quotient_residue_mod_n(const Natural& z, const Natural& y, const Natural& n) {
    Natural q = quotient_value(z, y, n);
    Natural diff = z > y ? z - y : y - z;  // n-1 is even, so the sign is immaterial
    Residue got(q, n);
    require(got.value == mod_pow(mod_reduce(diff, n), n - 1, n).value, errc::theory_violation,
            "Q mod n != (z-y)^(n-1) mod n");
    return got;
}

/// Q mod n^2, defined when n | z - y; asserted equal to n·y^(n-1) mod n^2.
inline Residue quotient_residue_mod_n2(const Natural& z, const Natural& y, const Natural& n) {
    require(gcd(z, y) == 1, errc::precondition_violation, "z and y must be coprime");
    Natural diff = z > y ? z - y : y - z;
    require(diff % n == 0, errc::precondition_violation, "n must divide z - y");
    Natural q = quotient_value(z, y, n);
    Natural n2 = n * n;
    Residue got(q, n2);
    require(got.value == (n * mod_pow(y, n - 1, n2).value) % n2, errc::theory_violation,
            "Q mod n^2 != n*y^(n-1) mod n^2");
    return got;
}

/// Q is odd whenever z and y are not both even. Computed, not assumed.
inline bool quotient_is_odd(const Natural& z, const Natural& y, const Natural& n) {
    require(!(is_even(z) && is_even(y)), errc::precondition_violation,
            "z and y must not both be even");
    Natural q = quotient_value(z, y, n);
    require(!is_even(q), errc::theory_violation,
            "Q(" + z.str() + "," + y.str() + "," + n.str() + ") is even");
    return true;
}

}  // namespace qf
