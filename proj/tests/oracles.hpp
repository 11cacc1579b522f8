#pragma once

// Independent reference implementations for the test suite. These stay as
// dumb as possible on purpose: repeated multiplication instead of fast
// exponentiation, exact division of the full numerator instead of modular
// power sums, linear search instead of the witness construction.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qf/error.hpp"
#include "qf/natural.hpp"

namespace oracle {

using qf::Natural;

// base^exp mod m by literal repeated multiplication
inline Natural modpow_naive(const Natural& base, std::uint64_t exp, const Natural& m) {
    Natural result = 1 % m;
    Natural b = base % m;
    for (std::uint64_t i = 0; i < exp; ++i) result = (result * b) % m;
    return result;
}

// (z^n - y^n) / (z - y) by exact division, no power-sum shortcut
inline Natural quotient_division(const Natural& z, const Natural& y, unsigned n) {
    const Natural& big = z > y ? z : y;
    const Natural& small = z > y ? y : z;
    Natural numerator = qf::pow_natural(big, n) - qf::pow_natural(small, n);
    return numerator / (big - small);
}

// all z in [0, p^m) with z != y and p^m | Q(z,y,n), via the division oracle
inline std::vector<Natural> brute_force_witnesses(const Natural& y, const Natural& p, unsigned n,
                                                  unsigned m) {
    Natural pm = qf::pow_natural(p, m);
    std::vector<Natural> out;
    for (Natural z = 0; z < pm; ++z) {
        if (z == y) continue;
        if (quotient_division(z, y, n) % pm == 0) out.push_back(z);
    }
    return out;
}

// plain sieve of Eratosthenes, primality flags for [0, limit)
inline std::vector<bool> sieve_flags(std::uint32_t limit) {
    std::vector<bool> is_p(limit, true);
    if (limit > 0) is_p[0] = false;
    if (limit > 1) is_p[1] = false;
    for (std::uint64_t i = 2; i * i < limit; ++i)
        if (is_p[i])
            for (std::uint64_t j = i * i; j < limit; j += i) is_p[j] = false;
    return is_p;
}

// runs f and reports which qf::errc it threw, if any
inline std::optional<qf::errc> code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const qf::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace oracle
