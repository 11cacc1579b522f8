#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qf/error.hpp"
#include "qf/modular.hpp"
#include "qf/natural.hpp"

namespace qf {

/// Effort budget for the factoring pipeline. The rho budget is the number of
/// iterations spent per composite cofactor before giving up on it; callers
/// pass it in, there is no global state.
struct FactorConfig {
    static constexpr std::uint64_t default_rho_budget = std::uint64_t{1} << 22;
    std::uint64_t rho_budget = default_rho_budget;
};

struct Factorization {
    std::vector<std::pair<Natural, unsigned>> factors;  // primes ascending, exponents >= 1
    Natural residual{1};                                // unfactored composite cofactor, 1 when done

    bool complete() const { return residual == 1; }

    Natural value() const {
        Natural v = residual;
        for (const auto& [p, e] : factors) v *= pow_natural(p, e);
        return v;
    }

    /// "7*13", "19^2", "11*41*131"; an unfactored cofactor is appended verbatim.
    std::string str() const {
        std::string out;
        for (const auto& [p, e] : factors) {
            if (!out.empty()) out += "*";
            out += p.str();
            if (e > 1) out += "^" + std::to_string(e);
        }
        if (residual != 1) {
            if (!out.empty()) out += "*";
            out += residual.str();
        }
        return out;
    }
};

/// Primes below 10^6, used for trial division and for the primality fast path.
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = [] {
        constexpr std::uint32_t limit = 1'000'000;
        std::vector<bool> composite(limit, false);
        std::vector<std::uint32_t> primes;
        for (std::uint32_t i = 2; i < limit; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            for (std::uint64_t j = std::uint64_t{i} * i; j < limit; j += i) composite[j] = true;
        }
        return primes;
    }();
    return table;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic below 2^64 with the first twelve prime bases.
inline bool miller_rabin_u64(std::uint64_t n) {
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (a % n == 0) continue;
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline bool miller_rabin_round(const Natural& n, const Natural& base, const Natural& d, unsigned s) {
    Natural a = base % n;
    if (a == 0) return true;
    Natural x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

// Jacobi symbol (a/n) for odd n >= 1.
inline int jacobi(Natural a, Natural n) {
    a = mod_reduce(std::move(a), n);
    int result = 1;
    while (a != 0) {
        while (is_even(a)) {
            a >>= 1;
            Natural r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline Natural integer_sqrt(const Natural& v) { return boost::multiprecision::sqrt(v); }

// Strong Lucas probable-prime test with Selfridge's parameter choice.
// n must be odd, > 2, not a perfect square, with no tiny factors.
inline bool strong_lucas_prp(const Natural& n) {
    long long d_abs = 5;
    int sign = 1;
    Natural d;
    while (true) {
        d = Natural(sign * d_abs);
        int j = jacobi(mod_reduce(d, n), n);
        if (j == -1) break;
        if (j == 0 && mod_reduce(d, n) != 0) return false;  // shares a factor with n
        d_abs += 2;
        sign = -sign;
    }
    // P = 1, Q = (1 - D) / 4
    Natural q_param = mod_reduce(Natural((1 - sign * d_abs)) , n);
    Natural inv4 = mod_inverse(4, n).value;
    q_param = (q_param * inv4) % n;

    Natural delta = n + 1;
    unsigned s = 0;
    while (is_even(delta)) { delta >>= 1; ++s; }

    // Binary ladder for U_k, V_k with P = 1.
    Natural u = 1, v = 1, qk = q_param;  // U_1, V_1, Q^1
    const Natural d_mod = mod_reduce(Natural(sign * d_abs), n);
    const Natural inv2 = mod_inverse(2, n).value;
    for (int bit = static_cast<int>(boost::multiprecision::msb(delta)) - 1; bit >= 0; --bit) {
        // double: U_{2k} = U_k V_k, V_{2k} = V_k^2 - 2 Q^k
        u = (u * v) % n;
        v = mod_reduce(v * v - 2 * qk, n);
        qk = (qk * qk) % n;
        if (boost::multiprecision::bit_test(delta, bit)) {
            // add one: U_{k+1} = (U_k + V_k)/2, V_{k+1} = (D U_k + V_k)/2
            Natural u_next = ((u + v) % n * inv2) % n;
            Natural v_next = ((d_mod * u + v) % n * inv2) % n;
            u = std::move(u_next);
            v = std::move(v_next);
            qk = (qk * q_param) % n;
        }
    }

    if (u == 0 || v == 0) return true;
    for (unsigned r = 1; r < s; ++r) {
        v = mod_reduce(v * v - 2 * qk, n);
        if (v == 0) return true;
        qk = (qk * qk) % n;
    }
    return false;
}

}  // namespace detail

/// Deterministic Miller-Rabin below 2^64; above that, 64 strong-pseudoprime
/// rounds (bases from an mt19937_64 seeded with 0x9e3779b97f4a7c15, so runs
/// are reproducible) plus a strong Lucas check.
inline bool is_prime(const Natural& n) {
    if (n < 2) return false;
    for (std::uint32_t p : small_primes()) {
        if (p > 1000) break;
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 1'002'001) return true;  // no factor <= 1000 and below 1001^2
    if (fits_u64(n)) return detail::miller_rabin_u64(to_u64(n));

    Natural d = n - 1;
    unsigned s = 0;
    while (is_even(d)) { d >>= 1; ++s; }
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    const unsigned rounds = 64;
    for (unsigned i = 0; i < rounds; ++i) {
        Natural base = 2 + Natural(rng()) % (n - 4);
        if (!detail::miller_rabin_round(n, base, d, s)) return false;
    }
    Natural root = detail::integer_sqrt(n);
    if (root * root == n) return false;
    return detail::strong_lucas_prp(n);
}

/// Floor of the n-th root of v.
inline Natural integer_nth_root(const Natural& v, unsigned n) {
    require(n >= 1, errc::invalid_input, "root degree must be >= 1");
    require(v >= 0, errc::invalid_input, "radicand must be nonnegative");
    if (v == 0 || v == 1 || n == 1) return v;
    if (n == 2) return detail::integer_sqrt(v);
    Natural hi = Natural(1) << (bit_length(v) / n + 1);
    Natural lo = 1;
    while (lo < hi) {  // invariant: lo^n <= v < (hi+1)^n
        Natural mid = (lo + hi + 1) >> 1;
        if (pow_natural(mid, n) <= v)
            lo = std::move(mid);
        else
            hi = mid - 1;
    }
    return lo;
}

/// The exact integer root if v == root^n, otherwise empty.
inline std::optional<Natural> is_perfect_nth_power(const Natural& v, unsigned n) {
    require(v >= 1, errc::invalid_input, "value must be >= 1");
    require(n >= 2, errc::invalid_input, "power degree must be >= 2");
    Natural root = integer_nth_root(v, n);
    if (pow_natural(root, n) == v) return root;
    return std::nullopt;
}

namespace detail {

// Brent's cycle variant. Returns a nontrivial factor of n, or 0 once the
// iteration budget is spent. n odd, composite, no factors below 10^6.
inline Natural brent_rho(const Natural& n, std::uint64_t budget) {
    std::uint64_t used = 0;
    for (unsigned attempt = 1; used < budget; ++attempt) {
        const Natural addend = attempt;
        Natural y = 2 + attempt, g = 1, q = 1, x, ys;
        std::uint64_t r = 1;
        const std::uint64_t batch = 128;
        while (g == 1 && used < budget) {
            x = y;
            for (std::uint64_t i = 0; i < r && used < budget; ++i, ++used)
                y = (y * y + addend) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1 && used < budget) {
                ys = y;
                std::uint64_t steps = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < steps && used < budget; ++i, ++used) {
                    y = (y * y + addend) % n;
                    q = (q * boost::multiprecision::abs(x - y)) % n;
                }
                g = boost::multiprecision::gcd(q, n);
                k += steps;
            }
            r *= 2;
        }
        if (g == n) {  // backtrack one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + addend) % n;
                g = boost::multiprecision::gcd(boost::multiprecision::abs(x - ys), n);
            }
        }
        if (g != n && g > 1) return g;
        // cycle degenerated; retry with the next polynomial
    }
    return 0;
}

}  // namespace detail

/// Trial division by every prime below 10^6, then Brent rho on what is left.
/// Within budget the result is complete; otherwise the composite remainder is
/// reported in `residual` and complete() is false. Never mislabels: every
/// listed prime passes is_prime.
inline Factorization factorize(const Natural& n, const FactorConfig& config = {}) {
    require(n >= 2, errc::invalid_input, "cannot factor " + n.str() + " (need n >= 2)");

    std::map<Natural, unsigned> found;
    Natural work = n;
    for (std::uint32_t p : small_primes()) {
        if (Natural(p) * p > work) break;
        while (work % p == 0) {
            ++found[p];
            work /= p;
        }
    }

    Factorization out;
    std::vector<Natural> pending;
    if (work > 1) pending.push_back(std::move(work));
    while (!pending.empty()) {
        Natural c = std::move(pending.back());
        pending.pop_back();
        if (is_prime(c)) {
            ++found[c];
            continue;
        }
        // perfect powers first: rho is poor on p^k, a root check is cheap
        bool split = false;
        for (unsigned k = 2; k <= bit_length(c) && !split; ++k) {
            if (auto root = is_perfect_nth_power(c, k); root && *root > 1) {
                for (unsigned i = 0; i < k; ++i) pending.push_back(*root);
                split = true;
            }
        }
        if (split) continue;
        Natural f = detail::brent_rho(c, config.rho_budget);
        if (f == 0) {
            out.residual *= c;
            continue;
        }
        pending.push_back(c / f);
        pending.push_back(std::move(f));
    }

    for (auto& [p, e] : found) out.factors.emplace_back(p, e);
    return out;
}

inline Natural largest_prime_factor(const Natural& n, const FactorConfig& config = {}) {
    require(n >= 2, errc::invalid_input, "need n >= 2");
    Factorization f = factorize(n, config);
    require(f.complete(), errc::effort_exceeded,
            "factorization of " + n.str() + " incomplete within budget");
    return f.factors.back().first;
}

}  // namespace qf
