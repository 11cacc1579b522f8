#pragma once

#include <utility>
#include <vector>

#include "qf/error.hpp"
#include "qf/natural.hpp"

namespace qf {

/// Reduces v (possibly negative) to its least nonnegative representative mod m.
inline Natural mod_reduce(Natural v, const Natural& modulus) {
    v %= modulus;
    if (v < 0) v += modulus;
    return v;
}

/// A congruence class, always stored as the least nonnegative representative.
struct Residue {
    Natural value;
    Natural modulus;

    Residue() : value(0), modulus(2) {}
    Residue(Natural v, Natural m) : modulus(std::move(m)) {
        require(modulus >= 2, errc::invalid_modulus, "modulus must be >= 2, got " + modulus.str());
        value = mod_reduce(std::move(v), modulus);
    }

    friend bool operator==(const Residue&, const Residue&) = default;
};

inline Residue mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus) {
    require(modulus >= 2, errc::invalid_modulus, "modulus must be >= 2, got " + modulus.str());
    require(base >= 0 && exponent >= 0, errc::invalid_input, "base and exponent must be nonnegative");
    return Residue(boost::multiprecision::powm(base, exponent, modulus), modulus);
}

inline Natural gcd(const Natural& a, const Natural& b) {
    require(a >= 0 && b >= 0, errc::invalid_input, "gcd arguments must be nonnegative");
    require(a != 0 || b != 0, errc::undefined_gcd, "gcd(0, 0) is undefined");
    return boost::multiprecision::gcd(a, b);
}

namespace detail {

// Extended Euclid: returns (g, x) with a*x ≡ g (mod m), 0 <= x < m for g = 1.
inline std::pair<Natural, Natural> bezout_mod(const Natural& a, const Natural& m) {
    Natural old_r = a % m, r = m;
    Natural old_s = 1, s = 0;
    while (r != 0) {
        Natural q = old_r / r;
        Natural tmp = old_r - q * r;
        old_r = std::move(r);
        r = std::move(tmp);
        tmp = old_s - q * s;
        old_s = std::move(s);
        s = std::move(tmp);
    }
    return {old_r, mod_reduce(old_s, m)};
}

}  // namespace detail

inline Residue mod_inverse(const Natural& a, const Natural& modulus) {
    require(modulus >= 2, errc::invalid_modulus, "modulus must be >= 2, got " + modulus.str());
    require(a >= 0, errc::invalid_input, "value must be nonnegative");
    auto [g, x] = detail::bezout_mod(a, modulus);
    require(g == 1, errc::no_inverse,
            a.str() + " has no inverse modulo " + modulus.str() + " (gcd = " + g.str() + ")");
    return Residue(x, modulus);
}

/// One solved simultaneous-congruence system. The subproducts M_i and the
/// inverses q_i (M_i q_i ≡ 1 mod m_i) are kept so the composite construction
/// can be inspected term by term, not just its combined result.
struct CrtSystem {
    Natural product;
    std::vector<Natural> subproducts;  // M_i = product / m_i
    std::vector<Natural> inverses;     // q_i
    Residue combined;
};

inline CrtSystem crt_system(const std::vector<Residue>& congruences) {
    require(!congruences.empty(), errc::invalid_input, "need at least one congruence");
    for (std::size_t i = 0; i < congruences.size(); ++i)
        for (std::size_t j = i + 1; j < congruences.size(); ++j)
            require(gcd(congruences[i].modulus, congruences[j].modulus) == 1,
                    errc::moduli_not_coprime,
                    "moduli " + congruences[i].modulus.str() + " and " +
                        congruences[j].modulus.str() + " are not coprime");

    CrtSystem sys;
    sys.product = 1;
    for (const auto& c : congruences) sys.product *= c.modulus;

    Natural sum = 0;
    for (const auto& c : congruences) {
        Natural m_i = sys.product / c.modulus;
        Natural q_i = mod_inverse(m_i % c.modulus, c.modulus).value;
        sum += c.value * m_i * q_i;
        sys.subproducts.push_back(std::move(m_i));
        sys.inverses.push_back(std::move(q_i));
    }
    sys.combined = Residue(sum, sys.product);

    for (const auto& c : congruences)
        require(sys.combined.value % c.modulus == c.value, errc::theory_violation,
                "CRT result fails a constituent congruence");
    return sys;
}

inline Residue crt_combine(const std::vector<Residue>& congruences) {
    return crt_system(congruences).combined;
}

}  // namespace qf
