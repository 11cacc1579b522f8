#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "qf/error.hpp"
#include "qf/factor.hpp"
#include "qf/modular.hpp"
#include "qf/natural.hpp"
#include "qf/prime_power.hpp"
#include "qf/primitive_root.hpp"
#include "qf/quotient.hpp"

namespace qf {

/// The admissible exponent multipliers for (p, n): c_i = i·(p-1)/n for
/// i = 1..n-1. Each is even and none equals (p-1)/2; both facts follow from
/// n being odd and are re-checked here rather than trusted.
inline std::vector<Natural> c_values(const Natural& p, const Natural& n) {
    require_odd_prime(p, "p");
    require_odd_prime(n, "n");
    require(p != n, errc::precondition_violation, "p and n must differ");
    require((p - 1) % n == 0, errc::characterization_fails,
            n.str() + " does not divide p - 1 = " + Natural(p - 1).str());
    const Natural c1 = (p - 1) / n;
    const Natural half = (p - 1) / 2;
    std::vector<Natural> out;
    for (Natural i = 1; i < n; ++i) {
        Natural c = i * c1;
        require(is_even(c) && c != half, errc::theory_violation,
                "inadmissible multiplier c = " + c.str());
        out.push_back(std::move(c));
    }
    return out;
}

/// The full parameter tuple of the witness congruence
/// z ≡ y·r^(c·p^(m-1)) (mod p^m). Construction validates every side
/// condition: p, n distinct odd primes, p coprime to y, n | p-1,
/// 0 < c < p-1 with (p-1) | n·c, and a level-2 root certificate for p.
/// c defaults to (p-1)/n, the smallest admissible value.
struct ConstructionParams {
    Natural y, p, n;
    unsigned m;
    Natural c;
    PrimitiveRootCert root;

    static ConstructionParams make(Natural y, Natural p, Natural n, unsigned m,
                                   std::optional<Natural> c = std::nullopt,
                                   std::optional<PrimitiveRootCert> root = std::nullopt,
                                   const FactorConfig& config = {}) {
        require_odd_prime(p, "p");
        require_odd_prime(n, "n");
        require(p != n, errc::precondition_violation, "p and n must differ");
        require(m >= 1, errc::invalid_input, "m must be >= 1");
        require(y >= 0, errc::invalid_input, "y must be nonnegative");
        require(y % p != 0, errc::precondition_violation,
                "y must be coprime to p, got y = " + y.str());
        require((p - 1) % n == 0, errc::characterization_fails,
                n.str() + " does not divide p - 1");

        Natural c_val = c ? std::move(*c) : (p - 1) / n;
        require(c_val > 0 && c_val < p - 1, errc::precondition_violation,
                "need 0 < c < p - 1, got c = " + c_val.str());
        require((c_val * n) % (p - 1) == 0, errc::precondition_violation,
                "p - 1 must divide n*c, got c = " + c_val.str());
        require(is_even(c_val) && c_val != (p - 1) / 2, errc::theory_violation,
                "admissible c must be even and different from (p-1)/2");

        PrimitiveRootCert cert = root ? std::move(*root)
                                      : find_primitive_root_mod_p_squared(p, config);
        require(cert.p == p && cert.verified_level == 2, errc::precondition_violation,
                "root certificate does not match p at level 2");
        return ConstructionParams{std::move(y), std::move(p), std::move(n), m,
                                  std::move(c_val), std::move(cert)};
    }
};

/// The witness itself: y·r^(c·p^(m-1)) mod p^m. The guarantee z ≢ y (mod p)
/// is checked on the way out.
inline Residue construct_z(const ConstructionParams& params) {
    const Natural pm = pow_natural(params.p, params.m);
    const Natural exponent = params.c * pow_natural(params.p, params.m - 1);
    Residue z(params.y * mod_pow(params.root.r, exponent, pm).value, pm);
    require(mod_reduce(z.value - params.y, params.p) != 0, errc::theory_violation,
            "constructed z is congruent to y modulo p");
    return z;
}

/// All residues modulo p^m whose representatives z (other than z = y itself)
/// make p^m divide Q(z,y,n). Empty when n does not divide p-1, in which case
/// there are no solutions at all; otherwise exactly the n-1 distinct values
/// y·r^(c_i·p^(m-1)), independent of which primitive root is used.
struct XiSet {
    Natural modulus;
    std::vector<Natural> residues;  // ascending

    bool contains(const Natural& z) const {
        return std::binary_search(residues.begin(), residues.end(), mod_reduce(z, modulus));
    }
};

/// xi_enumerate with an explicit root (for checking root-invariance).
inline XiSet xi_enumerate_with_root(const Natural& y, const Natural& p, const Natural& n,
                                    unsigned m, const Natural& r) {
    require_odd_prime(p, "p");
    require_odd_prime(n, "n");
    require(p != n, errc::precondition_violation, "p and n must differ");
    require(m >= 1, errc::invalid_input, "m must be >= 1");
    require(y >= 0 && y % p != 0, errc::precondition_violation, "y must be coprime to p");

    XiSet out;
    out.modulus = pow_natural(p, m);
    if ((p - 1) % n != 0) return out;

    const Natural step = pow_natural(p, m - 1);
    for (const Natural& c : c_values(p, n))
        out.residues.push_back(Residue(y * mod_pow(r, c * step, out.modulus).value,
                                       out.modulus).value);
    std::sort(out.residues.begin(), out.residues.end());
    require(std::adjacent_find(out.residues.begin(), out.residues.end()) == out.residues.end(),
            errc::theory_violation, "xi residues are not distinct");
    return out;
}

inline XiSet xi_enumerate(const Natural& y, const Natural& p, const Natural& n, unsigned m,
                          const FactorConfig& config = {}) {
    require_odd_prime(p, "p");
    require_odd_prime(n, "n");
    if ((p - 1) % n == 0) {
        PrimitiveRootCert cert = find_primitive_root_mod_p_squared(p, config);
        return xi_enumerate_with_root(y, p, n, m, cert.r);
    }
    return xi_enumerate_with_root(y, p, n, m, 2);  // root unused for the empty set
}

/// Finite slice of the union of the xi sets over all y: one (y, residue)
/// pair per witness class, for every y in [1, y_limit] coprime to p. The
/// full union is infinite in y; this enumerates its kernel up to the limit.
inline std::vector<std::pair<Natural, Natural>> xi_union(const Natural& p, const Natural& n,
                                                         unsigned m, const Natural& y_limit,
                                                         const FactorConfig& config = {}) {
    require_odd_prime(p, "p");
    require_odd_prime(n, "n");
    std::vector<std::pair<Natural, Natural>> out;
    if ((p - 1) % n != 0) return out;
    PrimitiveRootCert cert = find_primitive_root_mod_p_squared(p, config);
    for (Natural y = 1; y <= y_limit; ++y) {
        if (y % p == 0) continue;
        for (const Natural& residue : xi_enumerate_with_root(y, p, n, m, cert.r).residues)
            out.emplace_back(y, residue);
    }
    return out;
}

/// Answers "does p^m divide Q(z,y,n)?" twice: by direct division and through
/// the witness characterization (n | p-1 and z in the xi set), and insists
/// the two verdicts agree. On success the matching multiplier c is returned;
/// it is unique.
struct CharacterizationResult {
    bool divides = false;
    std::optional<Natural> c;
};

inline CharacterizationResult divisibility_characterization(const Natural& z, const Natural& y,
                                                            const Natural& n, const Natural& p,
                                                            unsigned m,
                                                            const FactorConfig& config = {}) {
    require_distinct_nonnegative(z, y);
    require_odd_prime(n, "n");
    require_odd_prime(p, "p");
    require(p != n, errc::precondition_violation, "p and n must differ");
    require(m >= 1, errc::invalid_input, "m must be >= 1");
    require(y % p != 0, errc::precondition_violation, "y must be coprime to p");

    const Natural pm = pow_natural(p, m);
    const bool direct = quotient_mod(z, y, n, pm) == 0;

    CharacterizationResult result;
    if ((p - 1) % n == 0) {
        const Natural step = pow_natural(p, m - 1);
        const PrimitiveRootCert cert = find_primitive_root_mod_p_squared(p, config);
        const Natural z_red = mod_reduce(z, pm);
        for (const Natural& c : c_values(p, n)) {
            if (z_red == (y * mod_pow(cert.r, c * step, pm).value) % pm) {
                result.divides = true;
                result.c = c;
                break;
            }
        }
    }
    require(direct == result.divides, errc::theory_violation,
            "direct divisibility and witness characterization disagree at z = " + z.str());
    return result;
}

/// Given z constructed with multiplier c_i, the swapped congruence
/// y ≡ z·r^(c_j·p^(m-1)) holds for the unique j with c_i + c_j = p-1.
/// Returns the 1-based index pair (i, j); i == j cannot happen.
inline std::pair<unsigned, unsigned> swap_pairing(const ConstructionParams& params,
                                                  const Natural& z) {
    const Natural pm = pow_natural(params.p, params.m);
    require(mod_reduce(z, pm) == construct_z(params).value, errc::not_a_witness,
            z.str() + " was not constructed from these parameters");

    const Natural c1 = (params.p - 1) / params.n;
    const unsigned i = static_cast<unsigned>(to_u64(params.c / c1));
    const unsigned j = static_cast<unsigned>(to_u64(params.n)) - i;
    const Natural c_j = (params.p - 1) - params.c;
    require(i != j, errc::theory_violation, "swap index pair collapsed");

    const Natural step = pow_natural(params.p, params.m - 1);
    const Natural swapped = (mod_reduce(z, pm) * mod_pow(params.root.r, c_j * step, pm).value) % pm;
    require(swapped == mod_reduce(params.y, pm), errc::theory_violation,
            "swapped congruence failed: c_j = " + c_j.str());
    return {i, j};
}

/// Σ_{k=0}^{n-1} r^(k·c·p^(m-1)) ≡ 0 (mod p^m). The terms are returned as
/// least residues together with their plain sum; when the unreduced powers
/// are small enough to materialize, their exact sum is included as well.
struct RootPowerSum {
    Natural exponent_step;             // c·p^(m-1)
    std::vector<Natural> terms;        // least residues of r^(k·step)
    Natural reduced_sum;               // Σ terms (not reduced)
    std::optional<Natural> exact_sum;  // Σ r^(k·step) when representable
    Residue residue;                   // the asserted-zero congruence class
};

inline RootPowerSum root_power_sum(const Natural& p, const Natural& n, unsigned m,
                                   const Natural& c, const PrimitiveRootCert& root) {
    require_odd_prime(p, "p");
    require_odd_prime(n, "n");
    require((p - 1) % n == 0, errc::characterization_fails, "n must divide p - 1");
    require(c > 0 && c < p - 1 && (c * n) % (p - 1) == 0, errc::precondition_violation,
            "c fails the admissibility conditions");
    require(root.p == p && root.verified_level == 2, errc::precondition_violation,
            "root certificate does not match p at level 2");
    require(m >= 1, errc::invalid_input, "m must be >= 1");

    RootPowerSum out;
    const Natural pm = pow_natural(p, m);
    out.exponent_step = c * pow_natural(p, m - 1);
    out.reduced_sum = 0;
    for (Natural k = 0; k < n; ++k) {
        Natural term = mod_pow(root.r, k * out.exponent_step, pm).value;
        out.reduced_sum += term;
        out.terms.push_back(std::move(term));
    }
    // materialize the honest powers when the largest stays below ~2^16 bits
    const Natural top_exponent = (n - 1) * out.exponent_step;
    if (top_exponent * bit_length(root.r) <= 65536) {
        Natural sum = 0;
        for (Natural k = 0; k < n; ++k)
            sum += pow_natural(root.r, static_cast<unsigned long>(to_u64(k * out.exponent_step)));
        out.exact_sum = std::move(sum);
        require(*out.exact_sum % pm == 0, errc::theory_violation, "exact power sum not divisible");
    }
    out.residue = Residue(out.reduced_sum, pm);
    require(out.residue.value == 0, errc::theory_violation,
            "root power sum is " + out.residue.value.str() + " mod " + pm.str() + ", expected 0");
    return out;
}

/// One prime-power block of a composite construction, with the CRT data
/// (M_i, q_i) that stitches it into the combined witness.
struct CompositePart {
    ConstructionParams params;
    Natural modulus;    // p_i^(m_i)
    Natural subproduct; // M_i
    Natural inverse;    // q_i with M_i·q_i ≡ 1 (mod p_i^(m_i))
};

struct CompositeSpec {
    Natural y, n;
    std::vector<CompositePart> parts;
    Natural product;

    struct PartRequest {
        Natural p;
        unsigned m = 1;
        std::optional<Natural> c;
    };

    static CompositeSpec make(Natural y, Natural n, const std::vector<PartRequest>& requests,
                              const FactorConfig& config = {}) {
        require(!requests.empty(), errc::invalid_input, "need at least one part");
        CompositeSpec spec;
        spec.y = std::move(y);
        spec.n = std::move(n);
        spec.product = 1;
        for (const auto& req : requests) {
            for (const auto& existing : spec.parts)
                require(existing.params.p != req.p, errc::moduli_not_coprime,
                        "duplicate prime " + req.p.str());
            CompositePart part;
            part.params = ConstructionParams::make(spec.y, req.p, spec.n, req.m, req.c,
                                                   std::nullopt, config);
            part.modulus = pow_natural(req.p, req.m);
            spec.product *= part.modulus;
            spec.parts.push_back(std::move(part));
        }
        for (auto& part : spec.parts) {
            part.subproduct = spec.product / part.modulus;
            part.inverse = mod_inverse(part.subproduct % part.modulus, part.modulus).value;
        }
        return spec;
    }
};

/// z ≡ y·Σ M_i·q_i·r_i^(c_i·p_i^(m_i-1)) modulo Π p_i^(m_i). The result is
/// checked against each per-part construction and against direct
/// divisibility of Q by the full product.
inline Residue crt_construct(const CompositeSpec& spec) {
    Natural sum = 0;
    for (const auto& part : spec.parts) {
        const Natural step = pow_natural(part.params.p, part.params.m - 1);
        sum += part.subproduct * part.inverse *
               mod_pow(part.params.root.r, part.params.c * step, part.modulus).value;
    }
    Residue z(spec.y * sum, spec.product);

    for (const auto& part : spec.parts)
        require(z.value % part.modulus == construct_z(part.params).value, errc::theory_violation,
                "combined witness disagrees with the part modulo " + part.modulus.str());
    require(quotient_mod(z.value, spec.y, spec.n, spec.product) == 0, errc::theory_violation,
            "Q of the combined witness is not divisible by the product");
    return z;
}

/// Which of the two possible shapes an odd prime divisor q of Q(z,y,n) has:
/// either n | q-1, or q is n itself and divides z-y. A third outcome is a
/// theory violation and throws.
enum class DivisorClass { divides_p_minus_1, equals_n_and_divides_diff };

inline DivisorClass classify_divisor(const Natural& q, const Natural& z, const Natural& y,
                                     const Natural& n) {
    require_odd_prime(q, "q");
    require_odd_prime(n, "n");
    require_distinct_nonnegative(z, y);
    require(gcd(z, y) == 1, errc::precondition_violation, "z and y must be coprime");
    require(quotient_mod(z, y, n, q) == 0, errc::not_a_divisor,
            q.str() + " does not divide Q(" + z.str() + "," + y.str() + "," + n.str() + ")");
    if ((q - 1) % n == 0) return DivisorClass::divides_p_minus_1;
    const Natural diff = z > y ? z - y : y - z;
    require(q == n && diff % q == 0, errc::theory_violation,
            "divisor " + q.str() + " matches neither classification");
    return DivisorClass::equals_n_and_divides_diff;
}

/// Primes of the form 2^k + 1 can never divide Q(z,y,n) under the usual side
/// conditions, because p-1 has no odd prime divisor. Verified by division.
inline bool fermat_form_guard(const Natural& p, const Natural& z, const Natural& y,
                              const Natural& n) {
    require(p >= 3 && is_prime(p), errc::invalid_input, "p must be an odd prime");
    Natural pm1 = p - 1;
    require((pm1 & (pm1 - 1)) == 0, errc::invalid_input,
            p.str() + " is not of the form 2^k + 1");
    require_odd_prime(n, "n");
    require(p != n, errc::precondition_violation, "p and n must differ");
    require_distinct_nonnegative(z, y);
    require(y % p != 0, errc::precondition_violation, "y must be coprime to p");
    require(quotient_mod(z, y, n, p) != 0, errc::theory_violation,
            p.str() + " divides Q(" + z.str() + "," + y.str() + "," + n.str() + ")");
    return true;
}

}  // namespace qf
