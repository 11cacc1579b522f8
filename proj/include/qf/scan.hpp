#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qf/error.hpp"
#include "qf/factor.hpp"
#include "qf/natural.hpp"
#include "qf/parallel.hpp"
#include "qf/quotient.hpp"
#include "qf/table1_fixture.hpp"
#include "qf/witness.hpp"

namespace qf {

/// One scanned pair: the quotient, its factorization, and whether some prime
/// factor exceeds z. Rows whose factorization ran out of budget carry
/// complete = false and are excluded from any verdict.
struct ScanRow {
    Natural y, z, n;
    Natural q_value;
    Factorization factorization;
    Natural largest_prime;             // 0 when incomplete
    std::vector<Natural> witnesses_gt_z;
    bool conjecture_holds = false;     // some prime factor > z
    bool complete = false;
};

inline ScanRow make_scan_row(const Natural& y, const Natural& z, const Natural& n,
                             const FactorConfig& config = {}) {
    ScanRow row;
    row.y = y;
    row.z = z;
    row.n = n;
    row.q_value = quotient_value(z, y, n);
    row.factorization = factorize(row.q_value, config);
    row.complete = row.factorization.complete();
    if (row.complete) row.largest_prime = row.factorization.factors.back().first;
    for (const auto& [p, e] : row.factorization.factors)
        if (p > z) row.witnesses_gt_z.push_back(p);
    row.conjecture_holds = !row.witnesses_gt_z.empty();
    return row;
}

namespace detail {

// "7*13", "19*19", "11 x 42491" or "prime" -> exponent map.
inline std::map<Natural, unsigned> parse_decomposition(std::string_view text,
                                                       const Natural& quotient) {
    std::map<Natural, unsigned> out;
    if (text == "prime") {
        out[quotient] = 1;
        return out;
    }
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            ++out[parse_natural(token)];
            token.clear();
        }
    };
    for (char ch : text) {
        if (ch >= '0' && ch <= '9')
            token += ch;
        else
            flush();
    }
    flush();
    return out;
}

inline std::vector<Natural> parse_prime_list(std::string_view text) {
    std::vector<Natural> out;
    std::string token;
    for (char ch : text) {
        if (ch >= '0' && ch <= '9') {
            token += ch;
        } else if (!token.empty()) {
            out.push_back(parse_natural(token));
            token.clear();
        }
    }
    if (!token.empty()) out.push_back(parse_natural(token));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Recomputes every fixture row from scratch and demands: the quotient and
/// the factorization match exactly, every exhibited prime > z is among the
/// computed witnesses, and the conjecture flag is true. Throws
/// table_mismatch naming the first offending row.
inline std::vector<ScanRow> check_table1_against(std::span<const Table1Entry> fixture,
                                                 const FactorConfig& config = {},
                                                 unsigned threads = 1) {
    std::vector<ScanRow> rows(fixture.size());
    parallel_for(fixture.size(), threads, [&](std::size_t i) {
        rows[i] = make_scan_row(fixture[i].y, fixture[i].z, fixture[i].n, config);
    });
    for (std::size_t i = 0; i < fixture.size(); ++i) {
        const Table1Entry& want = fixture[i];
        const ScanRow& got = rows[i];
        const std::string where =
            "table1 row y=" + std::to_string(want.y) + " z=" + std::to_string(want.z);
        require(got.q_value == parse_natural(want.quotient), errc::table_mismatch,
                where + ": quotient " + got.q_value.str() + " != " + want.quotient);
        require(got.complete, errc::table_mismatch, where + ": factorization incomplete");
        std::map<Natural, unsigned> computed(got.factorization.factors.begin(),
                                             got.factorization.factors.end());
        require(computed == detail::parse_decomposition(want.decomposition, got.q_value),
                errc::table_mismatch,
                where + ": decomposition " + got.factorization.str() + " != " +
                    want.decomposition);
        for (const Natural& p : detail::parse_prime_list(want.primes_gt_z))
            require(std::binary_search(got.witnesses_gt_z.begin(), got.witnesses_gt_z.end(), p),
                    errc::table_mismatch,
                    where + ": exhibited prime " + p.str() + " is not a computed witness");
        require(got.conjecture_holds, errc::table_mismatch, where + ": no prime exceeds z");
    }
    return rows;
}

/// All 42 published rows (y=5 with n=3 and y=7 with n=5), verified.
inline std::vector<ScanRow> reproduce_table1(const FactorConfig& config = {},
                                             unsigned threads = 1) {
    static const auto fixture = table1_fixture();
    return check_table1_against(fixture, config, threads);
}

/// Sweep of coprime pairs z > y looking for rows where no prime factor of
/// Q(z,y,n) exceeds z. Incomplete rows are excluded from the verdict lists.
struct ScanReport {
    Natural n;
    std::vector<ScanRow> rows;              // (y asc, z asc), deterministic
    std::vector<std::size_t> counterexamples;
    std::vector<std::size_t> incomplete;
};

inline ScanReport conjecture_scan(const Natural& n, const Natural& y_max, const Natural& z_max,
                                  const FactorConfig& config = {}, unsigned threads = 1) {
    require_odd_prime(n, "n");
    require(y_max >= 1 && z_max >= 2, errc::invalid_input, "empty scan range");
    std::vector<std::pair<Natural, Natural>> pairs;
    for (Natural y = 1; y <= y_max; ++y)
        for (Natural z = y + 1; z <= z_max; ++z)
            if (gcd(z, y) == 1) pairs.emplace_back(y, z);

    ScanReport report;
    report.n = n;
    report.rows.resize(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        report.rows[i] = make_scan_row(pairs[i].first, pairs[i].second, n, config);
    });
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        if (!report.rows[i].complete)
            report.incomplete.push_back(i);
        else if (!report.rows[i].conjecture_holds)
            report.counterexamples.push_back(i);
    }
    return report;
}

/// The two classical identities (x^a - 1)/(x - 1) shared by different bases,
/// plus the divisor-side conditions they must satisfy.
struct GoormaghtighReport {
    Natural first_base5, first_base2;    // both 31
    Natural second_base90, second_base2; // both 8191
    struct Condition {
        Natural n, p_minus_1;
        bool holds;
    };
    std::vector<Condition> conditions;
    bool all_ok = false;
};

inline GoormaghtighReport goormaghtigh_check() {
    GoormaghtighReport r;
    r.first_base5 = quotient_value(5, 1, 3);
    r.first_base2 = quotient_value(2, 1, 5);
    r.second_base90 = quotient_value(90, 1, 3);
    r.second_base2 = quotient_value(2, 1, 13);
    const bool identities = r.first_base5 == 31 && r.first_base2 == 31 &&
                            r.second_base90 == 8191 && r.second_base2 == 8191;
    auto add = [&](Natural n, Natural p) {
        r.conditions.push_back({n, p - 1, (p - 1) % n == 0});
    };
    add(3, 31);      // 3 | 30
    add(5, 31);      // 5 | 30
    add(3, 8191);    // 3 | 8190
    add(13, 8191);   // 13 | 8190
    r.all_ok = identities && is_prime(31) && is_prime(8191) &&
               std::all_of(r.conditions.begin(), r.conditions.end(),
                           [](const auto& c) { return c.holds; });
    return r;
}

/// 2^n - 1 and the fact that each of its prime divisors q satisfies n | q-1.
struct MersenneReport {
    Natural n, value;
    Factorization factorization;
    struct Check {
        Natural q;
        bool holds;
    };
    std::vector<Check> checks;
    bool complete = false;
    bool all_ok = false;
};

inline MersenneReport mersenne_check(const Natural& n, const FactorConfig& config = {}) {
    require_odd_prime(n, "n");
    MersenneReport r;
    r.n = n;
    r.value = quotient_value(2, 1, n);  // 2^n - 1
    r.factorization = factorize(r.value, config);
    r.complete = r.factorization.complete();
    bool all = true;
    for (const auto& [q, e] : r.factorization.factors) {
        bool holds = (q - 1) % n == 0;
        all = all && holds;
        r.checks.push_back({q, holds});
    }
    r.all_ok = r.complete && all;
    return r;
}

/// A perfect-power find: Q(z,y,n) = root^k. Hits with k == n are the
/// interesting ones; when one occurs, z-y must not itself be a perfect
/// nth power (at most one of the two coprime factors of z^n - y^n can be).
struct PowerHit {
    Natural y, z, q_value, root;
    unsigned k = 0;
    bool is_nth = false;
};

inline std::vector<PowerHit> perfect_power_probe(const Natural& n, const Natural& y_max,
                                                 const Natural& z_max, unsigned threads = 1) {
    require_odd_prime(n, "n");
    std::vector<std::pair<Natural, Natural>> pairs;
    for (Natural y = 1; y <= y_max; ++y)
        for (Natural z = y + 1; z <= z_max; ++z)
            if (gcd(z, y) == 1) pairs.emplace_back(y, z);

    std::vector<std::vector<PowerHit>> found(pairs.size());
    const unsigned n_u = static_cast<unsigned>(to_u64(n));
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        const auto& [y, z] = pairs[i];
        const Natural q = quotient_value(z, y, n);
        for (unsigned k = 2; k <= bit_length(q); ++k) {
            if (auto root = is_perfect_nth_power(q, k)) {
                PowerHit hit{y, z, q, *root, k, k == n_u};
                if (hit.is_nth) {
                    require(!is_perfect_nth_power(z - y, n_u).has_value(), errc::theory_violation,
                            "both Q and z-y are perfect nth powers at z = " + z.str());
                }
                found[i].push_back(std::move(hit));
            }
        }
    });
    std::vector<PowerHit> hits;
    for (auto& group : found)
        for (auto& hit : group) hits.push_back(std::move(hit));
    return hits;
}

}  // namespace qf
