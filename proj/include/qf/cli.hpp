#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qf/error.hpp"
#include "qf/factor.hpp"
#include "qf/modular.hpp"
#include "qf/natural.hpp"
#include "qf/prime_power.hpp"
#include "qf/primitive_root.hpp"
#include "qf/quotient.hpp"
#include "qf/scan.hpp"
#include "qf/witness.hpp"

namespace qf::cli {

using nlohmann::json;

enum class OutputFormat { human, json, tsv };

/// Exit codes: 0 success / verification pass, 1 verification failure
/// (counterexample, table mismatch, theory violation), 2 usage error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failure = 1;
inline constexpr int exit_usage = 2;

struct Options {
    OutputFormat format = OutputFormat::human;
    unsigned threads = 1;
    FactorConfig factor;
};

namespace detail {

inline std::optional<std::uint64_t> env_u64(const char* name) {
    const char* raw = std::getenv(name);
    if (!raw || !*raw) return std::nullopt;
    return to_u64(parse_natural(raw));
}

// JSON convention: every arbitrary-precision value is a decimal string so no
// magnitude is ever rounded; machine-sized counts stay numbers.
inline json to_json(const Natural& v) { return v.str(); }

inline json to_json(const Residue& r) {
    return json{{"value", r.value.str()}, {"modulus", r.modulus.str()}};
}

inline json to_json(const Factorization& f) {
    json factors = json::array();
    for (const auto& [p, e] : f.factors)
        factors.push_back(json{{"prime", p.str()}, {"exponent", e}});
    json out{{"factors", factors}, {"complete", f.complete()}, {"text", f.str()}};
    if (!f.complete()) out["residual"] = f.residual.str();
    return out;
}

inline json to_json(const ScanRow& row) {
    json witnesses = json::array();
    for (const auto& p : row.witnesses_gt_z) witnesses.push_back(p.str());
    return json{{"y", row.y.str()},
                {"z", row.z.str()},
                {"n", row.n.str()},
                {"q", row.q_value.str()},
                {"factorization", to_json(row.factorization)},
                {"largest_prime", row.largest_prime.str()},
                {"witnesses_gt_z", witnesses},
                {"conjecture_holds", row.conjecture_holds},
                {"complete", row.complete}};
}

inline std::string join_naturals(const std::vector<Natural>& values, const char* sep = ", ") {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += sep;
        out += v.str();
    }
    return out;
}

inline void print_row_tsv(std::ostream& out, const ScanRow& row) {
    out << row.y << '\t' << row.z << '\t' << row.n << '\t' << row.q_value << '\t'
        << row.factorization.str() << '\t' << row.largest_prime << '\t'
        << join_naturals(row.witnesses_gt_z, ",") << '\n';
}

inline void print_rows(std::ostream& out, const std::vector<ScanRow>& rows,
                       OutputFormat format) {
    if (format == OutputFormat::json) {
        json arr = json::array();
        for (const auto& row : rows) arr.push_back(to_json(row));
        out << arr.dump(2) << '\n';
        return;
    }
    out << "y\tz\tn\tQ\tfactorization\tlargest_prime\tp_gt_z\n";
    for (const auto& row : rows) print_row_tsv(out, row);
}

}  // namespace detail

/// Runs every published-value fixture in one pass; returns true iff all of
/// them reproduce. `only` restricts the run to a single named fixture.
inline bool verify_reference_values(std::ostream& out, const Options& opts,
                                  const std::string& only = "") {
    struct Fixture {
        std::string name;
        std::function<void()> check;  // throws qf::Error on divergence
    };

    auto expect = [](bool ok, const std::string& what) {
        if (!ok) throw std::runtime_error(what);
    };

    std::vector<Fixture> fixtures;

    fixtures.push_back({"e1", [&] {
        expect(mod_pow(3, 98, 343).value == 324, "3^98 mod 343 != 324");
        auto params = ConstructionParams::make(1, 7, 3, 3, Natural(2), std::nullopt, opts.factor);
        expect(params.root.r == 3, "primitive root of 7 is not 3");
        Residue z = construct_z(params);
        expect(z.value == 324, "constructed z != 324, got " + z.value.str());
        Natural q = quotient_value(324, 1, 3);
        expect(q == 105301, "Q(324,1,3) != 105301");
        expect(q % 343 == 0, "343 does not divide 105301");
        Factorization f = factorize(q, opts.factor);
        expect(f.str() == "7^3*307", "105301 != 7^3 * 307, got " + f.str());
        auto ch = divisibility_characterization(324, 1, 3, 7, 3, opts.factor);
        expect(ch.divides && ch.c && *ch.c == 2, "characterization did not recover c = 2");
    }});

    fixtures.push_back({"e2", [&] {
        auto params = ConstructionParams::make(1, 7, 3, 1, Natural(2), std::nullopt, opts.factor);
        RootPowerSum s3 = root_power_sum(7, 3, 1, 2, params.root);
        expect(s3.exact_sum && *s3.exact_sum == 91, "sum over r=3, m=1 != 91");
        expect(*s3.exact_sum % 7 == 0 && s3.residue.value == 0, "91 not ≡ 0 mod 7");

        PrimePowerModulus seven_sq(7, 2);
        expect(is_primitive_root(5, seven_sq, opts.factor), "5 is not primitive modulo 49");
        PrimitiveRootCert five{7, 5, 2};
        RootPowerSum s5 = root_power_sum(7, 3, 1, 2, five);
        expect(s5.exact_sum && *s5.exact_sum == 651, "sum over r=5, m=1 != 651");
        expect(*s5.exact_sum % 7 == 0 && s5.residue.value == 0, "651 not ≡ 0 mod 7");

        RootPowerSum cube = root_power_sum(7, 3, 3, 2, params.root);
        expect(cube.terms.size() == 3 && cube.terms[0] == 1 && cube.terms[1] == 324 &&
                   cube.terms[2] == 18,
               "term residues for m=3 are not 1, 324, 18");
        // the published chain writes the last term as 361 = 324^2 - 306*343
        expect((Natural(324) * 324) % 343 == Natural(361) % 343, "324^2 not ≡ 361 mod 343");
        expect(Natural(1) + 324 + 361 == 686 && Natural(686) % 343 == 0,
               "1 + 324 + 361 = 686 not ≡ 0 mod 343");
        expect(cube.residue.value == 0, "m=3 power sum residue nonzero");
    }});

    fixtures.push_back({"goormaghtigh", [&] {
        GoormaghtighReport r = goormaghtigh_check();
        expect(r.first_base5 == 31 && r.first_base2 == 31, "first identity != 31");
        expect(r.second_base90 == 8191 && r.second_base2 == 8191, "second identity != 8191");
        expect(r.all_ok, "a divisor-side condition failed");
    }});

    fixtures.push_back({"mersenne", [&] {
        MersenneReport m5 = mersenne_check(5, opts.factor);
        expect(m5.value == 31 && m5.all_ok, "2^5 - 1 check failed");
        MersenneReport m11 = mersenne_check(11, opts.factor);
        expect(m11.value == 2047 && m11.factorization.str() == "23*89" && m11.all_ok,
               "2^11 - 1 != 23 * 89 with 11 | q-1");
        MersenneReport m13 = mersenne_check(13, opts.factor);
        expect(m13.value == 8191 && m13.factorization.str() == "8191" && m13.all_ok,
               "2^13 - 1 check failed");
    }});

    fixtures.push_back({"perfect-square", [&] {
        Natural q = quotient_value(16, 5, 3);
        expect(q == 361, "Q(16,5,3) != 361");
        auto root = is_perfect_nth_power(q, 2);
        expect(root && *root == 19, "361 is not 19^2");
        expect(!is_perfect_nth_power(q, 3), "361 reported as a perfect cube");
        expect(largest_prime_factor(q, opts.factor) == 19, "largest prime of 361 != 19");
    }});

    fixtures.push_back({"table1", [&] {
        reproduce_table1(opts.factor, opts.threads);
    }});

    fixtures.push_back({"p487", [&] {
        PrimePowerModulus level1(487, 1), level2(487, 2);
        expect(is_primitive_root(10, level1, opts.factor), "10 not primitive modulo 487");
        expect(!is_primitive_root(10, level2, opts.factor), "10 primitive modulo 487^2");
        expect(multiplicative_order(10, level2, opts.factor) == 486,
               "order of 10 modulo 487^2 != 486");
        PrimitiveRootCert cert = find_primitive_root_mod_p_squared(487, opts.factor);
        expect(cert.verified_level == 2 && is_primitive_root(cert.r, level2, opts.factor),
               "certificate for 487 fails level-2 verification");
    }});

    bool all_ok = true;
    bool matched = false;
    for (const auto& fixture : fixtures) {
        if (!only.empty() && fixture.name != only) continue;
        matched = true;
        try {
            fixture.check();
            out << "PASS " << fixture.name << '\n';
        } catch (const std::exception& e) {
            out << "FAIL " << fixture.name << ": " << e.what() << '\n';
            all_ok = false;
        }
    }
    if (!only.empty() && !matched) {
        out << "FAIL no fixture named '" << only << "'\n";
        return false;
    }
    return all_ok;
}

/// Parses argv (program name excluded) and dispatches. All output goes to
/// `out`, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using detail::to_json;

    CLI::App app{"constructing, characterizing and factoring integers (z^n - y^n)/(z - y)"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "human";
    app.add_option("--format,-f", format_name, "output format")
        ->check(CLI::IsMember({"human", "json", "tsv"}))
        ->capture_default_str();
    unsigned threads_flag = 0;
    app.add_option("--threads,-t", threads_flag, "worker threads (env QF_THREADS)");
    std::uint64_t rho_flag = 0;
    app.add_option("--rho-budget", rho_flag,
                   "rho iterations per cofactor (env QF_RHO_BUDGET)");

    // subcommand argument slots, all parsed as decimal strings
    std::string arg_y, arg_z, arg_n, arg_p, arg_c, arg_ymax, arg_zmax, arg_value, arg_only;
    unsigned arg_m = 1;
    std::vector<std::string> arg_parts;
    bool scan_tsv = false, scan_json = false;

    CLI::App* cmd_construct = app.add_subcommand("construct", "build a witness z for p^m | Q");
    cmd_construct->add_option("--y", arg_y)->required();
    cmd_construct->add_option("--p", arg_p)->required();
    cmd_construct->add_option("--n", arg_n)->required();
    cmd_construct->add_option("--m", arg_m)->required();
    cmd_construct->add_option("--c", arg_c);

    CLI::App* cmd_check = app.add_subcommand("check", "characterize p^m | Q(z,y,n)");
    cmd_check->add_option("--z", arg_z)->required();
    cmd_check->add_option("--y", arg_y)->required();
    cmd_check->add_option("--n", arg_n)->required();
    cmd_check->add_option("--p", arg_p)->required();
    cmd_check->add_option("--m", arg_m)->required();

    CLI::App* cmd_xi = app.add_subcommand("xi", "all witness residues modulo p^m");
    cmd_xi->add_option("--y", arg_y)->required();
    cmd_xi->add_option("--p", arg_p)->required();
    cmd_xi->add_option("--n", arg_n)->required();
    cmd_xi->add_option("--m", arg_m)->required();

    CLI::App* cmd_crt = app.add_subcommand("crt", "combined witness for a product of prime powers");
    cmd_crt->add_option("--y", arg_y)->required();
    cmd_crt->add_option("--n", arg_n)->required();
    cmd_crt->add_option("--part", arg_parts, "p,m or p,m,c (repeatable)")->required();

    CLI::App* cmd_sum = app.add_subcommand("sum", "root power sum congruence");
    cmd_sum->add_option("--p", arg_p)->required();
    cmd_sum->add_option("--n", arg_n)->required();
    cmd_sum->add_option("--m", arg_m)->required();
    cmd_sum->add_option("--c", arg_c)->required();

    CLI::App* cmd_primroot = app.add_subcommand("primroot", "primitive root modulo p^2");
    cmd_primroot->add_option("p", arg_p)->required();

    CLI::App* cmd_q = app.add_subcommand("q", "evaluate and factor Q(z,y,n)");
    cmd_q->add_option("z", arg_z)->required();
    cmd_q->add_option("y", arg_y)->required();
    cmd_q->add_option("n", arg_n)->required();

    CLI::App* cmd_factor = app.add_subcommand("factor", "factor an integer");
    cmd_factor->add_option("value", arg_value)->required();

    CLI::App* cmd_table1 = app.add_subcommand("table1", "reproduce the published table");

    CLI::App* cmd_scan = app.add_subcommand("scan", "largest-prime conjecture scan");
    cmd_scan->add_option("--n", arg_n)->required();
    cmd_scan->add_option("--ymax", arg_ymax)->required();
    cmd_scan->add_option("--zmax", arg_zmax)->required();
    cmd_scan->add_flag("--tsv", scan_tsv);
    cmd_scan->add_flag("--json", scan_json);

    CLI::App* cmd_goor = app.add_subcommand("goormaghtigh", "check the two classical identities");

    CLI::App* cmd_mersenne = app.add_subcommand("mersenne", "factor 2^n - 1 and check n | q-1");
    cmd_mersenne->add_option("--n", arg_n)->required();

    CLI::App* cmd_probe = app.add_subcommand("probe", "search for perfect-power quotients");
    cmd_probe->add_option("--n", arg_n)->required();
    cmd_probe->add_option("--ymax", arg_ymax)->required();
    cmd_probe->add_option("--zmax", arg_zmax)->required();

    CLI::App* cmd_verify = app.add_subcommand("verify", "re-run every published-value fixture");
    cmd_verify->add_option("--only", arg_only, "run a single fixture by name");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_usage;
    }

    Options opts;
    if (format_name == "json") opts.format = OutputFormat::json;
    if (format_name == "tsv") opts.format = OutputFormat::tsv;

    auto natural_of = [](const std::string& text) { return parse_natural(text); };

    try {
        if (threads_flag > 0)
            opts.threads = threads_flag;
        else if (auto env = detail::env_u64("QF_THREADS"))
            opts.threads = static_cast<unsigned>(*env);
        if (rho_flag > 0)
            opts.factor.rho_budget = rho_flag;
        else if (auto env = detail::env_u64("QF_RHO_BUDGET"))
            opts.factor.rho_budget = *env;

        if (*cmd_construct) {
            std::optional<Natural> c;
            if (!arg_c.empty()) c = natural_of(arg_c);
            auto params = ConstructionParams::make(natural_of(arg_y), natural_of(arg_p),
                                                   natural_of(arg_n), arg_m, c, std::nullopt,
                                                   opts.factor);
            Residue z = construct_z(params);
            Natural q = quotient_value(z.value, params.y, params.n);
            Factorization f = factorize(q, opts.factor);
            if (opts.format == OutputFormat::json) {
                out << json{{"z", z.value.str()},
                            {"modulus", z.modulus.str()},
                            {"c", params.c.str()},
                            {"r", params.root.r.str()},
                            {"q", q.str()},
                            {"factorization", to_json(f)}}
                           .dump(2)
                    << '\n';
            } else {
                out << "z = " << z.value << "  (mod " << z.modulus << ", c = " << params.c
                    << ", r = " << params.root.r << ")\n";
                out << "Q(z," << params.y << "," << params.n << ") = " << q << " = " << f.str()
                    << '\n';
                out << "divisor " << z.modulus << (q % z.modulus == 0 ? " | " : " !| ") << q
                    << '\n';
            }
            return exit_ok;
        }

        if (*cmd_check) {
            auto result = divisibility_characterization(natural_of(arg_z), natural_of(arg_y),
                                                        natural_of(arg_n), natural_of(arg_p),
                                                        arg_m, opts.factor);
            if (opts.format == OutputFormat::json) {
                json j{{"divides", result.divides}};
                if (result.c) j["c"] = result.c->str();
                out << j.dump(2) << '\n';
            } else if (result.divides) {
                out << "divides: yes, c = " << *result.c << '\n';
            } else {
                out << "divides: no\n";
            }
            return exit_ok;
        }

        if (*cmd_xi) {
            XiSet xi = xi_enumerate(natural_of(arg_y), natural_of(arg_p), natural_of(arg_n),
                                    arg_m, opts.factor);
            if (opts.format == OutputFormat::json) {
                json residues = json::array();
                for (const auto& r : xi.residues) residues.push_back(r.str());
                out << json{{"modulus", xi.modulus.str()}, {"residues", residues}}.dump(2)
                    << '\n';
            } else {
                out << "modulus " << xi.modulus << ": {" << detail::join_naturals(xi.residues)
                    << "}\n";
            }
            return exit_ok;
        }

        if (*cmd_crt) {
            std::vector<CompositeSpec::PartRequest> requests;
            for (const std::string& text : arg_parts) {
                CompositeSpec::PartRequest req;
                std::vector<std::string> pieces;
                std::string token;
                for (char ch : text) {
                    if (ch == ',') {
                        pieces.push_back(token);
                        token.clear();
                    } else {
                        token += ch;
                    }
                }
                pieces.push_back(token);
                require(pieces.size() == 2 || pieces.size() == 3, errc::invalid_input,
                        "--part expects p,m or p,m,c, got '" + text + "'");
                req.p = natural_of(pieces[0]);
                req.m = static_cast<unsigned>(to_u64(natural_of(pieces[1])));
                if (pieces.size() == 3) req.c = natural_of(pieces[2]);
                requests.push_back(std::move(req));
            }
            CompositeSpec spec = CompositeSpec::make(natural_of(arg_y), natural_of(arg_n),
                                                     requests, opts.factor);
            Residue z = crt_construct(spec);
            if (opts.format == OutputFormat::json) {
                json parts = json::array();
                for (const auto& part : spec.parts)
                    parts.push_back(json{{"p", part.params.p.str()},
                                         {"m", part.params.m},
                                         {"c", part.params.c.str()},
                                         {"r", part.params.root.r.str()},
                                         {"modulus", part.modulus.str()},
                                         {"M", part.subproduct.str()},
                                         {"q_inv", part.inverse.str()}});
                out << json{{"z", z.value.str()},
                            {"modulus", z.modulus.str()},
                            {"parts", parts}}
                           .dump(2)
                    << '\n';
            } else {
                out << "z = " << z.value << " (mod " << z.modulus << ")\n";
                for (const auto& part : spec.parts)
                    out << "  part p=" << part.params.p << " m=" << part.params.m
                        << " c=" << part.params.c << " r=" << part.params.root.r
                        << " M=" << part.subproduct << " q=" << part.inverse << '\n';
            }
            return exit_ok;
        }

        if (*cmd_sum) {
            Natural p = natural_of(arg_p);
            auto cert = find_primitive_root_mod_p_squared(p, opts.factor);
            RootPowerSum s = root_power_sum(p, natural_of(arg_n), arg_m, natural_of(arg_c), cert);
            if (opts.format == OutputFormat::json) {
                json terms = json::array();
                for (const auto& t : s.terms) terms.push_back(t.str());
                json j{{"r", cert.r.str()},
                       {"exponent_step", s.exponent_step.str()},
                       {"terms", terms},
                       {"reduced_sum", s.reduced_sum.str()},
                       {"residue", to_json(s.residue)}};
                if (s.exact_sum) j["exact_sum"] = s.exact_sum->str();
                out << j.dump(2) << '\n';
            } else {
                out << "r = " << cert.r << ", terms mod " << s.residue.modulus << ": "
                    << detail::join_naturals(s.terms, " + ") << " = " << s.reduced_sum
                    << " ≡ 0\n";
                if (s.exact_sum) out << "exact sum = " << *s.exact_sum << '\n';
            }
            return exit_ok;
        }

        if (*cmd_primroot) {
            Natural p = natural_of(arg_p);
            PrimitiveRootCert cert = find_primitive_root_mod_p_squared(p, opts.factor);
            PrimePowerModulus level1(p, 1), level2(p, 2);
            Natural order1 = multiplicative_order(cert.r, level1, opts.factor);
            Natural order2 = multiplicative_order(cert.r, level2, opts.factor);
            bool lifted = cert.r >= p;
            if (opts.format == OutputFormat::json) {
                out << json{{"p", p.str()},
                            {"r", cert.r.str()},
                            {"verified_level", cert.verified_level},
                            {"order_mod_p", order1.str()},
                            {"order_mod_p2", order2.str()},
                            {"phi_p2", euler_phi_prime_power(level2).str()},
                            {"lifted", lifted}}
                           .dump(2)
                    << '\n';
            } else {
                out << "r = " << cert.r << (lifted ? " (lifted by p)" : "") << '\n';
                out << "order mod p   = " << order1 << " = phi(p)\n";
                out << "order mod p^2 = " << order2 << " = phi(p^2)\n";
            }
            return exit_ok;
        }

        if (*cmd_q) {
            Natural q = quotient_value(natural_of(arg_z), natural_of(arg_y), natural_of(arg_n));
            Factorization f = factorize(q, opts.factor);
            if (opts.format == OutputFormat::json)
                out << json{{"q", q.str()}, {"factorization", to_json(f)}}.dump(2) << '\n';
            else
                out << q << " = " << f.str() << '\n';
            return exit_ok;
        }

        if (*cmd_factor) {
            Natural v = natural_of(arg_value);
            Factorization f = factorize(v, opts.factor);
            if (opts.format == OutputFormat::json)
                out << json{{"value", v.str()}, {"factorization", to_json(f)}}.dump(2) << '\n';
            else
                out << v << " = " << f.str() << (f.complete() ? "" : " (incomplete)") << '\n';
            return exit_ok;
        }

        if (*cmd_table1) {
            std::vector<ScanRow> rows = reproduce_table1(opts.factor, opts.threads);
            detail::print_rows(out, rows, opts.format);
            return exit_ok;
        }

        if (*cmd_scan) {
            OutputFormat fmt = opts.format;
            if (scan_tsv) fmt = OutputFormat::tsv;
            if (scan_json) fmt = OutputFormat::json;
            ScanReport report = conjecture_scan(natural_of(arg_n), natural_of(arg_ymax),
                                                natural_of(arg_zmax), opts.factor, opts.threads);
            if (fmt == OutputFormat::json) {
                json j{{"n", report.n.str()},
                       {"rows", json::array()},
                       {"counterexamples", json::array()},
                       {"incomplete", report.incomplete.size()}};
                for (const auto& row : report.rows) j["rows"].push_back(to_json(row));
                for (std::size_t i : report.counterexamples)
                    j["counterexamples"].push_back(to_json(report.rows[i]));
                out << j.dump(2) << '\n';
            } else {
                detail::print_rows(out, report.rows, OutputFormat::tsv);
                for (std::size_t i : report.counterexamples)
                    err << "counterexample: y=" << report.rows[i].y << " z=" << report.rows[i].z
                        << " Q=" << report.rows[i].q_value << " = "
                        << report.rows[i].factorization.str() << '\n';
            }
            return report.counterexamples.empty() ? exit_ok : exit_verification_failure;
        }

        if (*cmd_goor) {
            GoormaghtighReport r = goormaghtigh_check();
            if (opts.format == OutputFormat::json) {
                json conditions = json::array();
                for (const auto& c : r.conditions)
                    conditions.push_back(json{{"n", c.n.str()},
                                              {"p_minus_1", c.p_minus_1.str()},
                                              {"holds", c.holds}});
                out << json{{"first", r.first_base5.str()},
                            {"second", r.second_base90.str()},
                            {"conditions", conditions},
                            {"all_ok", r.all_ok}}
                           .dump(2)
                    << '\n';
            } else {
                out << "(5^3-1)/4 = (2^5-1)/1 = " << r.first_base5 << '\n';
                out << "(90^3-1)/89 = (2^13-1)/1 = " << r.second_base90 << '\n';
                for (const auto& c : r.conditions)
                    out << "  " << c.n << " | " << c.p_minus_1 << ": "
                        << (c.holds ? "yes" : "NO") << '\n';
            }
            return r.all_ok ? exit_ok : exit_verification_failure;
        }

        if (*cmd_mersenne) {
            MersenneReport r = mersenne_check(natural_of(arg_n), opts.factor);
            if (opts.format == OutputFormat::json) {
                json checks = json::array();
                for (const auto& c : r.checks)
                    checks.push_back(json{{"q", c.q.str()}, {"n_divides_q_minus_1", c.holds}});
                out << json{{"n", r.n.str()},
                            {"value", r.value.str()},
                            {"factorization", to_json(r.factorization)},
                            {"checks", checks},
                            {"complete", r.complete},
                            {"all_ok", r.all_ok}}
                           .dump(2)
                    << '\n';
            } else {
                out << "2^" << r.n << " - 1 = " << r.value << " = " << r.factorization.str()
                    << (r.complete ? "" : " (incomplete)") << '\n';
                for (const auto& c : r.checks)
                    out << "  " << r.n << " | " << c.q << " - 1: " << (c.holds ? "yes" : "NO")
                        << '\n';
            }
            if (!r.complete) return exit_ok;  // partial report, no verdict
            return r.all_ok ? exit_ok : exit_verification_failure;
        }

        if (*cmd_probe) {
            auto hits = perfect_power_probe(natural_of(arg_n), natural_of(arg_ymax),
                                            natural_of(arg_zmax), opts.threads);
            if (opts.format == OutputFormat::json) {
                json arr = json::array();
                for (const auto& hit : hits)
                    arr.push_back(json{{"y", hit.y.str()},
                                       {"z", hit.z.str()},
                                       {"q", hit.q_value.str()},
                                       {"root", hit.root.str()},
                                       {"k", hit.k},
                                       {"is_nth_power", hit.is_nth}});
                out << arr.dump(2) << '\n';
            } else {
                for (const auto& hit : hits)
                    out << "Q(" << hit.z << "," << hit.y << ") = " << hit.q_value << " = "
                        << hit.root << "^" << hit.k << (hit.is_nth ? "  <- perfect nth power" : "")
                        << '\n';
                if (hits.empty()) out << "no perfect-power quotients in range\n";
            }
            return exit_ok;
        }

        if (*cmd_verify)
            return verify_reference_values(out, opts, arg_only) ? exit_ok
                                                              : exit_verification_failure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return (e.code() == errc::theory_violation || e.code() == errc::table_mismatch)
                   ? exit_verification_failure
                   : exit_usage;
    }

    err << "no subcommand given\n" << app.help();
    return exit_usage;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), out, err);
}

}  // namespace qf::cli
