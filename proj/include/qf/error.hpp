#pragma once

#include <stdexcept>
#include <string>

namespace qf {

// Every failure the library can signal. Input-contract violations and
// exhausted effort budgets are ordinary errors; theory_violation and
// table_mismatch mean a mathematical fact failed to hold at runtime and
// are treated as verification failures by the CLI.
enum class errc {
    invalid_modulus,
    undefined_gcd,
    no_inverse,
    moduli_not_coprime,
    invalid_input,
    degenerate_input,
    invalid_exponent,
    precondition_violation,
    characterization_fails,
    effort_exceeded,
    not_a_witness,
    not_a_divisor,
    theory_violation,
    table_mismatch,
};

inline const char* errc_name(errc code) {
    switch (code) {
        case errc::invalid_modulus: return "invalid_modulus";
        case errc::undefined_gcd: return "undefined_gcd";
        case errc::no_inverse: return "no_inverse";
        case errc::moduli_not_coprime: return "moduli_not_coprime";
        case errc::invalid_input: return "invalid_input";
        case errc::degenerate_input: return "degenerate_input";
        case errc::invalid_exponent: return "invalid_exponent";
        case errc::precondition_violation: return "precondition_violation";
        case errc::characterization_fails: return "characterization_fails";
        case errc::effort_exceeded: return "effort_exceeded";
        case errc::not_a_witness: return "not_a_witness";
        case errc::not_a_divisor: return "not_a_divisor";
        case errc::theory_violation: return "theory_violation";
        case errc::table_mismatch: return "table_mismatch";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, errc code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

}  // namespace qf
