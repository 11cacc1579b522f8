#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "qf/error.hpp"

namespace qf {

/// Exact integer arithmetic for the whole library. Values that the contracts
/// call "Natural" are nonnegative; functions check that at their boundaries.
using Natural = boost::multiprecision::cpp_int;

inline std::string to_string(const Natural& v) { return v.str(); }

inline bool is_even(const Natural& v) { return !boost::multiprecision::bit_test(v, 0); }

/// Number of bits in v; 0 for v == 0.
inline unsigned bit_length(const Natural& v) {
    if (v == 0) return 0;
    return boost::multiprecision::msb(v) + 1;
}

inline Natural pow_natural(const Natural& base, unsigned long exp) {
    return boost::multiprecision::pow(base, exp);
}

inline bool fits_u64(const Natural& v) {
    return v >= 0 && v <= std::numeric_limits<std::uint64_t>::max();
}

inline std::uint64_t to_u64(const Natural& v) {
    require(fits_u64(v), errc::invalid_input, "value does not fit in 64 bits: " + v.str());
    return v.convert_to<std::uint64_t>();
}

/// Parses a decimal string of digits. Signs, blanks and empty input are rejected;
/// this is the only path by which external text becomes a Natural.
inline Natural parse_natural(std::string_view text) {
    require(!text.empty(), errc::invalid_input, "empty integer literal");
    for (char ch : text)
        require(ch >= '0' && ch <= '9', errc::invalid_input,
                "not a decimal natural number: '" + std::string(text) + "'");
    return Natural(std::string(text));
}

}  // namespace qf
