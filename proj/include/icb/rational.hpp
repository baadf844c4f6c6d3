#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace icb {

// Exact fraction, always kept in lowest terms (GMP canonical form). Every
// bound value in the library is one of these; floating point never enters
// bound arithmetic.
using Rational = mpq_class;

// Parses "p/q" or "p". Requires a nonzero denominator; the result is
// canonicalized. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

// Canonical rendering: "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace icb
