#pragma once

#include <gmpxx.h>
#include <string>

namespace expd {

// Exact arbitrary-precision rational. GMP keeps the canonical form we rely
// on everywhere: denominator > 0, gcd(|num|, den) = 1, zero stored as 0/1.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "n" or "n/d" with arbitrary-precision parts. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational rational_from_string(const std::string& text);

std::string to_string(const Rational& q);

} // namespace expd
