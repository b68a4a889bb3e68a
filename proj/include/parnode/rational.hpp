// Exact rational arithmetic used throughout the engine.
//
// All slope/Euler-characteristic bookkeeping is done over Q with arbitrary
// precision; floating point only ever appears inside the trigonometric
// dimension oracle (verlinde.hpp), never in verdicts or serialized output.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace parnode {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // normalized p/q, q > 0

// Rational from an integer pair, q != 0.
inline Rational ratio(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("ratio: zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

// Largest integer <= q.
inline BigInt rational_floor(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);  // d > 0 by normalization
    BigInt quot = n / d;
    if (n % d != 0 && n < 0) --quot;
    return quot;
}

// Smallest integer >= q.
inline BigInt rational_ceil(const Rational& q) {
    return -rational_floor(-q);
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// Canonical "p/q" form with q >= 1, e.g. "3/2", "-1/3", "4/1".
inline std::string to_fraction_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

// Parses "p/q" (or a bare integer "p"); throws std::invalid_argument on junk.
Rational parse_fraction(const std::string& text);

}  // namespace parnode
