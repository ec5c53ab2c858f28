#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "redgreen/errors.hpp"

namespace redgreen {

// Exact arithmetic used by every verifier-side computation. cpp_rational
// keeps values in canonical reduced form (gcd(num, den) = 1, den > 0), so
// equality is structural equality.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Canonical "p/q" form, e.g. "5/9", "1/1", "0/1".
std::string format_rational(const Rational& q);

// Accepts "p/q" or a bare integer "p". Rejects zero denominators.
Rational parse_rational(const std::string& text);

}  // namespace redgreen
