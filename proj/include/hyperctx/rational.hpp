#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace hyperctx {

// Exact rational probabilities end-to-end in the analysis path. Floating point
// appears only in empirical frequency estimates and quantum-matrix checks.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Canonical "num/den" form with den >= 1, e.g. "0/1", "1/2", "-3/1".
std::string format_rational(const Rational& value);

/// Accepts "num/den" or a bare integer string. Throws Error("BadRational") on
/// malformed input or zero denominator.
Rational parse_rational(const std::string& text);

}  // namespace hyperctx
