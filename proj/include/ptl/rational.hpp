#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ptl {

/// Exact rational, always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);

/// Always "n/d", also for integers ("1/1"). Used by the structured report format.
std::string to_fraction_string(const Rational& r);

/// Parses "n", "n/d", "-n/d" or a finite decimal "0.25". Returns false on malformed input
/// or a zero denominator.
bool parse_rational(std::string_view text, Rational& out);

/// Approximate decimal rendering, for display only.
std::string to_decimal_string(const Rational& r, int digits = 6);

}  // namespace ptl
