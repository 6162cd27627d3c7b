#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace paramodular {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p" or "p/q" with optional sign. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace paramodular
