#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace varjet {

/// Exact rational coefficients; the symbolic layer never touches floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace varjet
