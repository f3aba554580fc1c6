#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nnbox {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Reduced "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// value / 2^exponent as a reduced rational.
inline Rational dyadic(std::int64_t value, unsigned exponent) {
    return Rational(BigInt(value), BigInt(1) << exponent);
}

}  // namespace nnbox
