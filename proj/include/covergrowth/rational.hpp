#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace covergrowth {

// Arbitrary-precision integers and rationals. Expression templates are
// disabled so the types behave as plain values inside generic code.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

// Rationals are kept in lowest terms with positive denominator by the
// backend; routing construction through operator/ normalizes signs too.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
    return Rational(num) / Rational(den);
}

inline BigInt rational_num(const Rational& q) { return BigInt(numerator(q)); }
inline BigInt rational_den(const Rational& q) { return BigInt(denominator(q)); }

inline std::string to_string(const BigInt& n) { return n.str(); }
inline std::string to_string(const Rational& q) { return q.str(); }

} // namespace covergrowth
