#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

#include "irrlab/errors.hpp"

namespace irrlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

/// Exact conversion: every finite double is a binary rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw error(errc::bad_params, "non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(mant);
    if (exp > 0) {
        r *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rational(BigInt(1) << -exp);
    }
    return r;
}

inline Rational rational(long num, long den = 1) { return Rational(num, den); }

} // namespace irrlab
