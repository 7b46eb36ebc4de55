#ifndef VTHETA_RATIONAL_HPP
#define VTHETA_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace vtheta {

using Complex = std::complex<double>;

/* Exact rational arithmetic. Exponent bookkeeping (coset offsets 1/2, the
 * eta shift 1/24) and the change-of-coordinates tables must be exact;
 * coefficients stay in double precision. */
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1)
{
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(num, den);
}

inline double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

/* Prints "p/q", or just "p" when the denominator is 1. */
inline std::string rational_str(const Rational& r)
{
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

inline Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    }
}

inline long long to_long(const Rational& r)
{
    if (denominator(r) != 1) throw std::invalid_argument("rational: not an integer: " + rational_str(r));
    return numerator(r).convert_to<long long>();
}

/* Generalized binomial coefficient binom(k, i) for integer k of either sign. */
inline Rational binom_general(long long k, long long i)
{
    if (i < 0) return Rational(0);
    Rational r(1);
    for (long long t = 0; t < i; ++t) r *= Rational(k - t, t + 1);
    return r;
}

inline BigInt factorial(int n)
{
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace vtheta

#endif
