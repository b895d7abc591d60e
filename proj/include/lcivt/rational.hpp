#ifndef LCIVT_RATIONAL_HPP
#define LCIVT_RATIONAL_HPP

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lcivt
{

using Integer = mpz_class;
using Rational = mpq_class;

inline int sgn(const Integer &x) { return ::sgn(x); }
inline int sgn(const Rational &x) { return ::sgn(x); }

// "p/q", or "p" when q = 1.
std::string to_string(const Integer &x);
std::string to_string(const Rational &x);

// Accepts "p", "-p", "p/q"; throws DomainError on malformed input.
Rational parse_rational(std::string_view text);

Integer ceil(const Rational &x);
Integer floor(const Rational &x);

Rational pow(const Rational &base, unsigned long exponent);

// Integer n-th root when x is a perfect n-th power of a rational.
bool exact_root(const Rational &x, unsigned long n, Rational &out);

Integer binomial(unsigned long n, unsigned long k);

} // namespace lcivt

#endif
