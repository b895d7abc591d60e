#ifndef LCIVT_QPOLY_HPP
#define LCIVT_QPOLY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <lcivt/rational.hpp>

namespace lcivt
{

// Dense univariate polynomials, coefficient i multiplies x^i. The zero
// polynomial is the empty vector; trailing zeros are never stored.
using IntPoly = std::vector<Integer>;
using QPoly = std::vector<Rational>;

namespace qpoly
{

template <typename T>
inline void trim(std::vector<T> &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

template <typename T>
inline int degree(const std::vector<T> &p)
{
    return static_cast<int>(p.size()) - 1;
}

QPoly to_q(const IntPoly &p);

// Clears denominators, removes the content and makes the leading coefficient positive.
IntPoly primitive(const QPoly &p);
IntPoly primitive(const IntPoly &p);
Integer content(const IntPoly &p);

QPoly add(const QPoly &a, const QPoly &b);
QPoly sub(const QPoly &a, const QPoly &b);
QPoly mul(const QPoly &a, const QPoly &b);
QPoly scale(const QPoly &a, const Rational &c);
QPoly derivative(const QPoly &a);
IntPoly derivative(const IntPoly &a);
IntPoly mul(const IntPoly &a, const IntPoly &b);

// a = q*b + r with deg r < deg b; b must be nonzero.
std::pair<QPoly, QPoly> divrem(const QPoly &a, const QPoly &b);
QPoly rem(const QPoly &a, const QPoly &b);
// Monic gcd (empty when both are zero).
QPoly gcd(const QPoly &a, const QPoly &b);
// Exact quotient over Z, or nullopt when b does not divide a.
std::optional<IntPoly> divexact(const IntPoly &a, const IntPoly &b);

Rational eval(const QPoly &p, const Rational &x);
Rational eval(const IntPoly &p, const Rational &x);
int sign_at(const IntPoly &p, const Rational &x);

// p(x + c) and p(c*x) on primitive integer polynomials (result primitive).
IntPoly shift(const IntPoly &p, const Rational &c);
IntPoly scale_var(const IntPoly &p, const Rational &c);
// x^deg p * p(1/x)
IntPoly reverse(const IntPoly &p);

// Yun's algorithm: p = c * prod f_i^i, f_i squarefree, primitive, pairwise coprime.
std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly &p);
IntPoly squarefree_part(const IntPoly &p);

Rational resultant(const QPoly &a, const QPoly &b);

// Unique polynomial of degree < xs.size() through the points.
QPoly interpolate(const std::vector<Rational> &xs, const std::vector<Rational> &ys);

// Cauchy bound: every real root lies in (-B, B).
Rational root_bound(const IntPoly &p);

std::string to_string(const IntPoly &p, const std::string &var = "x");
std::string to_string(const QPoly &p, const std::string &var = "x");

} // namespace qpoly

// Sturm chain of a squarefree polynomial; counts distinct real roots.
class SturmChain
{
public:
    explicit SturmChain(const IntPoly &p);

    // Number of distinct roots in the half-open interval (a, b].
    int count(const Rational &a, const Rational &b) const;
    // Number of distinct roots in the closed interval [a, b].
    int count_closed(const Rational &a, const Rational &b) const;
    int count_all() const;
    const IntPoly &poly() const { return chain_.front(); }

private:
    int variations(const Rational &x) const;
    int variations_at_infinity(int side) const;

    std::vector<IntPoly> chain_;
};

// An isolating interval for a single root of a squarefree polynomial:
// either the exact rational root (lo == hi) or an open interval (lo, hi)
// whose endpoints are not roots.
struct RootInterval {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
};

// Isolates all real roots of a squarefree polynomial in ascending order
// using Sturm counts and dyadic bisection.
std::vector<RootInterval> isolate_squarefree(const IntPoly &p);

} // namespace lcivt

#endif
