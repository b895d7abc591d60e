#ifndef LCIVT_KPOLY_HPP
#define LCIVT_KPOLY_HPP

#include <optional>
#include <string>
#include <vector>

#include <lcivt/lcnum.hpp>

namespace lcivt
{

// Polynomial over K, coefficient i multiplies X^i. Trailing exact zeros are trimmed.
using KPoly = std::vector<LcNumber>;

namespace kpoly
{

void trim(KPoly &p);
int degree(const KPoly &p);

KPoly add(const KPoly &a, const KPoly &b);
KPoly sub(const KPoly &a, const KPoly &b);
KPoly mul(const KPoly &a, const KPoly &b, const std::optional<Exponent> &limit = std::nullopt);
KPoly scale(const KPoly &a, const LcNumber &c, const std::optional<Exponent> &limit = std::nullopt);
KPoly derivative(const KPoly &a);
KPoly truncated(const KPoly &a, const Exponent &limit);

LcNumber eval(Mode m, const KPoly &p, const LcNumber &x, const std::optional<Exponent> &limit = std::nullopt);
// p(h*Z + k)
KPoly compose_linear(Mode m, const KPoly &p, const LcNumber &h, const LcNumber &k,
                     const std::optional<Exponent> &limit = std::nullopt);

// a = q*b + r with b monic (leading coefficient exactly 1).
std::pair<KPoly, KPoly> divrem_monic(const KPoly &a, const KPoly &b);

// Coefficientwise standard parts (requires coefficients in A).
AlgPoly standard_part(const KPoly &p);
KPoly from_alg(Mode m, const AlgPoly &p);

// Least valuation among coefficients (nullopt for the zero polynomial).
std::optional<Exponent> valuation(const KPoly &p);

std::string to_string(const KPoly &p, const std::string &var = "X");

} // namespace kpoly

} // namespace lcivt

#endif
