#ifndef LCIVT_FACTOR_HPP
#define LCIVT_FACTOR_HPP

#include <vector>

#include <lcivt/qpoly.hpp>

namespace lcivt
{

// Irreducible factors over Z of a nonconstant polynomial, each primitive with
// positive leading coefficient, without repetition (multiplicities dropped).
// Zassenhaus: factor modulo a small prime, Hensel-lift, recombine.
std::vector<IntPoly> irreducible_factors(const IntPoly &p);

} // namespace lcivt

#endif
