#ifndef LCIVT_HENSEL_HPP
#define LCIVT_HENSEL_HPP

#include <cstddef>
#include <optional>

#include <lcivt/pseries.hpp>

namespace lcivt
{

// Root in M of an N-polynomial (c0 in M, c1 a unit) by Newton iteration from 0.
LcNumber n_poly_root(const KPoly &P, const Exponent &cutoff, std::size_t max_iterations = 64);

// S = P * B with P monic of degree N over A and B in 1 + M{X}, up to degree_cap.
struct Factorization {
    KPoly P;
    KPoly B;
    std::size_t N = 0;
    Exponent achieved_cutoff;
    std::size_t degree_cap = 0;
    std::size_t steps = 0;
};

enum class LiftSchedule {
    slice, // one valuation slice of the residual per step, divided over the residue field
    bulk   // whole residual per step, divided by the current P over A
};

Factorization weierstrass_factor(const NormalizedSeries &ns, std::optional<std::size_t> degree_cap,
                                 const Exponent &cutoff, LiftSchedule schedule = LiftSchedule::slice);

// Coefficients of S - P*B up to the degree cap (S taken from the normalized series).
KPoly factor_residual(const NormalizedSeries &ns, const Factorization &f);

} // namespace lcivt

#endif
