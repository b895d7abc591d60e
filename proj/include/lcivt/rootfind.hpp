#ifndef LCIVT_ROOTFIND_HPP
#define LCIVT_ROOTFIND_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <lcivt/hensel.hpp>

namespace lcivt
{

struct Certificate {
    std::optional<int> sign_a, sign_b; // signs of S at the interval endpoints
    std::size_t N = 0;                 // normalization index (degree of P)
    LcNumber d;                        // normalization scalar
    KPoly P, B;                        // factorization of the normalized transformed series
    std::optional<Exponent> achieved_cutoff;
    std::size_t degree_cap = 0;
};

struct RootReport {
    LcNumber root;
    unsigned multiplicity = 1;
    // S(root) vanishes below this exponent.
    Exponent residual_valuation;
    LcNumber a, b;
    // Several roots closer than the cutoff, reported once with summed multiplicity.
    bool unresolved = false;
    Certificate certificate;
};

// Real roots in [lo, hi] of a monic polynomial over A, expanded to the cutoff
// by residue-field isolation and Newton-polygon lifting. Ascending order.
std::vector<RootReport> monic_real_roots(const KPoly &P, const std::optional<std::pair<LcNumber, LcNumber>> &range,
                                         const Exponent &cutoff);

// An odd-multiplicity root of S in ]a, b[ when S(a), S(b) have opposite signs.
RootReport ivt_root(const PSeries &s, LcNumber a, LcNumber b, const Exponent &cutoff);

// Distinct zeros of S in [a, b] with multiplicities.
std::vector<RootReport> count_zeros(const PSeries &s, LcNumber a, LcNumber b, const Exponent &cutoff,
                                    std::optional<std::size_t> degree_cap = std::nullopt);

// Order of the zero of S at c.
unsigned multiplicity_at(const PSeries &s, const LcNumber &c, const Exponent &cutoff);

enum class TrackKind { zero, min, max };
const char *track_kind_name(TrackKind k);

struct TrackItem {
    TrackKind kind;
    LcNumber location;
    // Valuation of location - target; empty when they agree below the cutoff.
    std::optional<Exponent> distance_valuation;
};

struct TrackRecord {
    std::size_t n = 0;
    std::vector<TrackItem> items;
};

struct TrackResult {
    std::vector<TrackRecord> records;
    // Best distance valuation is nondecreasing in n across the records.
    bool nondecreasing = true;
};

TrackResult track_partial_sum_zeros(const PSeries &s, const RootReport &target, const std::vector<std::size_t> &n_list,
                                    const std::pair<LcNumber, LcNumber> &window, const Exponent &cutoff);

// Target type: minimum when S^(2p)(c) > 0, maximum otherwise.
TrackResult track_extremes(const PSeries &s, const RootReport &target, const std::vector<std::size_t> &n_list,
                           const std::pair<LcNumber, LcNumber> &window, const Exponent &cutoff);

// Exponent used by eval/sign commands when the user gives none: 1 (LC) or {1:1} (HAHN).
Exponent default_sign_cutoff(Mode m);
// Exponent used by root commands when the user gives none: 50 (LC) or {1:50} (HAHN).
Exponent default_root_cutoff(Mode m);

// Sign of S(x), raising the evaluation cutoff until the leading term is known.
int ps_sign_at(const PSeries &s, const LcNumber &x, const Exponent &start);

} // namespace lcivt

#endif
