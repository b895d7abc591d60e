#ifndef LCIVT_LCNUM_HPP
#define LCIVT_LCNUM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <lcivt/exponent.hpp>
#include <lcivt/realalg.hpp>

namespace lcivt
{

// Maximum number of terms any intermediate LcNumber may hold (LCIVT_MAX_TERMS, default 10^6).
std::size_t max_terms();

// A truncated element of K: finitely many terms c * eps^e (ascending e,
// nonzero c) plus an optional cutoff. With a cutoff, every term of exponent
// below it is correct and nothing is known beyond it.
class LcNumber
{
public:
    using Term = std::pair<Exponent, RealAlgebraic>;

    explicit LcNumber(Mode m = Mode::lc) : mode_(m) {}
    LcNumber(Mode m, const RealAlgebraic &c);
    LcNumber(Mode m, const Exponent &e, const RealAlgebraic &c);

    // Canonical form: merges duplicates and drops zero coefficients.
    static LcNumber make(Mode m, std::vector<Term> terms, std::optional<Exponent> cutoff = std::nullopt);

    Mode mode() const { return mode_; }
    const std::vector<Term> &terms() const { return terms_; }
    const std::optional<Exponent> &cutoff() const { return cutoff_; }
    bool is_exact() const { return !cutoff_; }
    // No terms below the cutoff (an exact zero when is_exact()).
    bool empty() const { return terms_.empty(); }
    bool is_zero() const { return terms_.empty() && !cutoff_; }

    // Minimum exponent; throws DomainError on an exact zero and UndecidableError on an empty truncation.
    Exponent valuation() const;
    // Lower bound on the valuation: the least exponent, or the cutoff if empty; nullopt for exact zero.
    std::optional<Exponent> valuation_bound() const;
    const RealAlgebraic &leading_coeff() const;
    // Coefficient at e (zero when absent); throws UndecidableError if e >= cutoff.
    RealAlgebraic coeff(const Exponent &e) const;
    // Sign of the value; UndecidableError if empty and truncated.
    int sign() const;

    // Drops terms at or beyond c and records min(cutoff, c).
    LcNumber truncated(const Exponent &c) const;
    // Like truncated, but an exact value with every term below c stays exact.
    LcNumber clipped(const Exponent &c) const;

    LcNumber operator-() const;
    friend LcNumber operator+(const LcNumber &a, const LcNumber &b);
    friend LcNumber operator-(const LcNumber &a, const LcNumber &b);
    friend LcNumber operator*(const LcNumber &a, const LcNumber &b);
    LcNumber &operator+=(const LcNumber &b) { return *this = *this + b; }
    LcNumber &operator-=(const LcNumber &b) { return *this = *this - b; }
    LcNumber &operator*=(const LcNumber &b) { return *this = *this * b; }

    // Literal grammar: "3/2*eps^(1/2) + 2 - eps^2", HAHN monomials "eps[1]*eps[2]^(1/3)",
    // truncation shown as a trailing "+ O(eps^c)".
    std::string to_string() const;

private:
    Mode mode_;
    std::vector<Term> terms_;
    std::optional<Exponent> cutoff_;
};

// Monomial eps^e with the given coefficient.
LcNumber lc_monomial(const Exponent &e, const RealAlgebraic &c = RealAlgebraic(1));
LcNumber lc_const(Mode m, const Rational &q);

LcNumber lc_make(Mode m, std::vector<LcNumber::Term> terms);

// Sign of a - b; throws UndecidableError when the difference has no term below its cutoff.
int lc_compare(const LcNumber &a, const LcNumber &b);

enum class LcOp { add, sub, mul };
LcNumber lc_arith(LcOp op, const LcNumber &a, const LcNumber &b);

// a * b keeping only exponents below limit.
LcNumber lc_mul_trunc(const LcNumber &a, const LcNumber &b, const Exponent &limit);
LcNumber lc_scale(const LcNumber &a, const RealAlgebraic &c);
// a * eps^e
LcNumber lc_shift(const LcNumber &a, const Exponent &e);
// a^n keeping only exponents below limit (exact when limit is empty).
LcNumber lc_pow(const LcNumber &a, unsigned long n, const std::optional<Exponent> &limit = std::nullopt);

// 1/a correct below min(cutoff, precision allowed by a's truncation).
LcNumber lc_invert(const LcNumber &a, const Exponent &cutoff);
// Real n-th root via the binomial series.
LcNumber lc_nth_root(const LcNumber &a, unsigned long n, const Exponent &cutoff);
LcNumber lc_div(const LcNumber &a, const LcNumber &b, const Exponent &cutoff);

Exponent lc_valuation(const LcNumber &a);
// Residue map A -> A/M.
RealAlgebraic lc_standard_part(const LcNumber &a);

enum class Magnitude { zero, infinitesimal, finite_appreciable, infinitely_large };
const char *magnitude_name(Magnitude m);
struct Classification {
    Magnitude magnitude;
    bool topologically_nilpotent;
};
Classification lc_classify(const LcNumber &a);

bool in_A(const LcNumber &a);
bool in_M(const LcNumber &a);

} // namespace lcivt

#endif
