#ifndef LCIVT_PSERIES_HPP
#define LCIVT_PSERIES_HPP

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <lcivt/kpoly.hpp>

namespace lcivt
{

// One node of a finitely presented series. val_bound(n) is a certified lower
// bound on the valuation of coefficient n (nullopt: the coefficient is 0).
// tail_index(w, c) returns N with val_bound(n) + n*w >= c for every n >= N,
// or nullopt when no such N can be certified.
class SeriesNode
{
public:
    explicit SeriesNode(Mode m) : mode(m) {}
    virtual ~SeriesNode() = default;

    // Exact coefficient when `limit` is empty; otherwise correct below limit.
    virtual LcNumber coeff(std::size_t n, const std::optional<Exponent> &limit) const = 0;
    virtual std::optional<Exponent> val_bound(std::size_t n) const = 0;
    virtual std::optional<std::size_t> tail_index(const Exponent &w, const Exponent &c) const = 0;
    // Index past the last nonzero coefficient, when finite.
    virtual std::optional<std::size_t> support_end() const { return std::nullopt; }

    const Mode mode;
};

class PSeries
{
public:
    PSeries() = default;
    explicit PSeries(std::shared_ptr<const SeriesNode> node) : node_(std::move(node)) {}

    const SeriesNode &node() const { return *node_; }
    const std::shared_ptr<const SeriesNode> &ptr() const { return node_; }
    Mode mode() const { return node_->mode; }

private:
    std::shared_ptr<const SeriesNode> node_;
};

struct PolyNode : SeriesNode {
    PolyNode(Mode m, KPoly c);
    LcNumber coeff(std::size_t n, const std::optional<Exponent> &limit) const override;
    std::optional<Exponent> val_bound(std::size_t n) const override;
    std::optional<std::size_t> tail_index(const Exponent &w, const Exponent &c) const override;
    std::optional<std::size_t> support_end() const override { return coeffs.size(); }
    const KPoly coeffs;
};

// Expansion of num/den; the constant term of den must be a single nonzero term.
struct RatFunNode : SeriesNode {
    RatFunNode(Mode m, KPoly num, KPoly den);
    LcNumber coeff(std::size_t n, const std::optional<Exponent> &limit) const override;
    std::optional<Exponent> val_bound(std::size_t n) const override;
    std::optional<std::size_t> tail_index(const Exponent &w, const Exponent &c) const override;
    std::optional<std::size_t> support_end() const override;
    const KPoly num, den;

private:
    Exponent base_;                // B in val_bound(n) = B + n*g
    std::optional<Exponent> rate_; // g; empty when den is a monomial
    mutable std::mutex mu_;
    mutable std::vector<LcNumber> memo_;
};

// a_n = sign(n) * scale * eps^e(n) placed at X^(n + offset); sign(n) = 1 or (-1)^n.
// e(n) is a polynomial in n (LC) or eps[n] (HAHN, with eps[0] = 1).
struct TermRuleNode : SeriesNode {
    TermRuleNode(Mode m, bool alternating, Rational scale, QPoly expo, bool seq, std::size_t offset);
    LcNumber coeff(std::size_t n, const std::optional<Exponent> &limit) const override;
    std::optional<Exponent> val_bound(std::size_t n) const override;
    std::optional<std::size_t> tail_index(const Exponent &w, const Exponent &c) const override;
    Exponent exponent_at(std::size_t k) const;
    const bool alternating;
    const Rational scale;
    const QPoly expo;
    const bool seq;
    const std::size_t offset;
};

struct SumNode : SeriesNode {
    SumNode(PSeries a, PSeries b);
    LcNumber coeff(std::size_t n, const std::optional<Exponent> &limit) const override;
    std::optional<Exponent> val_bound(std::size_t n) const override;
    std::optional<std::size_t> tail_index(const Exponent &w, const Exponent &c) const override;
    std::optional<std::size_t> support_end() const override;
    const PSeries a, b;
};

struct ScalarMulNode : SeriesNode {
    ScalarMulNode(LcNumber c, PSeries s);
    LcNumber coeff(std::size_t n, const std::optional<Exponent> &limit) const override;
    std::optional<Exponent> val_bound(std::size_t n) const override;
    std::optional<std::size_t> tail_index(const Exponent &w, const Exponent &c) const override;
    std::optional<std::size_t> support_end() const override;
    const LcNumber c;
    const PSeries s;
};

// T(Z) = S(h*Z + k)
struct LinearSubNode : SeriesNode {
    LinearSubNode(LcNumber h, LcNumber k, PSeries s);
    LcNumber coeff(std::size_t n, const std::optional<Exponent> &limit) const override;
    std::optional<Exponent> val_bound(std::size_t n) const override;
    std::optional<std::size_t> tail_index(const Exponent &w, const Exponent &c) const override;
    std::optional<std::size_t> support_end() const override;
    const LcNumber h, k;
    const PSeries s;
};

struct DerivativeNode : SeriesNode {
    explicit DerivativeNode(PSeries s);
    LcNumber coeff(std::size_t n, const std::optional<Exponent> &limit) const override;
    std::optional<Exponent> val_bound(std::size_t n) const override;
    std::optional<std::size_t> tail_index(const Exponent &w, const Exponent &c) const override;
    std::optional<std::size_t> support_end() const override;
    const PSeries s;
};

PSeries ps_poly(Mode m, KPoly coeffs);
PSeries ps_ratfun(Mode m, KPoly num, KPoly den);
PSeries ps_term_rule(Mode m, bool alternating, const Rational &scale, const QPoly &expo, std::size_t offset = 0);
PSeries ps_term_rule_seq(bool alternating, const Rational &scale, std::size_t offset = 0);
PSeries ps_sum(const PSeries &a, const PSeries &b);
PSeries ps_scale(const LcNumber &c, const PSeries &s);
PSeries ps_linear_sub(const LcNumber &h, const LcNumber &k, const PSeries &s);

LcNumber ps_coeff(const PSeries &s, std::size_t n, const std::optional<Exponent> &limit = std::nullopt);
std::optional<Exponent> ps_val_bound(const PSeries &s, std::size_t n);
KPoly ps_partial_sum(const PSeries &s, std::size_t n, const std::optional<Exponent> &limit = std::nullopt);
// Sum of all terms a_n x^n with valuation below cutoff; result truncated at cutoff.
LcNumber ps_eval(const PSeries &s, const LcNumber &x, const Exponent &cutoff);
PSeries ps_derivative(const PSeries &s);
// T(Z) = S((b-a)Z + (2a-b)), mapping [1,2] onto [a,b].
PSeries ps_transform_interval(const PSeries &s, const LcNumber &a, const LcNumber &b);

struct NormalizedSeries {
    PSeries series;      // d * T, lazily
    KPoly coeffs;        // d * t_n for n <= degree_cap, correct below cutoff; coeffs[N] == 1
    std::size_t N = 0;
    LcNumber d;
    Exponent cutoff;
    std::size_t degree_cap = 0;
    std::string origin;
};

// With no degree_cap, the smallest cap certified by val_bound is chosen.
NormalizedSeries ps_normalize(const PSeries &s, std::optional<std::size_t> degree_cap, const Exponent &cutoff,
                              const std::string &origin = "identity");

// Certified lower bound on min_{n >= from} (val_bound(n) + n*w); nullopt if every such coefficient is 0.
std::optional<Exponent> ps_min_weighted(const PSeries &s, std::size_t from, const Exponent &w);

// An index N with val_bound(n) + n*w >= c for all n >= N; throws ConvergenceError otherwise.
std::size_t ps_tail_index(const PSeries &s, const Exponent &w, const Exponent &c);

} // namespace lcivt

#endif
