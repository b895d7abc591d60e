#include <algorithm>

#include <lcivt/errors.hpp>
#include <lcivt/pseries.hpp>

namespace lcivt
{

namespace
{

constexpr std::size_t kScanLimit = 100000;

std::optional<Exponent> min_opt(const std::optional<Exponent> &a, const std::optional<Exponent> &b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return std::min(*a, *b);
}

Exponent times(std::size_t n, const Exponent &e) { return Rational(static_cast<unsigned long>(n)) * e; }

LcNumber maybe_truncate(const LcNumber &x, const std::optional<Exponent> &limit)
{
    return limit ? x.clipped(*limit) : x;
}

bool is_monomial(const LcNumber &x) { return x.is_exact() && x.terms().size() == 1; }

} // namespace

std::size_t ps_tail_index(const PSeries &s, const Exponent &w, const Exponent &c)
{
    auto n = s.node().tail_index(w, c);
    if (!n) {
        throw ConvergenceError("no convergence certificate: val_bound(n) + n*" + w.to_string() +
                               " does not pass " + c.to_string());
    }
    return *n;
}

std::optional<Exponent> ps_min_weighted(const PSeries &s, std::size_t from, const Exponent &w)
{
    const SeriesNode &node = s.node();
    auto end = node.support_end();
    std::size_t n0 = from;
    std::optional<Exponent> m;
    for (; !end || n0 < *end; ++n0) {
        if (auto vb = node.val_bound(n0)) {
            m = *vb + times(n0, w);
            break;
        }
        if (n0 - from > kScanLimit) {
            throw ResourceError("no nonzero coefficient found while bounding valuations");
        }
    }
    if (!m) {
        return std::nullopt;
    }
    std::size_t N = ps_tail_index(s, w, *m);
    if (end) {
        N = std::min(N, *end);
    }
    if (N > max_terms()) {
        throw ResourceError("valuation certificate needs " + std::to_string(N) + " terms");
    }
    for (std::size_t n = n0 + 1; n < N; ++n) {
        if (auto vb = node.val_bound(n)) {
            m = std::min(*m, *vb + times(n, w));
        }
    }
    return m;
}

// ---- Poly

PolyNode::PolyNode(Mode m, KPoly c) : SeriesNode(m), coeffs(std::move(c))
{
    for (const auto &x : coeffs) {
        if (x.mode() != m) {
            throw DomainError("cannot mix lc and hahn coefficients");
        }
    }
}

LcNumber PolyNode::coeff(std::size_t n, const std::optional<Exponent> &limit) const
{
    if (n >= coeffs.size()) {
        return LcNumber(mode);
    }
    return maybe_truncate(coeffs[n], limit);
}

std::optional<Exponent> PolyNode::val_bound(std::size_t n) const
{
    return n < coeffs.size() ? coeffs[n].valuation_bound() : std::nullopt;
}

std::optional<std::size_t> PolyNode::tail_index(const Exponent &, const Exponent &) const { return coeffs.size(); }

// ---- RatFun

RatFunNode::RatFunNode(Mode m, KPoly n, KPoly d) : SeriesNode(m), num(std::move(n)), den(std::move(d))
{
    kpoly::trim(const_cast<KPoly &>(num));
    kpoly::trim(const_cast<KPoly &>(den));
    if (den.empty() || !is_monomial(den[0])) {
        throw DomainError("rational function denominator must have a single-term constant coefficient");
    }
    const Exponent v0 = den[0].valuation();
    for (std::size_t i = 1; i < den.size(); ++i) {
        if (den[i].is_zero()) {
            continue;
        }
        if (!den[i].is_exact()) {
            throw DomainError("rational function denominator must be exact");
        }
        Exponent r = Rational(1, static_cast<long>(i)) * (den[i].valuation() - v0);
        rate_ = min_opt(rate_, r);
    }
    if (rate_) {
        std::optional<Exponent> b;
        for (std::size_t i = 0; i < num.size(); ++i) {
            if (auto vb = num[i].valuation_bound()) {
                b = min_opt(b, *vb - v0 - times(i, *rate_));
            }
        }
        base_ = b.value_or(Exponent::zero(m));
    }
}

std::optional<std::size_t> RatFunNode::support_end() const
{
    if (num.empty()) {
        return 0;
    }
    if (!rate_) {
        return num.size();
    }
    return std::nullopt;
}

LcNumber RatFunNode::coeff(std::size_t n, const std::optional<Exponent> &limit) const
{
    if (num.empty()) {
        return LcNumber(mode);
    }
    std::lock_guard<std::mutex> g(mu_);
    if (memo_.size() <= n) {
        const auto &[e0, c0] = den[0].terms().front();
        LcNumber inv0 = lc_monomial(-e0, c0.inverse());
        if (inv0.mode() != mode) {
            inv0 = LcNumber(mode, c0.inverse());
        }
        while (memo_.size() <= n) {
            std::size_t k = memo_.size();
            LcNumber acc = k < num.size() ? num[k] : LcNumber(mode);
            for (std::size_t i = 1; i < den.size() && i <= k; ++i) {
                if (!den[i].is_zero()) {
                    acc -= den[i] * memo_[k - i];
                }
            }
            memo_.push_back(acc * inv0);
        }
    }
    return maybe_truncate(memo_[n], limit);
}

std::optional<Exponent> RatFunNode::val_bound(std::size_t n) const
{
    if (num.empty()) {
        return std::nullopt;
    }
    if (!rate_) {
        if (n >= num.size()) {
            return std::nullopt;
        }
        auto vb = num[n].valuation_bound();
        return vb ? std::optional<Exponent>(*vb - den[0].valuation()) : std::nullopt;
    }
    return base_ + times(n, *rate_);
}

std::optional<std::size_t> RatFunNode::tail_index(const Exponent &w, const Exponent &c) const
{
    if (auto end = support_end()) {
        return *end;
    }
    Exponent r = *rate_ + w;
    if (r.sign() > 0) {
        auto k = min_multiple_at_least(r, c - base_);
        if (!k) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(*k);
    }
    if (r.sign() == 0 && (c - base_).sign() <= 0) {
        return 0;
    }
    return std::nullopt;
}

// ---- TermRule

TermRuleNode::TermRuleNode(Mode m, bool alt, Rational sc, QPoly e, bool sq, std::size_t off)
    : SeriesNode(m), alternating(alt), scale(std::move(sc)), expo(std::move(e)), seq(sq), offset(off)
{
    if (seq && m != Mode::hahn) {
        throw DomainError("seq(n) exponents require hahn mode");
    }
    if (!seq && m != Mode::lc) {
        throw DomainError("polynomial exponents require lc mode");
    }
}

Exponent TermRuleNode::exponent_at(std::size_t k) const
{
    if (seq) {
        return k == 0 ? Exponent::zero(Mode::hahn) : Exponent::basis(static_cast<unsigned>(k));
    }
    return Exponent(qpoly::eval(expo, Rational(static_cast<unsigned long>(k))));
}

LcNumber TermRuleNode::coeff(std::size_t n, const std::optional<Exponent> &limit) const
{
    if (n < offset || scale == 0) {
        return LcNumber(mode);
    }
    std::size_t k = n - offset;
    Rational c = (alternating && k % 2 == 1) ? Rational(-scale) : scale;
    return maybe_truncate(LcNumber(mode, exponent_at(k), RealAlgebraic(c)), limit);
}

std::optional<Exponent> TermRuleNode::val_bound(std::size_t n) const
{
    if (n < offset || scale == 0) {
        return std::nullopt;
    }
    return exponent_at(n - offset);
}

std::optional<std::size_t> TermRuleNode::tail_index(const Exponent &w, const Exponent &c) const
{
    if (scale == 0) {
        return 0;
    }
    if (seq) {
        return offset + std::max(w.top_index(), c.top_index()) + 1;
    }
    // f(n) = e(n - offset) + n*w - c must be >= 0 from N on.
    QPoly f;
    QPoly power{1};
    QPoly lin{Rational(-static_cast<long>(offset)), 1};
    for (const auto &e : expo) {
        f = qpoly::add(f, qpoly::scale(power, e));
        power = qpoly::mul(power, lin);
    }
    f = qpoly::add(f, QPoly{-c.value(), w.value()});
    qpoly::trim(f);
    if (f.empty()) {
        return offset;
    }
    if (f.back() < 0) {
        return std::nullopt;
    }
    if (f.size() == 1) {
        return offset;
    }
    auto roots = isolate_real_roots(f);
    if (roots.empty()) {
        return offset;
    }
    Rational top = roots.back().value.interval().second;
    Integer n = ceil(top);
    if (n < static_cast<long>(offset)) {
        return offset;
    }
    if (!n.fits_ulong_p()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(n.get_ui());
}

// ---- Sum

SumNode::SumNode(PSeries x, PSeries y) : SeriesNode(x.mode()), a(std::move(x)), b(std::move(y))
{
    if (a.mode() != b.mode()) {
        throw DomainError("cannot mix lc and hahn series");
    }
}

LcNumber SumNode::coeff(std::size_t n, const std::optional<Exponent> &limit) const
{
    return maybe_truncate(a.node().coeff(n, limit) + b.node().coeff(n, limit), limit);
}

std::optional<Exponent> SumNode::val_bound(std::size_t n) const
{
    return min_opt(a.node().val_bound(n), b.node().val_bound(n));
}

std::optional<std::size_t> SumNode::tail_index(const Exponent &w, const Exponent &c) const
{
    auto x = a.node().tail_index(w, c), y = b.node().tail_index(w, c);
    if (!x || !y) {
        return std::nullopt;
    }
    return std::max(*x, *y);
}

std::optional<std::size_t> SumNode::support_end() const
{
    auto x = a.node().support_end(), y = b.node().support_end();
    if (!x || !y) {
        return std::nullopt;
    }
    return std::max(*x, *y);
}

// ---- ScalarMul

ScalarMulNode::ScalarMulNode(LcNumber x, PSeries t) : SeriesNode(t.mode()), c(std::move(x)), s(std::move(t))
{
    if (c.mode() != s.mode()) {
        throw DomainError("cannot mix lc and hahn series");
    }
}

LcNumber ScalarMulNode::coeff(std::size_t n, const std::optional<Exponent> &limit) const
{
    if (c.is_zero()) {
        return LcNumber(mode);
    }
    if (!limit) {
        return c * s.node().coeff(n, std::nullopt);
    }
    Exponent vc = c.valuation_bound().value();
    return lc_mul_trunc(c, s.node().coeff(n, *limit - vc), *limit);
}

std::optional<Exponent> ScalarMulNode::val_bound(std::size_t n) const
{
    auto vc = c.valuation_bound();
    auto vb = s.node().val_bound(n);
    if (!vc || !vb) {
        return std::nullopt;
    }
    return *vb + *vc;
}

std::optional<std::size_t> ScalarMulNode::tail_index(const Exponent &w, const Exponent &target) const
{
    auto vc = c.valuation_bound();
    if (!vc) {
        return 0;
    }
    return s.node().tail_index(w, target - *vc);
}

std::optional<std::size_t> ScalarMulNode::support_end() const
{
    return c.is_zero() ? std::optional<std::size_t>(0) : s.node().support_end();
}

// ---- Derivative

DerivativeNode::DerivativeNode(PSeries t) : SeriesNode(t.mode()), s(std::move(t)) {}

LcNumber DerivativeNode::coeff(std::size_t n, const std::optional<Exponent> &limit) const
{
    return lc_scale(s.node().coeff(n + 1, limit), RealAlgebraic(Rational(static_cast<unsigned long>(n + 1))));
}

std::optional<Exponent> DerivativeNode::val_bound(std::size_t n) const { return s.node().val_bound(n + 1); }

std::optional<std::size_t> DerivativeNode::tail_index(const Exponent &w, const Exponent &c) const
{
    auto n = s.node().tail_index(w, c + w);
    if (!n) {
        return std::nullopt;
    }
    return *n > 0 ? *n - 1 : 0;
}

std::optional<std::size_t> DerivativeNode::support_end() const
{
    auto e = s.node().support_end();
    if (!e) {
        return std::nullopt;
    }
    return *e > 0 ? *e - 1 : 0;
}

// ---- LinearSub

LinearSubNode::LinearSubNode(LcNumber hh, LcNumber kk, PSeries t)
    : SeriesNode(t.mode()), h(std::move(hh)), k(std::move(kk)), s(std::move(t))
{
    if (h.mode() != s.mode() || k.mode() != s.mode()) {
        throw DomainError("cannot mix lc and hahn series");
    }
    if (h.empty()) {
        throw DomainError("substitution scale must be nonzero");
    }
}

LcNumber LinearSubNode::coeff(std::size_t j, const std::optional<Exponent> &limit) const
{
    const Exponent vh = h.valuation();
    if (k.is_zero()) {
        LcNumber a = s.node().coeff(j, limit ? std::optional<Exponent>(*limit - times(j, vh)) : std::nullopt);
        if (a.is_zero()) {
            return a;
        }
        if (!limit) {
            return a * lc_pow(h, j);
        }
        Exponent va = a.valuation_bound().value();
        return lc_mul_trunc(a, lc_pow(h, j, *limit - va), *limit);
    }
    const Exponent wk = k.valuation();
    auto end = s.node().support_end();
    std::size_t N;
    if (limit) {
        N = std::max(j, ps_tail_index(s, wk, *limit - times(j, vh) + times(j, wk)));
        if (end) {
            N = std::min(N, *end);
        }
    } else if (end) {
        N = *end;
    } else {
        throw DomainError("coefficients of a substituted infinite series need a cutoff");
    }
    if (N > max_terms()) {
        throw ResourceError("substitution needs " + std::to_string(N) + " source coefficients");
    }
    LcNumber acc(mode);
    if (N <= j) {
        return limit ? acc.truncated(*limit) : acc;
    }
    // Precision bookkeeping: M bounds val(a_n k^(n-j)), V bounds val(a_n).
    std::optional<Exponent> M, V;
    for (std::size_t n = j; n < N; ++n) {
        if (auto vb = s.node().val_bound(n)) {
            M = min_opt(M, *vb + times(n - j, wk));
            V = min_opt(V, *vb);
        }
    }
    if (!M || (limit && *M + times(j, vh) >= *limit)) {
        return limit ? acc.truncated(*limit) : acc;
    }
    LcNumber hj = limit ? lc_pow(h, j, *limit - *M) : lc_pow(h, j);
    std::optional<Exponent> lk;
    if (limit) {
        lk = *limit - times(j, vh) - *V;
    }
    if (lk && wk.sign() < 0) {
        lk = *lk - times(N - j, wk);
    }
    LcNumber kp = lc_const(mode, 1);
    for (std::size_t n = j; n < N; ++n) {
        if (n > j) {
            kp = lk ? lc_mul_trunc(kp, k, *lk) : kp * k;
        }
        auto vb = s.node().val_bound(n);
        if (!vb || (limit && *vb + times(j, vh) + times(n - j, wk) >= *limit)) {
            continue;
        }
        std::optional<Exponent> la;
        if (limit) {
            la = *limit - times(j, vh) - times(n - j, wk);
        }
        LcNumber a = s.node().coeff(n, la);
        if (a.is_zero()) {
            continue;
        }
        LcNumber term = lc_scale(a, RealAlgebraic(Rational(binomial(n, j))));
        if (limit) {
            term = lc_mul_trunc(lc_mul_trunc(term, kp, *limit - times(j, vh)), hj, *limit);
        } else {
            term = term * kp * hj;
        }
        acc += term;
    }
    return limit ? acc.truncated(*limit) : acc;
}

std::optional<Exponent> LinearSubNode::val_bound(std::size_t j) const
{
    const Exponent vh = h.valuation();
    if (k.is_zero()) {
        auto vb = s.node().val_bound(j);
        return vb ? std::optional<Exponent>(*vb + times(j, vh)) : std::nullopt;
    }
    const Exponent wk = k.valuation();
    auto m = ps_min_weighted(s, j, wk);
    if (!m) {
        return std::nullopt;
    }
    return *m + times(j, vh) - times(j, wk);
}

std::optional<std::size_t> LinearSubNode::tail_index(const Exponent &w, const Exponent &c) const
{
    const Exponent vh = h.valuation();
    Exponent mu = vh + w;
    if (!k.is_zero()) {
        mu = std::min(mu, k.valuation());
    }
    return s.node().tail_index(mu, c);
}

std::optional<std::size_t> LinearSubNode::support_end() const { return s.node().support_end(); }

// ---- constructors

PSeries ps_poly(Mode m, KPoly coeffs)
{
    kpoly::trim(coeffs);
    return PSeries(std::make_shared<PolyNode>(m, std::move(coeffs)));
}

PSeries ps_ratfun(Mode m, KPoly num, KPoly den)
{
    return PSeries(std::make_shared<RatFunNode>(m, std::move(num), std::move(den)));
}

PSeries ps_term_rule(Mode m, bool alternating, const Rational &scale, const QPoly &expo, std::size_t offset)
{
    return PSeries(std::make_shared<TermRuleNode>(m, alternating, scale, expo, false, offset));
}

PSeries ps_term_rule_seq(bool alternating, const Rational &scale, std::size_t offset)
{
    return PSeries(std::make_shared<TermRuleNode>(Mode::hahn, alternating, scale, QPoly{}, true, offset));
}

PSeries ps_sum(const PSeries &a, const PSeries &b) { return PSeries(std::make_shared<SumNode>(a, b)); }

PSeries ps_scale(const LcNumber &c, const PSeries &s) { return PSeries(std::make_shared<ScalarMulNode>(c, s)); }

PSeries ps_linear_sub(const LcNumber &h, const LcNumber &k, const PSeries &s)
{
    return PSeries(std::make_shared<LinearSubNode>(h, k, s));
}

PSeries ps_derivative(const PSeries &s) { return PSeries(std::make_shared<DerivativeNode>(s)); }

// ---- operations

LcNumber ps_coeff(const PSeries &s, std::size_t n, const std::optional<Exponent> &limit)
{
    return s.node().coeff(n, limit);
}

std::optional<Exponent> ps_val_bound(const PSeries &s, std::size_t n) { return s.node().val_bound(n); }

KPoly ps_partial_sum(const PSeries &s, std::size_t n, const std::optional<Exponent> &limit)
{
    KPoly out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out.push_back(s.node().coeff(i, limit));
    }
    kpoly::trim(out);
    return out;
}

LcNumber ps_eval(const PSeries &s, const LcNumber &x, const Exponent &cutoff)
{
    const Mode m = s.mode();
    if (x.mode() != m) {
        throw DomainError("cannot mix lc and hahn values");
    }
    if (x.is_zero()) {
        return s.node().coeff(0, cutoff).clipped(cutoff);
    }
    if (auto end = s.node().support_end(); end && x.is_exact()) {
        KPoly p = ps_partial_sum(s, *end > 0 ? *end - 1 : 0);
        if (std::all_of(p.begin(), p.end(), [](const LcNumber &c) { return c.is_exact(); })) {
            return kpoly::eval(m, p, x);
        }
    }
    const Exponent v = x.valuation();
    std::size_t N = ps_tail_index(s, v, cutoff);
    if (auto end = s.node().support_end()) {
        N = std::min(N, *end);
    }
    if (N > max_terms()) {
        throw ResourceError("evaluation needs " + std::to_string(N) + " terms, exceeding LCIVT_MAX_TERMS");
    }
    std::optional<Exponent> minvb;
    for (std::size_t n = 0; n < N; ++n) {
        minvb = min_opt(minvb, s.node().val_bound(n));
    }
    LcNumber acc = LcNumber(m).truncated(cutoff);
    if (!minvb) {
        return acc;
    }
    Exponent lx = cutoff - *minvb;
    if (v.sign() < 0) {
        lx = lx - times(N, v);
    }
    const bool mono = is_monomial(x);
    LcNumber xp = lc_const(m, 1);
    for (std::size_t n = 0; n < N; ++n) {
        if (n > 0) {
            xp = mono ? xp * x : lc_mul_trunc(xp, x, lx);
        }
        if (!s.node().val_bound(n)) {
            continue;
        }
        LcNumber a = s.node().coeff(n, cutoff - times(n, v));
        if (a.is_zero()) {
            continue;
        }
        acc += lc_mul_trunc(a, xp, cutoff);
    }
    return acc.truncated(cutoff);
}

PSeries ps_transform_interval(const PSeries &s, const LcNumber &a, const LcNumber &b)
{
    if (lc_compare(a, b) >= 0) {
        throw DomainError("interval endpoints must satisfy a < b");
    }
    LcNumber h = b - a;
    LcNumber k = a + a - b;
    if (k.is_zero() && lc_compare(h, lc_const(s.mode(), 1)) == 0) {
        return s;
    }
    return ps_linear_sub(h, k, s);
}

NormalizedSeries ps_normalize(const PSeries &s, std::optional<std::size_t> degree_cap, const Exponent &cutoff,
                              const std::string &origin)
{
    if (cutoff.sign() <= 0) {
        throw DomainError("normalization cutoff must be positive");
    }
    const Mode m = s.mode();
    const Exponent zero = Exponent::zero(m);
    auto V0 = ps_min_weighted(s, 0, zero);
    if (!V0) {
        throw DomainError("cannot normalize the zero series");
    }
    auto cap_for = [&](const Exponent &v) {
        std::size_t n = ps_tail_index(s, zero, v + cutoff);
        if (auto end = s.node().support_end()) {
            n = std::min(n, *end);
        }
        return n > 0 ? n - 1 : 0;
    };
    std::size_t cap = degree_cap ? *degree_cap : cap_for(*V0);

    // Pass 1: locate the least valuation v* among the coefficients.
    std::vector<LcNumber> t;
    std::optional<Exponent> vstar;
    Exponent probe = *V0;
    for (int round = 0; round < 4 && !vstar; ++round) {
        probe = probe + cutoff;
        t.clear();
        for (std::size_t n = 0; n <= cap; ++n) {
            t.push_back(s.node().coeff(n, probe));
            if (!t.back().empty()) {
                vstar = min_opt(vstar, t.back().valuation());
            }
        }
    }
    if (!vstar) {
        throw DomainError("all coefficients vanish below the cutoff");
    }
    if (!degree_cap) {
        std::size_t need = cap_for(*vstar);
        if (need > cap) {
            for (std::size_t n = cap + 1; n <= need; ++n) {
                t.push_back(s.node().coeff(n, probe));
                if (!t.back().empty() && t.back().valuation() < *vstar) {
                    throw DomainError("valuation minimum moved beyond the certified degree cap");
                }
            }
            cap = need;
        }
    } else {
        std::size_t need = ps_tail_index(s, zero, *vstar + cutoff);
        if (need > cap + 1 && !(s.node().support_end() && *s.node().support_end() <= cap + 1)) {
            throw ConvergenceError("N not determined below degree_cap " + std::to_string(cap) +
                                   ": coefficients beyond it are not certified negligible");
        }
    }
    if (cap > max_terms()) {
        throw ResourceError("degree cap exceeds LCIVT_MAX_TERMS");
    }

    // Pass 2: coefficients to the precision the normalized series needs.
    const Exponent need = *vstar + cutoff;
    if (probe < need) {
        for (std::size_t n = 0; n <= cap; ++n) {
            t[n] = s.node().coeff(n, need);
        }
    } else {
        for (auto &x : t) {
            x = x.clipped(need);
        }
    }
    std::size_t N = 0;
    for (std::size_t n = 0; n <= cap; ++n) {
        if (!t[n].empty() && t[n].valuation() == *vstar) {
            N = n;
        }
    }
    LcNumber d = lc_invert(t[N], cutoff - *vstar);

    NormalizedSeries out;
    out.series = ps_scale(d, s);
    out.coeffs.reserve(cap + 1);
    for (std::size_t n = 0; n <= cap; ++n) {
        out.coeffs.push_back(n == N ? lc_const(m, 1) : lc_mul_trunc(d, t[n], cutoff));
    }
    out.N = N;
    out.d = d;
    out.cutoff = cutoff;
    out.degree_cap = cap;
    out.origin = origin;
    return out;
}

} // namespace lcivt
