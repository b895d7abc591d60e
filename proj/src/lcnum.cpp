#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>

#include <lcivt/errors.hpp>
#include <lcivt/lcnum.hpp>

namespace lcivt
{

namespace
{

struct ExpLess {
    bool operator()(const Exponent &a, const Exponent &b) const { return compare(a, b) < 0; }
};

using TermMap = std::map<Exponent, RealAlgebraic, ExpLess>;

std::optional<Exponent> min_cutoff(const std::optional<Exponent> &a, const std::optional<Exponent> &b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return std::min(*a, *b);
}

void check_size(std::size_t n)
{
    if (n > max_terms()) {
        throw ResourceError("term count " + std::to_string(n) + " exceeds LCIVT_MAX_TERMS");
    }
}

Mode join(const LcNumber &a, const LcNumber &b)
{
    if (a.mode() != b.mode()) {
        throw DomainError("cannot mix lc and hahn numbers");
    }
    return a.mode();
}

std::string exponent_literal(const Rational &q)
{
    if (q == 1) {
        return "";
    }
    if (q.get_den() == 1 && q > 0) {
        return "^" + to_string(q);
    }
    return "^(" + to_string(q) + ")";
}

std::string monomial_literal(const Exponent &e)
{
    if (e.mode() == Mode::lc) {
        return "eps" + exponent_literal(e.value());
    }
    std::string out;
    for (const auto &[n, v] : e.entries()) {
        if (!out.empty()) {
            out += "*";
        }
        out += "eps[" + std::to_string(n) + "]" + exponent_literal(v);
    }
    return out;
}

} // namespace

std::size_t max_terms()
{
    static const std::size_t cap = [] {
        const char *env = std::getenv("LCIVT_MAX_TERMS");
        if (env && *env) {
            try {
                return static_cast<std::size_t>(std::stoull(env));
            } catch (...) {
            }
        }
        return static_cast<std::size_t>(1000000);
    }();
    return cap;
}

LcNumber::LcNumber(Mode m, const RealAlgebraic &c) : mode_(m)
{
    if (!c.is_zero()) {
        terms_.emplace_back(Exponent::zero(m), c);
    }
}

LcNumber::LcNumber(Mode m, const Exponent &e, const RealAlgebraic &c) : mode_(m)
{
    if (e.mode() != m && !e.is_zero()) {
        throw DomainError("exponent mode does not match number mode");
    }
    if (!c.is_zero()) {
        terms_.emplace_back(e.is_zero() ? Exponent::zero(m) : e, c);
    }
}

LcNumber LcNumber::make(Mode m, std::vector<Term> terms, std::optional<Exponent> cutoff)
{
    TermMap acc;
    for (auto &[e, c] : terms) {
        if (e.mode() != m && !e.is_zero()) {
            throw DomainError("cannot mix lc and hahn terms");
        }
        if (cutoff && e >= *cutoff) {
            continue;
        }
        Exponent key = e.is_zero() ? Exponent::zero(m) : e;
        auto it = acc.find(key);
        if (it == acc.end()) {
            acc.emplace(std::move(key), c);
        } else {
            it->second += c;
        }
    }
    LcNumber out(m);
    out.cutoff_ = cutoff;
    for (auto &[e, c] : acc) {
        if (!c.is_zero()) {
            out.terms_.emplace_back(e, c);
        }
    }
    check_size(out.terms_.size());
    return out;
}

Exponent LcNumber::valuation() const
{
    if (!terms_.empty()) {
        return terms_.front().first;
    }
    if (cutoff_) {
        throw UndecidableError("valuation undecidable: no term below cutoff " + cutoff_->to_string());
    }
    throw DomainError("valuation of zero");
}

std::optional<Exponent> LcNumber::valuation_bound() const
{
    if (!terms_.empty()) {
        return terms_.front().first;
    }
    return cutoff_;
}

const RealAlgebraic &LcNumber::leading_coeff() const
{
    valuation();
    return terms_.front().second;
}

RealAlgebraic LcNumber::coeff(const Exponent &e) const
{
    if (cutoff_ && e >= *cutoff_) {
        throw UndecidableError("coefficient at " + e.to_string() + " lies beyond cutoff " + cutoff_->to_string());
    }
    for (const auto &[x, c] : terms_) {
        if (x == e) {
            return c;
        }
    }
    return RealAlgebraic(0);
}

int LcNumber::sign() const
{
    if (!terms_.empty()) {
        return terms_.front().second.sign();
    }
    if (cutoff_) {
        throw UndecidableError("sign undecidable below cutoff " + cutoff_->to_string());
    }
    return 0;
}

LcNumber LcNumber::truncated(const Exponent &c) const
{
    LcNumber out(mode_);
    out.cutoff_ = min_cutoff(cutoff_, c);
    for (const auto &t : terms_) {
        if (t.first >= *out.cutoff_) {
            break;
        }
        out.terms_.push_back(t);
    }
    return out;
}

LcNumber LcNumber::clipped(const Exponent &c) const
{
    if (!cutoff_ && (terms_.empty() || terms_.back().first < c)) {
        return *this;
    }
    return truncated(c);
}

LcNumber LcNumber::operator-() const
{
    LcNumber out = *this;
    for (auto &t : out.terms_) {
        t.second = -t.second;
    }
    return out;
}

LcNumber operator+(const LcNumber &a, const LcNumber &b)
{
    Mode m = join(a, b);
    LcNumber out(m);
    out.cutoff_ = min_cutoff(a.cutoff_, b.cutoff_);
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    auto push = [&](const Exponent &e, const RealAlgebraic &c) {
        if (out.cutoff_ && e >= *out.cutoff_) {
            return;
        }
        if (!c.is_zero()) {
            out.terms_.emplace_back(e, c);
        }
    };
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
            push(ia->first, ia->second);
            ++ia;
        } else if (ia == a.terms_.end() || ib->first < ia->first) {
            push(ib->first, ib->second);
            ++ib;
        } else {
            push(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return out;
}

LcNumber operator-(const LcNumber &a, const LcNumber &b) { return a + (-b); }

LcNumber lc_mul_impl(const LcNumber &a, const LcNumber &b, const std::optional<Exponent> &limit)
{
    Mode m = join(a, b);
    // a = A + O(ca), b = B + O(cb): error terms are A*O(cb), B*O(ca), O(ca+cb).
    std::optional<Exponent> cut;
    if (a.cutoff()) {
        if (!b.empty()) {
            cut = min_cutoff(cut, b.valuation() + *a.cutoff());
        }
        if (b.cutoff()) {
            cut = min_cutoff(cut, *a.cutoff() + *b.cutoff());
        }
    }
    if (b.cutoff() && !a.empty()) {
        cut = min_cutoff(cut, a.valuation() + *b.cutoff());
    }
    if (a.is_zero() || b.is_zero()) {
        return LcNumber(m);
    }
    const bool exact_inputs = !cut;
    bool dropped = false;
    cut = min_cutoff(cut, limit);
    TermMap acc;
    for (const auto &[ea, ca] : a.terms()) {
        for (const auto &[eb, cb] : b.terms()) {
            Exponent e = ea + eb;
            if (cut && e >= *cut) {
                dropped = true;
                break;
            }
            RealAlgebraic c = ca * cb;
            auto it = acc.find(e);
            if (it == acc.end()) {
                acc.emplace(std::move(e), std::move(c));
            } else {
                it->second += c;
            }
        }
        check_size(acc.size());
    }
    std::vector<LcNumber::Term> terms(acc.begin(), acc.end());
    if (exact_inputs && !dropped) {
        // Nothing was discarded, so the product is exact.
        cut.reset();
    }
    return LcNumber::make(m, std::move(terms), cut);
}

LcNumber operator*(const LcNumber &a, const LcNumber &b) { return lc_mul_impl(a, b, std::nullopt); }

LcNumber lc_mul_trunc(const LcNumber &a, const LcNumber &b, const Exponent &limit) { return lc_mul_impl(a, b, limit); }

LcNumber lc_monomial(const Exponent &e, const RealAlgebraic &c) { return LcNumber(e.mode(), e, c); }

LcNumber lc_const(Mode m, const Rational &q) { return LcNumber(m, RealAlgebraic(q)); }

LcNumber lc_make(Mode m, std::vector<LcNumber::Term> terms) { return LcNumber::make(m, std::move(terms)); }

int lc_compare(const LcNumber &a, const LcNumber &b)
{
    LcNumber d = a - b;
    if (d.empty() && d.cutoff()) {
        throw UndecidableError("comparison undecidable at current truncation (cutoff " + d.cutoff()->to_string() +
                               ")");
    }
    return d.sign();
}

LcNumber lc_arith(LcOp op, const LcNumber &a, const LcNumber &b)
{
    switch (op) {
    case LcOp::add:
        return a + b;
    case LcOp::sub:
        return a - b;
    case LcOp::mul:
        return a * b;
    }
    throw DomainError("unknown operation");
}

LcNumber lc_scale(const LcNumber &a, const RealAlgebraic &c)
{
    if (c.is_zero()) {
        return LcNumber(a.mode());
    }
    std::vector<LcNumber::Term> terms = a.terms();
    for (auto &t : terms) {
        t.second = t.second * c;
    }
    return LcNumber::make(a.mode(), std::move(terms), a.cutoff());
}

LcNumber lc_shift(const LcNumber &a, const Exponent &e)
{
    std::vector<LcNumber::Term> terms = a.terms();
    for (auto &t : terms) {
        t.first = t.first + e;
    }
    std::optional<Exponent> cut;
    if (a.cutoff()) {
        cut = *a.cutoff() + e;
    }
    return LcNumber::make(a.mode(), std::move(terms), cut);
}

LcNumber lc_pow(const LcNumber &a, unsigned long n, const std::optional<Exponent> &limit)
{
    if (a.terms().size() == 1 && a.is_exact()) {
        const auto &[e, c] = a.terms().front();
        LcNumber m = lc_monomial(Rational(static_cast<long>(n)) * e, c.pow(n));
        if (m.mode() != a.mode()) {
            m = LcNumber(a.mode(), c.pow(n));
        }
        return limit ? m.truncated(*limit) : m;
    }
    std::optional<Exponent> lim = limit;
    if (lim && !a.empty() && a.valuation().sign() < 0) {
        // Truncated factors get multiplied by parts of valuation down to n*v.
        lim = *lim - Rational(static_cast<unsigned long>(n)) * a.valuation();
    }
    const std::optional<Exponent> &limit_ = lim;
    LcNumber result = lc_const(a.mode(), 1), base = a;
    while (n) {
        if (n & 1) {
            result = limit_ ? lc_mul_trunc(result, base, *limit_) : result * base;
        }
        n >>= 1;
        if (n) {
            base = limit_ ? lc_mul_trunc(base, base, *limit_) : base * base;
        }
    }
    return limit ? result.truncated(*limit) : result;
}

namespace
{

// Sum of coeff_k u^k for k = 0..K with exponents kept below limit, where K is
// the number of steps needed for val(u^k) to reach limit.
LcNumber power_series(const LcNumber &u, const Exponent &limit, const std::function<Rational(unsigned long)> &coeff)
{
    Mode m = u.mode();
    LcNumber sum = lc_const(m, coeff(0)).truncated(limit);
    if (u.is_zero()) {
        return sum;
    }
    Exponent w = u.valuation_bound().value();
    auto steps = min_multiple_at_least(w, limit);
    if (!steps) {
        throw ConvergenceError("series in an element of valuation " + w.to_string() +
                               " cannot reach cutoff " + limit.to_string() + " (no topologically nilpotent element)");
    }
    if (*steps > max_terms()) {
        throw ResourceError("series needs " + std::to_string(*steps) + " terms, exceeding LCIVT_MAX_TERMS");
    }
    LcNumber p = lc_const(m, 1);
    for (unsigned long k = 1; k < *steps; ++k) {
        p = lc_mul_trunc(p, u, limit);
        Rational c = coeff(k);
        if (c != 0) {
            sum = sum + lc_scale(p, RealAlgebraic(c));
        }
    }
    // Contributions from k >= steps have valuation >= limit.
    return sum.truncated(limit);
}

} // namespace

LcNumber lc_invert(const LcNumber &a, const Exponent &cutoff)
{
    if (a.is_zero()) {
        throw DomainError("inverse of zero");
    }
    Exponent v = a.valuation();
    RealAlgebraic c = a.leading_coeff();
    Exponent target = cutoff;
    if (a.cutoff()) {
        target = std::min(target, *a.cutoff() - Rational(2) * v);
    }
    RealAlgebraic cinv = c.inverse();
    LcNumber lead = lc_monomial(-v, cinv);
    if (lead.mode() != a.mode()) {
        lead = LcNumber(a.mode(), cinv);
    }
    if (a.terms().size() == 1 && a.is_exact()) {
        return lead;
    }
    // a = c eps^v (1 + u)
    LcNumber u = lc_scale(lc_shift(a, -v), cinv) - lc_const(a.mode(), 1);
    LcNumber s = power_series(u, target + v, [](unsigned long k) { return Rational(k % 2 ? -1 : 1); });
    return (s * lead).truncated(target);
}

LcNumber lc_div(const LcNumber &a, const LcNumber &b, const Exponent &cutoff)
{
    if (b.is_zero()) {
        throw DomainError("division by zero");
    }
    if (a.is_zero()) {
        return LcNumber(a.mode());
    }
    // Precision of 1/b is needed down to cutoff - val(a).
    Exponent va = a.valuation_bound().value();
    return lc_mul_trunc(a, lc_invert(b, cutoff - va), cutoff);
}

LcNumber lc_nth_root(const LcNumber &a, unsigned long n, const Exponent &cutoff)
{
    if (n == 0) {
        throw DomainError("zeroth root");
    }
    if (a.is_zero()) {
        return a;
    }
    int s = a.sign();
    if (s < 0) {
        if (n % 2 == 0) {
            throw DomainError("even root of a negative number");
        }
        return -lc_nth_root(-a, n, cutoff);
    }
    if (n == 1) {
        return a.truncated(cutoff);
    }
    Exponent v = a.valuation();
    RealAlgebraic c = a.leading_coeff();
    Rational inv_n(1, static_cast<long>(n));
    Exponent rv = inv_n * v;
    Exponent target = cutoff;
    if (a.cutoff()) {
        target = std::min(target, *a.cutoff() - Rational(static_cast<long>(n - 1), static_cast<long>(n)) * v);
    }
    RealAlgebraic rc = c.nth_root(n);
    LcNumber lead = rv.is_zero() ? LcNumber(a.mode(), rc) : lc_monomial(rv, rc);
    if (a.terms().size() == 1 && a.is_exact()) {
        return lead;
    }
    LcNumber u = lc_scale(lc_shift(a, -v), c.inverse()) - lc_const(a.mode(), 1);
    // binom(1/n, k)
    std::vector<Rational> bin{1};
    auto coeff = [&](unsigned long k) {
        while (bin.size() <= k) {
            unsigned long j = bin.size();
            bin.push_back(bin.back() * (inv_n - Rational(static_cast<long>(j - 1))) / Rational(static_cast<long>(j)));
        }
        return bin[k];
    };
    LcNumber s_ = power_series(u, target - rv, coeff);
    return (s_ * lead).truncated(target);
}

Exponent lc_valuation(const LcNumber &a) { return a.valuation(); }

RealAlgebraic lc_standard_part(const LcNumber &a)
{
    Exponent zero = Exponent::zero(a.mode());
    if (!a.empty() && a.valuation() < zero) {
        throw DomainError("standard part of an infinitely large number");
    }
    return a.coeff(zero);
}

bool in_A(const LcNumber &a)
{
    auto v = a.valuation_bound();
    if (!v) {
        return true;
    }
    if (a.empty() && v->sign() < 0) {
        throw UndecidableError("membership in A undecidable below cutoff");
    }
    return v->sign() >= 0;
}

bool in_M(const LcNumber &a)
{
    auto v = a.valuation_bound();
    if (!v) {
        return true;
    }
    if (a.empty() && v->sign() <= 0) {
        throw UndecidableError("membership in M undecidable below cutoff");
    }
    return v->sign() > 0;
}

const char *magnitude_name(Magnitude m)
{
    switch (m) {
    case Magnitude::zero:
        return "zero";
    case Magnitude::infinitesimal:
        return "infinitesimal";
    case Magnitude::finite_appreciable:
        return "finite_appreciable";
    case Magnitude::infinitely_large:
        return "infinitely_large";
    }
    return "";
}

Classification lc_classify(const LcNumber &a)
{
    if (a.is_zero()) {
        return {Magnitude::zero, false};
    }
    int s = a.valuation().sign();
    if (s > 0) {
        return {Magnitude::infinitesimal, a.mode() == Mode::lc};
    }
    return {s == 0 ? Magnitude::finite_appreciable : Magnitude::infinitely_large, false};
}

std::string LcNumber::to_string() const
{
    std::string out;
    for (const auto &[e, c] : terms_) {
        std::string coeff;
        bool negative = false;
        if (c.is_rational()) {
            Rational q = c.rational();
            negative = q < 0;
            coeff = lcivt::to_string(Rational(abs(q)));
        } else {
            coeff = c.to_string();
        }
        std::string body;
        if (e.is_zero()) {
            body = coeff;
        } else if (coeff == "1") {
            body = monomial_literal(e);
        } else {
            body = coeff + "*" + monomial_literal(e);
        }
        if (out.empty()) {
            out = (negative ? "-" : "") + body;
        } else {
            out += (negative ? " - " : " + ") + body;
        }
    }
    if (cutoff_) {
        std::string o = "O(" + (cutoff_->is_zero() ? std::string("1") : monomial_literal(*cutoff_)) + ")";
        out = out.empty() ? o : out + " + " + o;
    }
    return out.empty() ? "0" : out;
}

} // namespace lcivt
