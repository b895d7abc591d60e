#include <algorithm>
#include <functional>
#include <mutex>

#include <lcivt/errors.hpp>
#include <lcivt/factor.hpp>
#include <lcivt/realalg.hpp>

namespace lcivt
{

struct RealAlgebraic::Irrational {
    Irrational(IntPoly p, const Rational &l, const Rational &h)
        : poly(std::move(p)), sturm(poly), lo(l), hi(h), sign_lo(qpoly::sign_at(poly, l))
    {
    }

    std::pair<Rational, Rational> snapshot() const
    {
        std::lock_guard<std::mutex> g(mu);
        return {lo, hi};
    }

    void bisect() const
    {
        std::lock_guard<std::mutex> g(mu);
        Rational mid = (lo + hi) / 2;
        if (qpoly::sign_at(poly, mid) == sign_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Sign of (root - q); never zero since the root is irrational.
    int compare(const Rational &q) const
    {
        std::lock_guard<std::mutex> g(mu);
        if (q <= lo) {
            return 1;
        }
        if (q >= hi) {
            return -1;
        }
        if (qpoly::sign_at(poly, q) == sign_lo) {
            lo = q;
            return 1;
        }
        hi = q;
        return -1;
    }

    const IntPoly poly;
    const SturmChain sturm;
    Rational canon_lo, canon_hi;
    mutable std::mutex mu;
    mutable Rational lo, hi;
    const int sign_lo;
};

namespace
{

IntPoly linear(const Rational &q)
{
    return IntPoly{Integer(-q.get_num()), q.get_den()};
}

// Pushes the isolating interval of x off zero and returns it.
std::pair<Rational, Rational> nonzero_interval(const RealAlgebraic &x)
{
    x.compare(Rational(0));
    auto iv = x.interval();
    while (iv.first == 0 || iv.second == 0) {
        x.refine((iv.second - iv.first) / 2);
        iv = x.interval();
    }
    return iv;
}

// Resultant with a fixed formal degree of b, so that values sampled at
// different parameters come from one polynomial identity.
Rational formal_resultant(const QPoly &a, const QPoly &b, int formal_deg_b)
{
    if (b.empty()) {
        return 0;
    }
    Rational r = qpoly::resultant(a, b);
    int drop = formal_deg_b - qpoly::degree(b);
    if (drop > 0) {
        r *= pow(a.back(), static_cast<unsigned long>(drop));
    }
    return r;
}

QPoly raw_shift(QPoly q, const Rational &c)
{
    const std::size_t n = q.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = n - 1; j > i; --j) {
            q[j - 1] += c * q[j];
        }
    }
    return q;
}

} // namespace

RealAlgebraic RealAlgebraic::make(const IntPoly &f, const Rational &lo, const Rational &hi)
{
    if (f.size() == 2) {
        Rational q(-f[0], f[1]);
        q.canonicalize();
        return RealAlgebraic(q);
    }
    auto rep = std::make_shared<Irrational>(f, lo, hi);
    // Canonical interval: the one produced by isolating the minimal polynomial from scratch.
    for (const auto &iv : isolate_squarefree(f)) {
        Rational l = std::max(lo, iv.lo), h = std::min(hi, iv.hi);
        if (l < h && rep->sturm.count(l, h) >= 1) {
            rep->canon_lo = iv.lo;
            rep->canon_hi = iv.hi;
            rep->lo = l;
            rep->hi = h;
            break;
        }
    }
    return RealAlgebraic(std::move(rep));
}

RealAlgebraic RealAlgebraic::from_root(const IntPoly &poly, const Rational &lo, const Rational &hi)
{
    IntPoly p = qpoly::primitive(poly);
    if (p.size() <= 1) {
        throw DomainError("defining polynomial must be nonconstant");
    }
    if (!(lo < hi)) {
        throw DomainError("isolating interval must satisfy lo < hi");
    }
    IntPoly sf = qpoly::squarefree_part(p);
    SturmChain sc(sf);
    int n = sc.count(lo, hi) - (qpoly::sign_at(sf, hi) == 0 ? 1 : 0);
    if (n != 1) {
        throw DomainError("interval (" + lo.get_str() + ", " + hi.get_str() + ") contains " + std::to_string(n) +
                          " roots of " + qpoly::to_string(p));
    }
    for (const auto &f : irreducible_factors(sf)) {
        if (f.size() == 2) {
            Rational q(-f[0], f[1]);
            q.canonicalize();
            if (lo < q && q < hi) {
                return RealAlgebraic(q);
            }
            continue;
        }
        SturmChain fc(f);
        if (fc.count(lo, hi) == 1) {
            return make(f, lo, hi);
        }
    }
    throw DomainError("root not found among irreducible factors");
}

IntPoly RealAlgebraic::defining_poly() const
{
    if (is_rational()) {
        return linear(rational());
    }
    return irr().poly;
}

std::pair<Rational, Rational> RealAlgebraic::interval() const
{
    if (is_rational()) {
        return {rational(), rational()};
    }
    return irr().snapshot();
}

void RealAlgebraic::refine(const Rational &width) const
{
    if (is_rational()) {
        return;
    }
    while (true) {
        auto [lo, hi] = irr().snapshot();
        if (hi - lo < width) {
            return;
        }
        irr().bisect();
    }
}

int RealAlgebraic::sign() const
{
    if (is_rational()) {
        return sgn(rational());
    }
    return irr().compare(Rational(0));
}

int RealAlgebraic::compare(const Rational &q) const
{
    if (is_rational()) {
        return cmp(rational(), q) < 0 ? -1 : (rational() == q ? 0 : 1);
    }
    return irr().compare(q);
}

int RealAlgebraic::compare(const RealAlgebraic &other) const
{
    if (other.is_rational()) {
        return compare(other.rational());
    }
    if (is_rational()) {
        return -other.compare(rational());
    }
    const Irrational &a = irr();
    const Irrational &b = other.irr();
    if (&a == &b) {
        return 0;
    }
    if (a.poly == b.poly) {
        auto [alo, ahi] = a.snapshot();
        auto [blo, bhi] = b.snapshot();
        Rational l = std::max(alo, blo), h = std::min(ahi, bhi);
        if (l < h && a.sturm.count(l, h) >= 1) {
            return 0;
        }
    }
    while (true) {
        auto [alo, ahi] = a.snapshot();
        auto [blo, bhi] = b.snapshot();
        if (ahi <= blo) {
            return -1;
        }
        if (bhi <= alo) {
            return 1;
        }
        a.bisect();
        b.bisect();
    }
}

RealAlgebraic RealAlgebraic::operator-() const
{
    if (is_rational()) {
        return RealAlgebraic(Rational(-rational()));
    }
    IntPoly p = irr().poly;
    for (std::size_t i = 1; i < p.size(); i += 2) {
        p[i] = -p[i];
    }
    auto [lo, hi] = irr().snapshot();
    return make(qpoly::primitive(p), -hi, -lo);
}

RealAlgebraic RealAlgebraic::inverse() const
{
    if (is_rational()) {
        if (rational() == 0) {
            throw DomainError("division by zero");
        }
        return RealAlgebraic(Rational(1 / rational()));
    }
    auto [lo, hi] = nonzero_interval(*this);
    return make(qpoly::reverse(irr().poly), 1 / hi, 1 / lo);
}

RealAlgebraic RealAlgebraic::pow(unsigned long n) const
{
    if (is_rational()) {
        return RealAlgebraic(lcivt::pow(rational(), n));
    }
    RealAlgebraic result(1), base = *this;
    while (n) {
        if (n & 1) {
            result = result * base;
        }
        n >>= 1;
        if (n) {
            base = base * base;
        }
    }
    return result;
}

RealAlgebraic RealAlgebraic::nth_root(unsigned long n) const
{
    if (n == 0) {
        throw DomainError("zeroth root");
    }
    if (n == 1) {
        return *this;
    }
    const int s = sign();
    if (s < 0 && n % 2 == 0) {
        throw DomainError("even root of a negative number");
    }
    if (s == 0) {
        return RealAlgebraic(0);
    }
    IntPoly base;
    if (is_rational()) {
        Rational r;
        if (exact_root(rational(), n, r)) {
            return RealAlgebraic(r);
        }
        base = linear(rational());
    } else {
        base = irr().poly;
    }
    // Candidates are the real roots of base(x^n) with the right sign.
    IntPoly composed((base.size() - 1) * n + 1);
    for (std::size_t i = 0; i < base.size(); ++i) {
        composed[i * n] = base[i];
    }
    for (const auto &root : isolate_real_roots(qpoly::to_q(composed))) {
        if (root.value.sign() != s) {
            continue;
        }
        if (root.value.pow(n).compare(*this) == 0) {
            return root.value;
        }
    }
    throw DomainError("n-th root not found");
}

RealAlgebraic combine(int op, const RealAlgebraic &a, const RealAlgebraic &b)
{
    // op 0: a + b, op 1: a * b; both irrational.
    const QPoly p = qpoly::to_q(a.irr().poly);
    const IntPoly &q = b.irr().poly;
    const int m = qpoly::degree(q);
    const int D = qpoly::degree(p) * m;
    std::vector<Rational> xs, ys;
    for (int x0 = 0; x0 <= D; ++x0) {
        QPoly inner(q.size());
        if (op == 0) {
            // q(x0 - y) as a polynomial in y
            QPoly neg(q.size());
            for (std::size_t i = 0; i < q.size(); ++i) {
                neg[i] = (i % 2 == 0) ? Rational(q[i]) : Rational(-q[i]);
            }
            inner = raw_shift(neg, Rational(-x0));
        } else {
            // y^m q(x0 / y)
            Rational xp = 1;
            for (int i = 0; i <= m; ++i) {
                inner[m - i] = xp * q[i];
                xp *= x0;
            }
        }
        qpoly::trim(inner);
        xs.emplace_back(x0);
        ys.push_back(formal_resultant(p, inner, m));
    }
    IntPoly r = qpoly::primitive(qpoly::interpolate(xs, ys));
    std::vector<IntPoly> factors = irreducible_factors(r);
    std::vector<SturmChain> chains;
    chains.reserve(factors.size());
    for (const auto &f : factors) {
        chains.emplace_back(f);
    }
    while (true) {
        auto [alo, ahi] = a.interval();
        auto [blo, bhi] = b.interval();
        Rational lo, hi;
        if (op == 0) {
            lo = alo + blo;
            hi = ahi + bhi;
        } else {
            Rational c[4] = {alo * blo, alo * bhi, ahi * blo, ahi * bhi};
            lo = *std::min_element(c, c + 4);
            hi = *std::max_element(c, c + 4);
        }
        int total = 0;
        std::size_t winner = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            int c = chains[i].count_closed(lo, hi);
            if (c > 0) {
                total += c;
                winner = i;
            }
        }
        if (total == 1) {
            const IntPoly &f = factors[winner];
            if (f.size() == 2) {
                Rational v(-f[0], f[1]);
                v.canonicalize();
                return RealAlgebraic(v);
            }
            return RealAlgebraic::make(f, lo, hi);
        }
        a.refine((ahi - alo) / 2);
        b.refine((bhi - blo) / 2);
    }
}

RealAlgebraic operator+(const RealAlgebraic &a, const RealAlgebraic &b)
{
    if (a.is_rational() && b.is_rational()) {
        return RealAlgebraic(Rational(a.rational() + b.rational()));
    }
    if (b.is_rational() || a.is_rational()) {
        const RealAlgebraic &x = a.is_rational() ? b : a;
        const Rational &q = a.is_rational() ? a.rational() : b.rational();
        if (q == 0) {
            return x;
        }
        auto [lo, hi] = x.interval();
        return RealAlgebraic::make(qpoly::shift(x.irr().poly, -q), lo + q, hi + q);
    }
    return combine(0, a, b);
}

RealAlgebraic operator-(const RealAlgebraic &a, const RealAlgebraic &b)
{
    if (a.is_rational() && b.is_rational()) {
        return RealAlgebraic(Rational(a.rational() - b.rational()));
    }
    return a + (-b);
}

RealAlgebraic operator*(const RealAlgebraic &a, const RealAlgebraic &b)
{
    if (a.is_rational() && b.is_rational()) {
        return RealAlgebraic(Rational(a.rational() * b.rational()));
    }
    if (b.is_rational() || a.is_rational()) {
        const RealAlgebraic &x = a.is_rational() ? b : a;
        const Rational &q = a.is_rational() ? a.rational() : b.rational();
        if (q == 0) {
            return RealAlgebraic(0);
        }
        if (q == 1) {
            return x;
        }
        auto [lo, hi] = x.interval();
        Rational l = lo * q, h = hi * q;
        if (q < 0) {
            std::swap(l, h);
        }
        return RealAlgebraic::make(qpoly::scale_var(x.irr().poly, 1 / q), l, h);
    }
    return combine(1, a, b);
}

RealAlgebraic operator/(const RealAlgebraic &a, const RealAlgebraic &b)
{
    if (b.is_zero()) {
        throw DomainError("division by zero");
    }
    if (a.is_rational() && b.is_rational()) {
        return RealAlgebraic(Rational(a.rational() / b.rational()));
    }
    return a * b.inverse();
}

std::string RealAlgebraic::to_string() const
{
    if (is_rational()) {
        return rational().get_str();
    }
    const Irrational &r = irr();
    return "root(" + qpoly::to_string(r.poly) + ", " + r.canon_lo.get_str() + ", " + r.canon_hi.get_str() + ")";
}

namespace
{

bool in_range(const RealAlgebraic &x, const RationalRange &range)
{
    if (!range) {
        return true;
    }
    return x.compare(range->first) >= 0 && x.compare(range->second) <= 0;
}

void sort_roots(std::vector<AlgRoot> &roots)
{
    std::sort(roots.begin(), roots.end(),
              [](const AlgRoot &a, const AlgRoot &b) { return a.value.compare(b.value) < 0; });
}

} // namespace

std::vector<AlgRoot> isolate_real_roots(const QPoly &p0, const RationalRange &range)
{
    QPoly p = p0;
    qpoly::trim(p);
    if (p.empty()) {
        throw DomainError("indeterminate roots");
    }
    std::vector<AlgRoot> out;
    for (const auto &[part, mult] : qpoly::squarefree_decomposition(qpoly::primitive(p))) {
        for (const auto &f : irreducible_factors(part)) {
            if (f.size() == 2) {
                Rational q(-f[0], f[1]);
                q.canonicalize();
                RealAlgebraic v(q);
                if (in_range(v, range)) {
                    out.push_back({v, mult});
                }
                continue;
            }
            for (const auto &iv : isolate_squarefree(f)) {
                RealAlgebraic v = RealAlgebraic::make(f, iv.lo, iv.hi);
                if (in_range(v, range)) {
                    out.push_back({v, mult});
                }
            }
        }
    }
    sort_roots(out);
    return out;
}

QPoly alg_norm(const AlgPoly &p0)
{
    AlgPoly p = p0;
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
    if (p.empty()) {
        throw DomainError("indeterminate roots");
    }
    struct Gen {
        QPoly minpoly;
        std::size_t power;
    };
    std::vector<Gen> gens;
    std::vector<Rational> rational_part(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_rational()) {
            rational_part[i] = p[i].rational();
        } else {
            gens.push_back({qpoly::to_q(p[i].defining_poly()), i});
        }
    }
    const std::size_t r = gens.size();
    // deg_after[j] bounds the degree in t_j of the partially eliminated form.
    std::vector<int> deg_after(r + 1, 1);
    for (std::size_t j = r; j-- > 0;) {
        deg_after[j] = (j + 1 < r) ? deg_after[j + 1] * qpoly::degree(gens[j + 1].minpoly) : 1;
    }
    int total_deg = static_cast<int>(p.size()) - 1;
    for (const auto &g : gens) {
        total_deg *= qpoly::degree(g.minpoly);
    }

    std::vector<Rational> ts(r);
    std::function<Rational(std::size_t, const Rational &)> eliminate = [&](std::size_t j,
                                                                            const Rational &x0) -> Rational {
        if (j == r) {
            Rational acc = 0, xp = 1;
            for (std::size_t i = 0; i < p.size(); ++i) {
                acc += rational_part[i] * xp;
                xp *= x0;
            }
            for (std::size_t g = 0; g < r; ++g) {
                acc += ts[g] * lcivt::pow(x0, static_cast<unsigned long>(gens[g].power));
            }
            return acc;
        }
        const int d = deg_after[j];
        std::vector<Rational> ss, vs;
        for (int s = 0; s <= d; ++s) {
            ts[j] = s;
            ss.emplace_back(s);
            vs.push_back(eliminate(j + 1, x0));
        }
        QPoly u = qpoly::interpolate(ss, vs);
        return formal_resultant(gens[j].minpoly, u, d);
    };

    std::vector<Rational> xs, ys;
    for (int x0 = 0; x0 <= total_deg; ++x0) {
        xs.emplace_back(x0);
        ys.push_back(eliminate(0, Rational(x0)));
    }
    return qpoly::interpolate(xs, ys);
}

std::vector<AlgRoot> isolate_real_roots(const AlgPoly &p0, const RationalRange &range)
{
    AlgPoly p = p0;
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
    if (p.empty()) {
        throw DomainError("indeterminate roots");
    }
    bool all_rational = std::all_of(p.begin(), p.end(), [](const RealAlgebraic &c) { return c.is_rational(); });
    if (all_rational) {
        QPoly q;
        q.reserve(p.size());
        for (const auto &c : p) {
            q.push_back(c.rational());
        }
        return isolate_real_roots(q, range);
    }
    std::vector<AlgRoot> out;
    for (const auto &cand : isolate_real_roots(alg_norm(p), range)) {
        AlgPoly d = p;
        unsigned mult = 0;
        while (!d.empty() && alg_eval(d, cand.value).is_zero()) {
            ++mult;
            d = alg_derivative(d);
        }
        if (mult > 0) {
            out.push_back({cand.value, mult});
        }
    }
    return out;
}

int alg_compare(const RealAlgebraic &a, const RealAlgebraic &b) { return a.compare(b); }

RealAlgebraic alg_arith(ArithOp op, const RealAlgebraic &a, const RealAlgebraic &b)
{
    switch (op) {
    case ArithOp::add:
        return a + b;
    case ArithOp::sub:
        return a - b;
    case ArithOp::mul:
        return a * b;
    case ArithOp::div:
        return a / b;
    }
    throw DomainError("unknown arithmetic operation");
}

RealAlgebraic alg_eval(const AlgPoly &p, const RealAlgebraic &x)
{
    RealAlgebraic acc(0);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * x + p[i];
    }
    return acc;
}

int alg_sign_at(const AlgPoly &p, const RealAlgebraic &x) { return alg_eval(p, x).sign(); }

AlgPoly alg_derivative(const AlgPoly &p)
{
    if (p.size() <= 1) {
        return {};
    }
    AlgPoly d;
    d.reserve(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) {
        d.push_back(p[i] * RealAlgebraic(Rational(static_cast<long>(i))));
    }
    while (!d.empty() && d.back().is_zero()) {
        d.pop_back();
    }
    return d;
}

} // namespace lcivt
