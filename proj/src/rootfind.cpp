#include <algorithm>

#include <lcivt/errors.hpp>
#include <lcivt/rootfind.hpp>

namespace lcivt
{

namespace
{

struct Branch {
    LcNumber root;
    unsigned multiplicity;
    bool unresolved;
};

Exponent scaled(const Exponent &e, long num, long den)
{
    Rational q(num, den);
    q.canonicalize();
    return q * e;
}

bool vanishes(const LcNumber &x, const Exponent &c)
{
    if (x.is_zero()) {
        return true;
    }
    return x.truncated(c).empty() && (x.is_exact() || *x.cutoff() >= c);
}

KPoly clip_poly(const KPoly &p, const Exponent &c)
{
    KPoly out;
    out.reserve(p.size());
    for (const auto &x : p) {
        out.push_back(x.clipped(c));
    }
    kpoly::trim(out);
    return out;
}

struct Segment {
    std::size_t i, j;
    Exponent mu; // valuation of the roots on this segment
    bool known;  // every point on or below the segment is known
};

// Lower convex hull of the points (k, val q_k), k = 0..mult. A coefficient
// with no terms below its cutoff c enters as the point (k, c).
std::vector<Segment> newton_polygon(const KPoly &Q, unsigned mult)
{
    std::vector<std::optional<Exponent>> v(mult + 1);
    std::vector<bool> known(mult + 1);
    for (unsigned k = 0; k <= mult; ++k) {
        known[k] = !Q[k].empty();
        if (known[k]) {
            v[k] = Q[k].valuation();
        } else if (Q[k].cutoff()) {
            v[k] = *Q[k].cutoff();
        }
    }
    std::vector<Segment> segs;
    std::size_t i = 0;
    while (i < mult) {
        std::optional<std::size_t> best;
        Exponent mu;
        for (std::size_t j = i + 1; j <= mult; ++j) {
            if (!v[j]) {
                continue;
            }
            Exponent s = scaled(*v[i] - *v[j], 1, static_cast<long>(j - i));
            if (!best || s >= mu) {
                best = j;
                mu = s;
            }
        }
        bool ok = known[i] && known[*best];
        for (std::size_t k = i + 1; k < *best; ++k) {
            if (!known[k] && v[k] && *v[k] <= *v[i] - scaled(mu, static_cast<long>(k - i), 1)) {
                ok = false;
            }
        }
        segs.push_back({i, *best, mu, ok});
        i = *best;
    }
    return segs;
}

// Roots w in M of Q, where Q over A has Q(0) of order `mult` mod M.
// The root of the original polynomial is prefix + eps^sigma * w.
void expand(Mode m, KPoly Q, unsigned mult, const LcNumber &prefix, const Exponent &sigma, const Exponent &cutoff,
            std::vector<Branch> &out)
{
    unsigned z = 0;
    while (z < mult && z < Q.size() && Q[z].is_zero()) {
        ++z;
    }
    if (z > 0) {
        out.push_back({prefix, z, false});
        Q.erase(Q.begin(), Q.begin() + z);
        mult -= z;
    }
    if (mult == 0) {
        return;
    }
    if (sigma >= cutoff) {
        out.push_back({prefix.truncated(cutoff), mult, mult > 1});
        return;
    }
    if (mult == 1) {
        LcNumber w = n_poly_root(Q, cutoff - sigma);
        out.push_back({prefix + lc_shift(w, sigma), 1, false});
        return;
    }
    while (Q.size() <= mult) {
        Q.push_back(LcNumber(m).truncated(cutoff));
    }
    const auto segs = newton_polygon(Q, mult);
    for (std::size_t si = 0; si < segs.size(); ++si) {
        const Segment &sg = segs[si];
        if (!sg.known) {
            // Merge with neighbours sharing an unknown vertex; the roots have valuation at least the last slope.
            std::size_t sj = si;
            while (sj + 1 < segs.size() && !segs[sj + 1].known) {
                ++sj;
            }
            const Exponent mu = segs[sj].mu;
            const unsigned count = static_cast<unsigned>(segs[sj].j - sg.i);
            Exponent at = sigma + mu;
            out.push_back({prefix.truncated(at < cutoff ? at : cutoff), count, count > 1});
            si = sj;
            continue;
        }
        const Exponent vi = Q[sg.i].valuation();
        AlgPoly chr(sg.j - sg.i + 1);
        for (std::size_t k = sg.i; k <= sg.j; ++k) {
            if (Q[k].empty()) {
                continue;
            }
            Exponent line = vi - scaled(sg.mu, static_cast<long>(k - sg.i), 1);
            if (Q[k].valuation() == line) {
                chr[k - sg.i] = Q[k].coeff(line);
            }
        }
        const Exponent L = vi + scaled(sg.mu, static_cast<long>(sg.i), 1);
        const Exponent sigma2 = sigma + sg.mu;
        for (const auto &r : isolate_real_roots(chr)) {
            if (r.value.is_zero()) {
                continue;
            }
            Exponent prec = scaled(cutoff - sigma2, r.multiplicity, 1);
            if (prec.sign() <= 0) {
                prec = Exponent::zero(m);
            }
            KPoly scaledQ;
            scaledQ.reserve(Q.size());
            for (std::size_t k = 0; k < Q.size(); ++k) {
                scaledQ.push_back(lc_shift(Q[k], scaled(sg.mu, static_cast<long>(k), 1) - L).clipped(prec));
            }
            KPoly shifted = clip_poly(
                kpoly::compose_linear(m, scaledQ, LcNumber(m, RealAlgebraic(1)), LcNumber(m, r.value), prec), prec);
            LcNumber prefix2 = prefix + LcNumber(m, sigma2, r.value);
            expand(m, std::move(shifted), r.multiplicity, prefix2, sigma2, cutoff, out);
        }
    }
}

int compare_or_zero(const LcNumber &a, const LcNumber &b)
{
    try {
        return lc_compare(a, b);
    } catch (const UndecidableError &) {
        return 0;
    }
}

Exponent residual_of(const PSeries &s, const LcNumber &x, const Exponent &cutoff)
{
    LcNumber r = ps_eval(s, x, cutoff);
    if (r.is_zero()) {
        return cutoff;
    }
    if (r.empty()) {
        return *r.cutoff();
    }
    return r.valuation();
}

// For a polynomial with exact coefficients, the truncated root with its
// cutoff removed when that value is an exact root.
LcNumber exact_if_root(const PSeries &s, const LcNumber &x)
{
    if (x.is_exact() || !s.node().support_end()) {
        return x;
    }
    LcNumber y = LcNumber::make(s.mode(), x.terms());
    return ps_eval(s, y, *x.cutoff()).is_zero() ? y : x;
}

std::vector<RootReport> monic_roots(const KPoly &P, const std::optional<std::pair<LcNumber, LcNumber>> &range,
                                    const Exponent &cutoff, bool check_range);

struct Pipeline {
    LcNumber h, k;
    NormalizedSeries ns;
    Factorization f;
    std::vector<RootReport> zroots;
};

Pipeline run_pipeline(const PSeries &s, const LcNumber &a, const LcNumber &b, const Exponent &w,
                      std::optional<std::size_t> cap)
{
    const Mode m = s.mode();
    Pipeline p;
    p.h = b - a;
    p.k = lc_scale(a, RealAlgebraic(2)) - b;
    PSeries T = ps_transform_interval(s, a, b);
    p.ns = ps_normalize(T, cap, w, "transform");
    p.f = weierstrass_factor(p.ns, std::nullopt, w);
    p.zroots = monic_roots(p.f.P, std::make_pair(lc_const(m, 1), lc_const(m, 2)), w, false);
    return p;
}

Certificate certificate_of(const Pipeline &p)
{
    Certificate c;
    c.N = p.ns.N;
    c.d = p.ns.d;
    c.P = p.f.P;
    c.B = p.f.B;
    c.achieved_cutoff = p.f.achieved_cutoff;
    c.degree_cap = p.f.degree_cap;
    return c;
}

void order_endpoints(LcNumber &a, LcNumber &b)
{
    int c = lc_compare(a, b);
    if (c == 0) {
        throw DomainError("empty interval");
    }
    if (c > 0) {
        std::swap(a, b);
    }
}

Exponent working_cutoff(const LcNumber &h, const Exponent &cutoff)
{
    Exponent vh = h.valuation();
    return vh.sign() < 0 ? cutoff - vh : cutoff;
}

std::optional<Exponent> distance_valuation(const LcNumber &x, const LcNumber &target)
{
    LcNumber d = x - target;
    if (d.empty()) {
        return std::nullopt;
    }
    return d.valuation();
}

void check_window(const RootReport &target, const std::pair<LcNumber, LcNumber> &window)
{
    if (compare_or_zero(window.first, target.root) > 0 || compare_or_zero(target.root, window.second) > 0) {
        throw DomainError("window excludes target");
    }
}

bool better(const std::optional<Exponent> &a, const std::optional<Exponent> &b)
{
    if (!a) {
        return b.has_value();
    }
    return b && *a > *b;
}

void mark_monotone(TrackResult &res)
{
    std::optional<std::optional<Exponent>> prev;
    for (const auto &rec : res.records) {
        if (rec.items.empty()) {
            continue;
        }
        std::optional<Exponent> best = rec.items.front().distance_valuation;
        for (const auto &it : rec.items) {
            if (better(it.distance_valuation, best)) {
                best = it.distance_valuation;
            }
        }
        if (prev && better(*prev, best)) {
            res.nondecreasing = false;
        }
        prev = best;
    }
}

PSeries nth_derivative(PSeries s, unsigned k)
{
    for (unsigned i = 0; i < k; ++i) {
        s = ps_derivative(s);
    }
    return s;
}

} // namespace

Exponent default_sign_cutoff(Mode m) { return m == Mode::lc ? Exponent(1) : Exponent::basis(1); }

Exponent default_root_cutoff(Mode m) { return m == Mode::lc ? Exponent(50) : scaled(Exponent::basis(1), 50, 1); }

int ps_sign_at(const PSeries &s, const LcNumber &x, const Exponent &start)
{
    Exponent c = start;
    Exponent step = start.sign() > 0 ? start : default_sign_cutoff(s.mode());
    for (int it = 0; it < 8; ++it) {
        LcNumber r = ps_eval(s, x, c);
        if (r.is_zero()) {
            return 0;
        }
        if (!r.empty()) {
            return r.sign();
        }
        c = c + step;
        step = step + step;
    }
    throw UndecidableError("sign of S(x) not determined up to " + c.to_string());
}

const char *track_kind_name(TrackKind k)
{
    switch (k) {
    case TrackKind::zero:
        return "zero";
    case TrackKind::min:
        return "min";
    case TrackKind::max:
        return "max";
    }
    return "";
}

namespace
{

// With check_range false the range only prunes residue roots.
std::vector<RootReport> monic_roots(const KPoly &P, const std::optional<std::pair<LcNumber, LcNumber>> &range,
                                    const Exponent &cutoff, bool check_range)
{
    std::vector<RootReport> out;
    if (kpoly::degree(P) <= 0) {
        return out;
    }
    const Mode m = P.front().mode();
    if (!(P.back() - lc_const(m, 1)).empty() || !in_A(P.back())) {
        throw DomainError("polynomial is not monic");
    }
    std::optional<RealAlgebraic> slo, shi;
    if (range) {
        if (in_A(range->first)) {
            slo = lc_standard_part(range->first);
        }
        if (in_A(range->second)) {
            shi = lc_standard_part(range->second);
        }
    }
    std::vector<Branch> branches;
    for (const auto &r0 : isolate_real_roots(kpoly::standard_part(P))) {
        if ((slo && r0.value < *slo) || (shi && r0.value > *shi)) {
            continue;
        }
        LcNumber base(m, r0.value);
        Exponent prec = scaled(cutoff, r0.multiplicity, 1);
        KPoly Q = clip_poly(kpoly::compose_linear(m, P, lc_const(m, 1), base, prec), prec);
        expand(m, std::move(Q), r0.multiplicity, base, Exponent::zero(m), cutoff, branches);
    }
    for (auto &br : branches) {
        if (range && check_range) {
            if (lc_compare(br.root, range->first) < 0 || lc_compare(br.root, range->second) > 0) {
                continue;
            }
        }
        RootReport rep;
        rep.root = br.root;
        rep.multiplicity = br.multiplicity;
        rep.unresolved = br.unresolved;
        LcNumber res = kpoly::eval(m, P, br.root, cutoff);
        rep.residual_valuation = res.is_zero() ? cutoff : res.empty() ? *res.cutoff() : res.valuation();
        if (range) {
            rep.a = range->first;
            rep.b = range->second;
        }
        rep.certificate.P = P;
        rep.certificate.N = static_cast<std::size_t>(kpoly::degree(P));
        out.push_back(std::move(rep));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RootReport &x, const RootReport &y) { return compare_or_zero(x.root, y.root) < 0; });
    return out;
}

} // namespace

std::vector<RootReport> monic_real_roots(const KPoly &P, const std::optional<std::pair<LcNumber, LcNumber>> &range,
                                         const Exponent &cutoff)
{
    return monic_roots(P, range, cutoff, true);
}

RootReport ivt_root(const PSeries &s, LcNumber a, LcNumber b, const Exponent &cutoff)
{
    order_endpoints(a, b);
    const Mode m = s.mode();
    const int sa = ps_sign_at(s, a, default_sign_cutoff(m));
    const int sb = ps_sign_at(s, b, default_sign_cutoff(m));
    if (sa * sb != -1) {
        throw DomainError("no sign change on the interval");
    }
    Exponent w = working_cutoff(b - a, cutoff);
    for (int attempt = 0; attempt < 6; ++attempt) {
        Pipeline p = run_pipeline(s, a, b, w, std::nullopt);
        std::optional<Exponent> worst;
        for (const auto &zr : p.zroots) {
            if (zr.multiplicity % 2 == 0) {
                continue;
            }
            LcNumber x = exact_if_root(s, p.h * zr.root + p.k);
            if (compare_or_zero(a, x) >= 0 || compare_or_zero(x, b) >= 0) {
                continue;
            }
            Exponent rv = residual_of(s, x, cutoff);
            if (rv >= cutoff) {
                RootReport rep;
                rep.root = x;
                rep.multiplicity = zr.multiplicity;
                rep.residual_valuation = rv;
                rep.a = a;
                rep.b = b;
                rep.unresolved = zr.unresolved;
                rep.certificate = certificate_of(p);
                rep.certificate.sign_a = sa;
                rep.certificate.sign_b = sb;
                return rep;
            }
            if (!worst || rv < *worst) {
                worst = rv;
            }
        }
        Exponent bump = worst ? cutoff - *worst : cutoff;
        if (bump.sign() <= 0) {
            bump = cutoff;
        }
        w = w + bump;
    }
    throw ConvergenceError("root not certified at cutoff " + cutoff.to_string());
}

std::vector<RootReport> count_zeros(const PSeries &s, LcNumber a, LcNumber b, const Exponent &cutoff,
                                    std::optional<std::size_t> degree_cap)
{
    order_endpoints(a, b);
    Pipeline p = run_pipeline(s, a, b, working_cutoff(b - a, cutoff), degree_cap);
    std::vector<RootReport> out;
    for (const auto &zr : p.zroots) {
        RootReport rep = zr;
        rep.root = exact_if_root(s, p.h * zr.root + p.k);
        if (lc_compare(rep.root, a) < 0 || lc_compare(rep.root, b) > 0) {
            continue;
        }
        rep.residual_valuation = residual_of(s, rep.root, cutoff);
        rep.a = a;
        rep.b = b;
        rep.certificate = certificate_of(p);
        out.push_back(std::move(rep));
    }
    return out;
}

unsigned multiplicity_at(const PSeries &s, const LcNumber &c, const Exponent &cutoff)
{
    const Mode m = s.mode();
    if (!vanishes(ps_eval(s, c, cutoff), cutoff)) {
        throw DomainError("c is not a certified root");
    }
    LcNumber half = c.empty() ? lc_const(m, Rational(1, 2))
                              : lc_monomial(c.valuation(), RealAlgebraic(c.leading_coeff().sign() < 0 ? -1 : 1) *
                                                               c.leading_coeff() * RealAlgebraic(Rational(1, 2)));
    std::vector<RootReport> zs = count_zeros(s, c - half, c + half, cutoff);
    const RootReport *best = nullptr;
    std::optional<Exponent> bd;
    for (const auto &z : zs) {
        std::optional<Exponent> d = distance_valuation(z.root, c);
        if (!best || better(d, bd)) {
            best = &z;
            bd = d;
        }
    }
    if (!best) {
        throw DomainError("c is not a certified root");
    }
    const unsigned mult = best->multiplicity;
    LcNumber top = ps_eval(nth_derivative(s, mult), c, cutoff);
    if (top.empty()) {
        throw Error("multiplicity cross-check failed: derivative of order " + std::to_string(mult) + " vanishes");
    }
    const Exponent vs = top.valuation();
    for (unsigned k = 1; k < mult; ++k) {
        Exponent tau = vs + scaled(cutoff - vs, static_cast<long>(mult - k), static_cast<long>(mult));
        if (!vanishes(ps_eval(nth_derivative(s, k), c, cutoff), tau)) {
            throw Error("multiplicity cross-check failed: derivative of order " + std::to_string(k) +
                        " does not vanish");
        }
    }
    return mult;
}

TrackResult track_partial_sum_zeros(const PSeries &s, const RootReport &target, const std::vector<std::size_t> &n_list,
                                    const std::pair<LcNumber, LcNumber> &window, const Exponent &cutoff)
{
    if (target.multiplicity % 2 == 0) {
        throw DomainError("target is not of odd order");
    }
    check_window(target, window);
    const Mode m = s.mode();
    TrackResult res;
    for (std::size_t n : n_list) {
        TrackRecord rec;
        rec.n = n;
        KPoly Sn = ps_partial_sum(s, n);
        if (kpoly::degree(Sn) > 0) {
            for (const auto &z : count_zeros(ps_poly(m, Sn), window.first, window.second, cutoff)) {
                rec.items.push_back({TrackKind::zero, z.root, distance_valuation(z.root, target.root)});
            }
        }
        res.records.push_back(std::move(rec));
    }
    mark_monotone(res);
    return res;
}

TrackResult track_extremes(const PSeries &s, const RootReport &target, const std::vector<std::size_t> &n_list,
                           const std::pair<LcNumber, LcNumber> &window, const Exponent &cutoff)
{
    if (target.multiplicity % 2 != 0) {
        throw DomainError("target is not of even order");
    }
    check_window(target, window);
    const Mode m = s.mode();
    TrackResult res;
    for (std::size_t n : n_list) {
        TrackRecord rec;
        rec.n = n;
        KPoly Sn = ps_partial_sum(s, n);
        KPoly D = kpoly::derivative(Sn);
        if (kpoly::degree(D) > 0) {
            for (const auto &r : count_zeros(ps_poly(m, D), window.first, window.second, cutoff)) {
                const unsigned k = r.multiplicity + 1;
                if (k % 2 != 0) {
                    continue;
                }
                KPoly Dk = Sn;
                for (unsigned i = 0; i < k; ++i) {
                    Dk = kpoly::derivative(Dk);
                }
                LcNumber v = kpoly::eval(m, Dk, r.root, cutoff);
                if (v.empty()) {
                    continue;
                }
                TrackKind kind = v.sign() > 0 ? TrackKind::min : TrackKind::max;
                rec.items.push_back({kind, r.root, distance_valuation(r.root, target.root)});
            }
        }
        res.records.push_back(std::move(rec));
    }
    mark_monotone(res);
    return res;
}

} // namespace lcivt
