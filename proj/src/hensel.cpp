#include <lcivt/errors.hpp>
#include <lcivt/hensel.hpp>

namespace lcivt
{

namespace
{


KPoly cut_degree(KPoly p, std::size_t cap)
{
    if (p.size() > cap + 1) {
        p.resize(cap + 1);
    }
    kpoly::trim(p);
    return p;
}

KPoly trunc_poly(const KPoly &p, const Exponent &c)
{
    KPoly out;
    out.reserve(p.size());
    for (const auto &x : p) {
        // Keep exact values exact when nothing would be dropped.
        bool beyond = !x.empty() && !(x.terms().back().first < c);
        out.push_back(x.is_exact() && !beyond ? x : x.truncated(c));
    }
    kpoly::trim(out);
    return out;
}

std::optional<Exponent> residual_valuation(const KPoly &R)
{
    std::optional<Exponent> v;
    for (const auto &x : R) {
        if (!x.empty() && (!v || x.valuation() < *v)) {
            v = x.valuation();
        }
    }
    return v;
}

// Coefficients of R at exactly exponent g, as a residue-field polynomial.
AlgPoly slice(const KPoly &R, const Exponent &g)
{
    AlgPoly out;
    out.reserve(R.size());
    for (const auto &x : R) {
        out.push_back(x.empty() ? RealAlgebraic(0) : x.coeff(g));
    }
    while (!out.empty() && out.back().is_zero()) {
        out.pop_back();
    }
    return out;
}

std::pair<AlgPoly, AlgPoly> alg_divrem_monic(AlgPoly a, const AlgPoly &b)
{
    const std::size_t nb = b.size();
    if (a.size() < nb) {
        return {{}, a};
    }
    AlgPoly q(a.size() - nb + 1);
    for (std::size_t i = a.size(); i-- >= nb;) {
        RealAlgebraic c = a[i];
        q[i - nb + 1] = c;
        if (c.is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < nb; ++j) {
            a[i - nb + 1 + j] -= c * b[j];
        }
    }
    a.resize(nb - 1);
    return {q, a};
}

KPoly lift_slice(Mode m, const AlgPoly &p, const Exponent &g)
{
    KPoly out;
    for (const auto &c : p) {
        out.push_back(c.is_zero() ? LcNumber(m) : LcNumber(m, g, c));
    }
    kpoly::trim(out);
    return out;
}

} // namespace

LcNumber n_poly_root(const KPoly &P, const Exponent &cutoff, std::size_t max_iterations)
{
    if (P.size() < 2) {
        throw DomainError("N-polynomial must have degree at least 1");
    }
    const Mode m = P[1].mode();
    if (!in_M(P[0])) {
        throw DomainError("N-polynomial constant coefficient must lie in M");
    }
    if (in_M(P[1])) {
        throw DomainError("N-polynomial linear coefficient must be a unit");
    }
    for (const auto &c : P) {
        if (!in_A(c)) {
            throw DomainError("N-polynomial coefficients must lie in A");
        }
    }
    if (!P[0].empty()) {
        if (!min_multiple_at_least(P[0].valuation(), cutoff)) {
            throw ConvergenceError("Newton iteration cannot reach cutoff " + cutoff.to_string() +
                                   " from residual valuation " + P[0].valuation().to_string());
        }
    }
    const KPoly dP = kpoly::derivative(P);
    LcNumber x(m);
    for (std::size_t it = 0; it < max_iterations; ++it) {
        LcNumber px = kpoly::eval(m, P, x, cutoff);
        if (px.empty()) {
            if (px.is_exact() || kpoly::eval(m, P, x).is_zero()) {
                return x;
            }
            return x.truncated(cutoff);
        }
        LcNumber dpx = kpoly::eval(m, dP, x, cutoff);
        x = x - lc_mul_trunc(px, lc_invert(dpx, cutoff), cutoff);
    }
    throw ResourceError("Newton iteration did not reach the cutoff within the iteration cap");
}

KPoly factor_residual(const NormalizedSeries &ns, const Factorization &f)
{
    KPoly S = cut_degree(ns.coeffs, f.degree_cap);
    return cut_degree(kpoly::sub(S, kpoly::mul(f.P, f.B)), f.degree_cap);
}

Factorization weierstrass_factor(const NormalizedSeries &ns, std::optional<std::size_t> degree_cap,
                                 const Exponent &cutoff, LiftSchedule schedule)
{
    const std::size_t N = ns.N;
    if (ns.coeffs.size() <= N) {
        throw DomainError("normalized series is missing its index-N coefficient");
    }
    const Mode m = ns.coeffs[N].mode();
    std::size_t cap = degree_cap ? *degree_cap : ns.degree_cap;
    if (cap < N) {
        throw DomainError("degree_cap must be at least N");
    }
    if (ns.cutoff < cutoff) {
        throw DomainError("normalized series is only known below " + ns.cutoff.to_string());
    }
    // Coefficients of S beyond the cap must be negligible at this cutoff.
    auto tail = ns.series.node().tail_index(Exponent::zero(m), cutoff);
    if (!tail || *tail > cap + 1) {
        bool finite = ns.series.node().support_end() && *ns.series.node().support_end() <= cap + 1;
        if (!finite) {
            throw ConvergenceError("cutoff certificate fails at degree_cap " + std::to_string(cap));
        }
    }
    KPoly S = ns.coeffs;
    for (std::size_t n = S.size(); n <= cap; ++n) {
        S.push_back(ns.series.node().coeff(n, ns.cutoff));
    }
    S = trunc_poly(cut_degree(S, cap), cutoff);

    Factorization f;
    f.N = N;
    f.degree_cap = cap;
    AlgPoly p0;
    for (std::size_t i = 0; i <= N; ++i) {
        p0.push_back(lc_standard_part(ns.coeffs[i]));
    }
    f.P = kpoly::from_alg(m, p0);
    f.B = KPoly{lc_const(m, 1)};
    KPoly R = trunc_poly(cut_degree(kpoly::sub(S, f.P), cap), cutoff);

    const std::size_t max_steps = std::min<std::size_t>(max_terms(), 100000);
    while (true) {
        auto g = residual_valuation(R);
        if (!g) {
            break;
        }
        if (g->sign() <= 0) {
            throw DomainError("residual is not in M; input is not normalized");
        }
        if (++f.steps > max_steps) {
            throw ResourceError("lifting did not reach the cutoff within the step cap");
        }
        KPoly dP, dB;
        if (schedule == LiftSchedule::slice) {
            auto [q, r] = alg_divrem_monic(slice(R, *g), p0);
            dB = lift_slice(m, q, *g);
            dP = lift_slice(m, r, *g);
        } else {
            auto qr = kpoly::divrem_monic(R, f.P);
            dB = trunc_poly(qr.first, cutoff);
            dP = trunc_poly(qr.second, cutoff);
        }
        KPoly corr = kpoly::add(kpoly::add(kpoly::mul(f.P, dB, cutoff), kpoly::mul(f.B, dP, cutoff)),
                                kpoly::mul(dP, dB, cutoff));
        R = trunc_poly(cut_degree(kpoly::sub(R, corr), cap), cutoff);
        f.P = kpoly::add(f.P, dP);
        f.B = cut_degree(kpoly::add(f.B, dB), cap - N);
        if (schedule == LiftSchedule::bulk) {
            // keep P exactly monic
            f.P.resize(N + 1, LcNumber(m));
            f.P[N] = lc_const(m, 1);
        }
    }
    bool exact = std::all_of(R.begin(), R.end(), [](const LcNumber &x) { return x.is_exact(); }) &&
                 std::all_of(S.begin(), S.end(), [](const LcNumber &x) { return x.is_exact(); });
    if (!exact) {
        f.P.resize(N + 1, LcNumber(m));
        for (std::size_t i = 0; i < N; ++i) {
            f.P[i] = f.P[i].truncated(cutoff);
        }
        f.P[N] = lc_const(m, 1);
        for (auto &b : f.B) {
            b = b.truncated(cutoff);
        }
    }
    f.achieved_cutoff = cutoff;
    return f;
}

} // namespace lcivt
