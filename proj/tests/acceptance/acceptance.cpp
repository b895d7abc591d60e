// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include <lcivt/errors.hpp>
#include <lcivt/rootfind.hpp>

#include "gen.hpp"

using namespace lcivt;
using Clock = std::chrono::steady_clock;

namespace
{

LcNumber eps(const Rational &e, const Rational &c = 1) { return lc_monomial(Exponent(e), RealAlgebraic(c)); }
LcNumber num(const Rational &c) { return lc_const(Mode::lc, c); }

bool vanishes(const LcNumber &x, const Exponent &c)
{
    return x.is_zero() || (x.truncated(c).empty() && (x.is_exact() || *x.cutoff() >= c));
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

PSeries nilpotent() { return ps_term_rule(Mode::lc, true, 1, QPoly{0, 0, 1}); }

PSeries double_zero_t()
{
    KPoly f = {num(2), -(eps(1, 2) + eps(2))};
    return ps_ratfun(Mode::lc, kpoly::mul({num(1), num(-2), num(1)}, f), {num(1), -eps(1)});
}

// Sturm count of distinct real roots in [a, b], on plain rationals.
using RPoly = std::vector<Rational>;

void rtrim(RPoly &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

RPoly rrem(RPoly a, const RPoly &b)
{
    while (a.size() >= b.size() && !a.empty()) {
        Rational q = a.back() / b.back();
        std::size_t sh = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[sh + i] -= q * b[i];
        }
        a.pop_back();
        rtrim(a);
    }
    return a;
}

Rational reval(const RPoly &p, const Rational &x)
{
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * x + p[i];
    }
    return acc;
}

int sign_changes(const std::vector<RPoly> &chain, const Rational &x)
{
    int changes = 0, last = 0;
    for (const auto &p : chain) {
        int s = sgn(reval(p, x));
        if (s != 0) {
            if (last != 0 && s != last) {
                ++changes;
            }
            last = s;
        }
    }
    return changes;
}

int sturm_count(RPoly p, const Rational &a, const Rational &b)
{
    rtrim(p);
    RPoly dp;
    for (std::size_t i = 1; i < p.size(); ++i) {
        dp.push_back(p[i] * static_cast<long>(i));
    }
    std::vector<RPoly> chain = {p, dp};
    while (chain.back().size() > 1) {
        RPoly r = rrem(chain[chain.size() - 2], chain.back());
        if (r.empty()) {
            break;
        }
        for (auto &c : r) {
            c = -c;
        }
        chain.push_back(r);
    }
    // Distinct roots in (a, b], plus a itself.
    return sign_changes(chain, a) - sign_changes(chain, b) + (reval(p, a) == 0 ? 1 : 0);
}

Outcome criterion1()
{
    auto t0 = Clock::now();
    auto s = nilpotent();
    std::string signs;
    bool ok = true;
    for (int l = 1; l <= 3; ++l) {
        int plus = ps_sign_at(s, eps(-4 * l), Exponent(1));
        int minus = ps_sign_at(s, eps(-4 * l - 2), Exponent(1));
        ok = ok && plus == 1 && minus == -1;
        signs += (plus > 0 ? "+" : "-");
        signs += (minus > 0 ? "+" : "-");
    }
    double t = seconds_since(t0);
    return {ok && t < 10, "signs " + signs + ", " + std::to_string(t) + " s"};
}

Outcome criterion2()
{
    auto t0 = Clock::now();
    auto s = nilpotent();
    const Exponent c(25);
    bool ok = true;
    std::string detail;
    for (int l = 1; l <= 2; ++l) {
        LcNumber a = eps(-4 * l), b = eps(-4 * l - 2);
        RootReport r = ivt_root(s, a, b, c);
        bool inside = lc_compare(a, r.root) < 0 && lc_compare(r.root, b) < 0;
        bool res = vanishes(ps_eval(s, r.root, c), c);
        ok = ok && inside && res;
        detail += "l=" + std::to_string(l) + " val(c)=" + r.root.valuation().to_string() + " ";
    }
    double t = seconds_since(t0);
    return {ok && t < 60, detail + std::to_string(t) + " s"};
}

Outcome criterion3()
{
    auto s = ps_term_rule_seq(true, 1);
    std::string signs;
    bool ok = true;
    for (unsigned h = 2; h <= 6; ++h) {
        LcNumber x = lc_monomial(-Exponent::basis(h));
        int sg = ps_sign_at(s, x, Exponent::basis(1));
        ok = ok && sg == (h % 2 == 0 ? 1 : -1);
        signs += sg > 0 ? "+" : "-";
    }
    return {ok, "signs " + signs};
}

struct FactorCase {
    NormalizedSeries ns;
    Factorization f;
};

std::vector<FactorCase> factor_cases;

Outcome criterion4()
{
    std::mt19937_64 rng(2024);
    const Exponent c(30);
    int failures = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> pickN(0, 4);
        const int N = pickN(rng);
        KPoly coeffs;
        for (int n = 0; n <= 12; ++n) {
            if (n < N) {
                coeffs.push_back(testgen::random_infinitesimal(rng, Mode::lc, 2) +
                                 num(n == 0 ? testgen::small_rational(rng) : Rational(0)));
            } else if (n == N) {
                coeffs.push_back(num(testgen::nonzero_rational(rng)));
            } else {
                coeffs.push_back(testgen::random_infinitesimal(rng, Mode::lc, 2));
            }
        }
        // Residues below N stay appreciable only at index 0, so S_N decides N.
        auto ns = ps_normalize(ps_poly(Mode::lc, coeffs), 12, c);
        auto f = weierstrass_factor(ns, 12, c);
        bool ok = true;
        for (const auto &x : factor_residual(ns, f)) {
            ok = ok && vanishes(x, c);
        }
        AlgPoly sp = kpoly::standard_part(f.P);
        KPoly SN(ns.coeffs.begin(), ns.coeffs.begin() + static_cast<long>(ns.N) + 1);
        AlgPoly ss = kpoly::standard_part(SN);
        ok = ok && sp.size() == ss.size();
        for (std::size_t i = 0; ok && i < sp.size(); ++i) {
            ok = sp[i] == ss[i];
        }
        failures += ok ? 0 : 1;
        factor_cases.push_back({ns, f});
    }
    return {failures == 0, std::to_string(failures) + " failures in 200"};
}

Outcome criterion5()
{
    int failures = 0;
    const std::vector<Rational> grid = {1, Rational(5, 4), Rational(3, 2), Rational(7, 4), 2};
    for (const auto &fc : factor_cases) {
        for (const auto &x : grid) {
            LcNumber bx = kpoly::eval(Mode::lc, fc.f.B, num(x), Exponent(30));
            if (!(lc_standard_part(bx) == RealAlgebraic(1))) {
                ++failures;
            }
        }
    }
    return {failures == 0 && !factor_cases.empty(),
            std::to_string(failures) + " failures in " + std::to_string(factor_cases.size() * grid.size())};
}

std::vector<std::pair<PSeries, RootReport>> planted_roots;

Outcome criterion6()
{
    std::mt19937_64 rng(606);
    const Exponent c(20);
    int failures = 0;
    auto t0 = Clock::now();
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> pick(1, 15), nterms(0, 4), ex(1, 6);
        std::vector<LcNumber::Term> ts = {{Exponent(0), RealAlgebraic(Rational(16 + pick(rng), 16))}};
        const int k = nterms(rng);
        for (int i = 0; i < k; ++i) {
            ts.emplace_back(Exponent(Rational(ex(rng), 2)), RealAlgebraic(testgen::nonzero_rational(rng)));
        }
        LcNumber cstar = LcNumber::make(Mode::lc, ts);
        LcNumber u1 = testgen::random_infinitesimal(rng, Mode::lc, 2);
        LcNumber u2 = testgen::random_infinitesimal(rng, Mode::lc, 2);
        auto s = ps_ratfun(Mode::lc, kpoly::mul({-cstar, num(1)}, {num(1), u1}), {num(1), -u2});
        try {
            RootReport r = ivt_root(s, num(1), num(2), c);
            if (!vanishes(r.root - cstar, c - Exponent(2))) {
                ++failures;
            }
            planted_roots.emplace_back(s, r);
        } catch (const Error &e) {
            std::printf("  criterion 6 trial %d: %s\n", trial, e.what());
            ++failures;
        }
    }
    return {failures == 0, std::to_string(failures) + " failures in 100, cutoff 20, " +
                               std::to_string(seconds_since(t0)) + " s"};
}

Outcome criterion7()
{
    auto t = double_zero_t();
    const Exponent c(50);
    const std::pair<LcNumber, LcNumber> window{num(Rational(3, 4)), num(Rational(5, 4))};
    RootReport target;
    target.root = num(1);
    target.multiplicity = 2;
    bool ok = true;
    std::string detail;
    std::optional<std::optional<Exponent>> prev;
    for (std::size_t n : {5, 10, 20}) {
        KPoly Tn = ps_partial_sum(t, n);
        bool no_change = true;
        for (int k = 0; k <= 16; ++k) {
            LcNumber v = kpoly::eval(Mode::lc, Tn, num(Rational(3, 4) + Rational(k, 32)), c);
            no_change = no_change && v.sign() > 0;
        }
        no_change = no_change && count_zeros(ps_poly(Mode::lc, Tn), window.first, window.second, c).empty();
        auto tr = track_extremes(t, target, {n}, window, c);
        std::optional<std::optional<Exponent>> best;
        for (const auto &it : tr.records[0].items) {
            bool positive = !it.distance_valuation || it.distance_valuation->sign() > 0;
            // The derivative of T_n vanishes there.
            bool root = vanishes(kpoly::eval(Mode::lc, kpoly::derivative(Tn), it.location, c),
                                 it.location.cutoff() ? *it.location.cutoff() - Exponent(static_cast<long>(n)) : c);
            if (it.kind == TrackKind::min && positive && root) {
                if (!best || (*best && (!it.distance_valuation || *it.distance_valuation > **best))) {
                    best = it.distance_valuation;
                }
            }
        }
        bool has = best.has_value();
        bool mono = true;
        if (has && prev) {
            // An empty value means agreement below the cutoff.
            mono = !*prev ? !*best : (!*best || **best >= **prev);
        }
        ok = ok && no_change && has && mono;
        detail += "n=" + std::to_string(n) + ":" + (no_change ? "nochange" : "CHANGE") + ",val=" +
                  (has ? (*best ? (*best)->to_string() : std::string("inf")) : std::string("none")) + " ";
        if (has) {
            prev = best;
        }
    }
    return {ok, detail};
}

Outcome criterion8()
{
    std::mt19937_64 rng(88);
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> deg(1, 5);
        const int d = deg(rng);
        RPoly p;
        for (int i = 0; i < d; ++i) {
            p.push_back(testgen::small_rational(rng, 4, 3));
        }
        p.push_back(testgen::nonzero_rational(rng, 4, 3));
        KPoly kp;
        QPoly qp;
        for (const auto &c : p) {
            kp.push_back(num(c));
            qp.push_back(c);
        }
        auto zs = count_zeros(ps_poly(Mode::lc, kp), num(0), num(1), Exponent(4));
        const int expected = sturm_count(p, 0, 1);
        auto iso = isolate_real_roots(qp, std::make_pair(Rational(0), Rational(1)));
        bool ok = static_cast<int>(zs.size()) == expected && iso.size() == zs.size();
        for (std::size_t i = 0; ok && i < zs.size(); ++i) {
            RealAlgebraic st = lc_standard_part(zs[i].root);
            auto iv = iso[i].value.interval();
            ok = st == iso[i].value && st >= RealAlgebraic(iv.first) && st <= RealAlgebraic(iv.second) &&
                 zs[i].multiplicity == iso[i].multiplicity;
        }
        failures += ok ? 0 : 1;
    }
    return {failures == 0, std::to_string(failures) + " failures in 100"};
}

using Law = std::function<bool(const LcNumber &, const LcNumber &, const LcNumber &)>;

bool zero_below(const LcNumber &x, const Exponent &c) { return vanishes(x, c); }

Outcome criterion9()
{
    int failures = 0, checks = 0;
    for (Mode m : {Mode::lc, Mode::hahn}) {
        // In HAHN mode only cutoffs at index 1 are reachable by powers of every positive element.
        const Exponent cut = m == Mode::lc ? Exponent(12) : Exponent::hahn({{1, 12}});
        const LcNumber one = lc_const(m, 1);
        auto in_a = [](const LcNumber &x) { return x.is_zero() || x.valuation().sign() >= 0; };
        std::vector<std::pair<std::string, Law>> laws = {
            {"add-comm", [](auto &a, auto &b, auto &) { return (a + b - (b + a)).is_zero(); }},
            {"add-assoc", [](auto &a, auto &b, auto &c) { return ((a + b) + c - (a + (b + c))).is_zero(); }},
            {"mul-comm", [](auto &a, auto &b, auto &) { return (a * b - b * a).is_zero(); }},
            {"mul-assoc", [](auto &a, auto &b, auto &c) { return ((a * b) * c - a * (b * c)).is_zero(); }},
            {"distrib", [](auto &a, auto &b, auto &c) { return (a * (b + c) - (a * b + a * c)).is_zero(); }},
            {"add-inverse", [](auto &a, auto &, auto &) { return (a + (-a)).is_zero(); }},
            {"mul-inverse",
             [&](auto &a, auto &, auto &) {
                 if (a.is_zero()) {
                     return true;
                 }
                 LcNumber inv = lc_invert(a, cut - a.valuation());
                 return zero_below(a * inv - one, cut);
             }},
            {"trichotomy",
             [](auto &a, auto &b, auto &) {
                 int s = lc_compare(a, b);
                 return (s == 0) == (a - b).is_zero() && s == -lc_compare(b, a);
             }},
            {"order-add",
             [](auto &a, auto &b, auto &c) { return lc_compare(a, b) == lc_compare(a + c, b + c); }},
            {"order-mul",
             [](auto &a, auto &b, auto &) {
                 if (a.is_zero() || b.is_zero()) {
                     return true;
                 }
                 return (a * b).sign() == a.sign() * b.sign();
             }},
            {"order-trans",
             [](auto &a, auto &b, auto &c) {
                 if (lc_compare(a, b) < 0 && lc_compare(b, c) < 0) {
                     return lc_compare(a, c) < 0;
                 }
                 return true;
             }},
            {"val-mul",
             [](auto &a, auto &b, auto &) {
                 if (a.is_zero() || b.is_zero()) {
                     return true;
                 }
                 return (a * b).valuation() == a.valuation() + b.valuation();
             }},
            {"val-add",
             [](auto &a, auto &b, auto &) {
                 if (a.is_zero() || b.is_zero() || (a + b).is_zero()) {
                     return true;
                 }
                 Exponent va = a.valuation(), vb = b.valuation(), vs = (a + b).valuation();
                 if (va != vb) {
                     return vs == (va < vb ? va : vb);
                 }
                 return vs >= va;
             }},
            {"st-morphism",
             [&](auto &a, auto &b, auto &) {
                 if (!in_a(a) || !in_a(b)) {
                     return true;
                 }
                 return lc_standard_part(a * b) == lc_standard_part(a) * lc_standard_part(b) &&
                        lc_standard_part(a + b) == lc_standard_part(a) + lc_standard_part(b);
             }},
        };
        std::mt19937_64 rng(m == Mode::lc ? 9 : 99);
        for (const auto &[name, law] : laws) {
            for (int i = 0; i < 1000; ++i) {
                LcNumber a = testgen::random_number(rng, m), b = testgen::random_number(rng, m),
                         c = testgen::random_number(rng, m);
                ++checks;
                bool ok = false;
                try {
                    ok = law(a, b, c);
                } catch (const Error &) {
                    ok = false;
                }
                if (!ok) {
                    ++failures;
                    if (failures <= 3) {
                        std::printf("  criterion 9 %s %s: a=%s b=%s c=%s\n", mode_name(m), name.c_str(),
                                    a.to_string().c_str(), b.to_string().c_str(), c.to_string().c_str());
                    }
                }
            }
        }
    }
    return {failures == 0, std::to_string(failures) + " failures in " + std::to_string(checks)};
}

Outcome criterion10()
{
    bool ok = multiplicity_at(double_zero_t(), num(1), Exponent(20)) == 2;
    int failures = 0;
    for (const auto &[s, r] : planted_roots) {
        try {
            if (multiplicity_at(s, r.root, Exponent(20)) != 1) {
                ++failures;
            }
        } catch (const Error &) {
            ++failures;
        }
    }
    return {ok && failures == 0 && !planted_roots.empty(),
            std::string("double zero ") + (ok ? "2" : "wrong") + ", " + std::to_string(failures) +
                " failures in " + std::to_string(planted_roots.size()) + " planted roots"};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"nilpotent sign table", criterion1},
        {"nilpotent ivt roots", criterion2},
        {"hahn sign table", criterion3},
        {"factorization residual", criterion4},
        {"unit positivity", criterion5},
        {"planted root recovery", criterion6},
        {"double zero", criterion7},
        {"residue-level oracle", criterion8},
        {"algebra laws", criterion9},
        {"multiplicity", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        std::printf("criterion %zu %s: %s (%s)\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
