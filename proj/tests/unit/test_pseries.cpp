#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lcivt/errors.hpp>
#include <lcivt/pseries.hpp>

#include "../support/gen.hpp"

using namespace lcivt;

namespace
{

LcNumber eps(const Rational &e, const Rational &c = 1) { return lc_monomial(Exponent(e), RealAlgebraic(c)); }
LcNumber num(const Rational &c) { return lc_const(Mode::lc, c); }

PSeries nilpotent() { return ps_term_rule(Mode::lc, true, 1, QPoly{0, 0, 1}); }

PSeries double_zero_f()
{
    // 2(1 - eps X) - eps^2 X over 1 - eps X
    return ps_ratfun(Mode::lc, {num(2), -(eps(1, 2) + eps(2))}, {num(1), -eps(1)});
}

bool same(const LcNumber &a, const LcNumber &b) { return (a - b).empty(); }

} // namespace

TEST_CASE("coefficients")
{
    auto f = double_zero_f();
    CHECK(ps_coeff(f, 0).to_string() == "2");
    for (std::size_t n = 1; n < 12; ++n) {
        CHECK(same(ps_coeff(f, n), -eps(Rational(static_cast<long>(n + 1)))));
        CHECK(*ps_val_bound(f, n) <= Exponent(Rational(static_cast<long>(n + 1))));
    }
    CHECK(ps_coeff(nilpotent(), 3).to_string() == "-eps^9");
    CHECK(ps_coeff(ps_poly(Mode::lc, {num(-1), num(1)}), 2).is_zero());
    CHECK(ps_coeff(ps_term_rule_seq(true, 1), 3).to_string() == "-eps[3]");
    CHECK(ps_coeff(ps_term_rule_seq(true, 1), 0).to_string() == "1");
}

TEST_CASE("partial sums")
{
    auto p = ps_partial_sum(nilpotent(), 2);
    REQUIRE(p.size() == 3);
    CHECK(p[0].to_string() == "1");
    CHECK(p[1].to_string() == "-eps");
    CHECK(p[2].to_string() == "eps^4");
    CHECK(ps_partial_sum(double_zero_f(), 0).size() == 1);
    auto s = nilpotent();
    auto z = ps_sum(s, ps_scale(num(-1), s));
    CHECK(ps_partial_sum(z, 7).empty());
}

TEST_CASE("evaluation")
{
    auto s = nilpotent();
    LcNumber v4 = ps_eval(s, eps(-4), Exponent(1));
    CHECK(v4.sign() == 1);
    CHECK(v4.valuation() == Exponent(-4));
    LcNumber v6 = ps_eval(s, eps(-6), Exponent(1));
    CHECK(v6.sign() == -1);
    CHECK(v6.valuation() == Exponent(-9));
    CHECK(ps_eval(ps_poly(Mode::lc, {num(-1), num(1)}), num(1) + eps(1), Exponent(5)).to_string() == "eps");
    // divergent: a_n = eps^(-n) at x = 1
    auto bad = ps_term_rule(Mode::lc, false, 1, QPoly{0, -1});
    CHECK_THROWS_AS(ps_eval(bad, num(1), Exponent(1)), ConvergenceError);
    // hahn sign table
    auto hs = ps_term_rule_seq(true, 1);
    for (unsigned h = 2; h <= 6; ++h) {
        LcNumber x = lc_monomial(-Exponent::basis(h));
        LcNumber v = ps_eval(hs, x, Exponent::basis(1));
        CHECK(v.sign() == (h % 2 ? -1 : 1));
        CHECK(v.valuation() == Exponent::hahn({{h, Rational(1 - static_cast<long>(h))}}));
    }
}

TEST_CASE("derivative")
{
    auto d = ps_derivative(ps_poly(Mode::lc, {num(0), num(0), num(1)}));
    CHECK(ps_partial_sum(d, 5).size() == 2);
    CHECK(ps_coeff(d, 1).to_string() == "2");
    auto nd = ps_derivative(nilpotent());
    for (std::size_t n = 0; n < 6; ++n) {
        long m = static_cast<long>(n + 1);
        CHECK(same(ps_coeff(nd, n), eps(m * m, (m % 2 ? -1 : 1) * m)));
    }
    auto s = nilpotent(), t = double_zero_f();
    auto lhs = ps_derivative(ps_sum(s, t)), rhs = ps_sum(ps_derivative(s), ps_derivative(t));
    for (std::size_t n = 0; n < 8; ++n) {
        CHECK(same(ps_coeff(lhs, n), ps_coeff(rhs, n)));
    }
}

TEST_CASE("interval transform")
{
    auto s = ps_poly(Mode::lc, {num(-1), num(1), eps(1)});
    auto check_ends = [&](const LcNumber &a, const LcNumber &b) {
        auto t = ps_transform_interval(s, a, b);
        CHECK(same(ps_eval(t, num(1), Exponent(10)), ps_eval(s, a, Exponent(10))));
        CHECK(same(ps_eval(t, num(2), Exponent(10)), ps_eval(s, b, Exponent(10))));
        return t;
    };
    auto t01 = check_ends(num(0), num(1));
    auto *ls = dynamic_cast<const LinearSubNode *>(&t01.node());
    REQUIRE(ls);
    CHECK(ls->h.to_string() == "1");
    CHECK(ls->k.to_string() == "-1");
    auto t12 = check_ends(num(1), num(2));
    CHECK(t12.ptr() == s.ptr());
    auto te = check_ends(eps(1), num(1) + eps(1));
    auto *le = dynamic_cast<const LinearSubNode *>(&te.node());
    REQUIRE(le);
    CHECK(le->k.to_string() == "-1 + eps");
    CHECK_THROWS_AS(ps_transform_interval(s, num(1), num(1)), DomainError);
    // infinite series under substitution
    // eps^-6 is the larger endpoint
    auto tn = ps_transform_interval(nilpotent(), eps(-4), eps(-6));
    CHECK(ps_eval(tn, num(1), Exponent(1)).sign() == 1);
    CHECK(ps_eval(tn, num(2), Exponent(1)).sign() == -1);
}

TEST_CASE("normalize")
{
    auto nf = ps_normalize(double_zero_f(), 8, Exponent(8));
    CHECK(nf.N == 0);
    CHECK(same(nf.d, num(Rational(1, 2))));
    CHECK(nf.coeffs[0].to_string() == "1");
    CHECK(same(nf.coeffs[3], eps(4, Rational(-1, 2))));

    auto s2 = ps_sum(ps_poly(Mode::lc, {eps(1), num(1)}), ps_term_rule(Mode::lc, false, 1, QPoly{3, 1}, 2));
    auto n2 = ps_normalize(s2, std::nullopt, Exponent(6));
    CHECK(n2.N == 1);
    CHECK(same(n2.d, num(1)));

    auto s3 = ps_poly(Mode::lc, {num(-1), num(1), eps(1)});
    auto n3 = ps_normalize(s3, 2, Exponent(5));
    CHECK(n3.N == 1);
    CHECK(same(n3.d, num(1)));

    CHECK_THROWS_AS(ps_normalize(ps_poly(Mode::lc, {}), 3, Exponent(2)), DomainError);
    // cap too small to certify the tail
    CHECK_THROWS_AS(ps_normalize(double_zero_f(), 2, Exponent(8)), ConvergenceError);
}

TEST_CASE("property: zero correspondence and endpoint signs")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 30; ++i) {
        // S = (X - c)(1 + u X) with c in A
        LcNumber c = lc_const(Mode::lc, testgen::small_rational(rng)) + testgen::random_infinitesimal(rng, Mode::lc);
        LcNumber u = testgen::random_infinitesimal(rng, Mode::lc);
        auto s = ps_ratfun(Mode::lc, {-c, num(1)}, {num(1), -u});
        LcNumber a = c - num(1) + testgen::random_infinitesimal(rng, Mode::lc);
        LcNumber b = c + num(Rational(1, 2));
        auto t = ps_transform_interval(s, a, b);
        // z0 = (c - (2a - b)) / (b - a)
        LcNumber z0 = lc_div(c - (a + a - b), b - a, Exponent(12));
        CHECK(ps_eval(t, z0, Exponent(10)).empty());
        CHECK(lc_compare(z0, num(1)) > 0);
        CHECK(lc_compare(z0, num(2)) < 0);
        int st = ps_eval(t, num(1), Exponent(10)).sign() * ps_eval(t, num(2), Exponent(10)).sign();
        int ss = ps_eval(s, a, Exponent(10)).sign() * ps_eval(s, b, Exponent(10)).sign();
        CHECK(st == ss);
    }
}

TEST_CASE("property: eval linearity and derivative commutation")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        KPoly p, q;
        for (int k = 0; k < 5; ++k) {
            p.push_back(testgen::random_number(rng, Mode::lc, 2));
            q.push_back(testgen::random_number(rng, Mode::lc, 2));
        }
        auto s = ps_sum(ps_poly(Mode::lc, p), nilpotent());
        auto t = ps_ratfun(Mode::lc, q, {num(1), -eps(1)});
        LcNumber x = num(testgen::small_rational(rng)) + testgen::random_infinitesimal(rng, Mode::lc);
        Exponent c(6);
        CHECK(same(ps_eval(ps_sum(s, t), x, c), (ps_eval(s, x, c) + ps_eval(t, x, c)).truncated(c)));
        for (std::size_t n = 0; n < 6; ++n) {
            KPoly lhs = ps_partial_sum(ps_derivative(s), n);
            KPoly rhs = kpoly::derivative(ps_partial_sum(s, n + 1));
            REQUIRE(lhs.size() == rhs.size());
            for (std::size_t k = 0; k < lhs.size(); ++k) {
                CHECK(same(lhs[k], rhs[k]));
            }
        }
    }
}

TEST_CASE("property: normalized invariants")
{
    for (Mode m : {Mode::lc, Mode::hahn}) {
        std::mt19937_64 rng(m == Mode::lc ? 29 : 31);
        for (int i = 0; i < 40; ++i) {
            KPoly p;
            int deg = 1 + i % 5;
            for (int k = 0; k <= deg; ++k) {
                p.push_back(testgen::random_number(rng, m, 2));
            }
            kpoly::trim(p);
            if (p.empty()) {
                continue;
            }
            Exponent cut = m == Mode::lc ? Exponent(5) : Exponent::basis(1);
            auto ns = ps_normalize(ps_poly(m, p), std::nullopt, cut);
            CHECK(ns.coeffs[ns.N].to_string() == "1");
            for (std::size_t k = 0; k < ns.coeffs.size(); ++k) {
                CHECK(in_A(ns.coeffs[k]));
                if (k > ns.N) {
                    CHECK(in_M(ns.coeffs[k]));
                }
                LcNumber direct = lc_mul_trunc(ns.d, p[k], cut);
                if (k != ns.N) {
                    CHECK(same(direct, ns.coeffs[k]));
                }
            }
        }
    }
}
