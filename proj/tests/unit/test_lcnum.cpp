#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lcivt/errors.hpp>
#include <lcivt/lcnum.hpp>

#include "../support/gen.hpp"

using namespace lcivt;

namespace
{

LcNumber eps(const Rational &e, const Rational &c = 1) { return lc_monomial(Exponent(e), RealAlgebraic(c)); }
LcNumber num(const Rational &c) { return lc_const(Mode::lc, c); }
LcNumber heps(unsigned n, const Rational &e = 1) { return lc_monomial(Exponent::hahn({{n, e}})); }

// Independent oracle for a truncated series identity: the residual must have no term below c.
bool residual_beyond(const LcNumber &x, const Exponent &c)
{
    LcNumber t = x.truncated(c);
    return t.empty();
}

} // namespace

TEST_CASE("exponent order")
{
    CHECK(Exponent(Rational(1, 2)) < Exponent(1));
    for (unsigned n = 1; n <= 6; ++n) {
        for (long i = 1; i <= 20; ++i) {
            CHECK(Rational(i) * Exponent::basis(n) < Exponent::basis(n + 1));
            CHECK(Exponent::basis(1) + Exponent::basis(n) < Exponent::basis(n + 1));
        }
    }
    CHECK(parse_exponent("{1:50}") == Exponent::hahn({{1, 50}}));
    CHECK(parse_exponent("{2:1/2, 1:3}").to_string() == "{1:3,2:1/2}");
    CHECK(parse_exponent("-3/2") == Exponent(Rational(-3, 2)));
    CHECK(*min_multiple_at_least(Exponent(Rational(1, 2)), Exponent(3)) == 6);
    CHECK(*min_multiple_at_least(Exponent::basis(2), Exponent::hahn({{1, 50}})) == 1);
    CHECK(!min_multiple_at_least(Exponent::basis(1), Exponent::basis(2)));
    CHECK(*min_multiple_at_least(Exponent::basis(2), Exponent::hahn({{1, 1}, {2, 3}})) == 4);
}

TEST_CASE("lc_make")
{
    CHECK(lc_make(Mode::lc, {{Exponent(0), 1}, {Exponent(1), 1}}).to_string() == "1 + eps");
    CHECK(lc_make(Mode::lc, {{Exponent(1), 1}, {Exponent(1), -1}}).is_zero());
    CHECK(lc_make(Mode::hahn, {{Exponent::basis(2), 1}}).to_string() == "eps[2]");
    CHECK_THROWS_AS(lc_make(Mode::lc, {{Exponent::basis(2), 1}}), DomainError);
}

TEST_CASE("lc_compare")
{
    CHECK(lc_compare(eps(Rational(1, 2)), eps(1)) == 1);
    CHECK(lc_compare(eps(-1), num(1000000)) == 1);
    CHECK(lc_compare(heps(2), lc_pow(heps(1), 7)) == -1);
    LcNumber t = (num(1) + eps(1)).truncated(Exponent(1));
    CHECK_THROWS_AS(lc_compare(t, num(1)), UndecidableError);
    CHECK(lc_compare(t, num(2)) == -1);
}

TEST_CASE("lc_arith")
{
    CHECK(((num(1) + eps(1)) * (num(1) - eps(1))).to_string() == "1 - eps^2");
    CHECK((eps(Rational(1, 2)) * eps(Rational(1, 2))).to_string() == "eps");
    LcNumber p = heps(1) * heps(2);
    CHECK(p.valuation() == Exponent::hahn({{1, 1}, {2, 1}}));
    CHECK(p.valuation() > Exponent::basis(2));
    CHECK(p.valuation() < Exponent::basis(3));
    // truncation propagation through multiplication
    LcNumber a = (num(2) + eps(1)).truncated(Exponent(3));
    LcNumber b = eps(2);
    CHECK(*(a * b).cutoff() == Exponent(5));
    CHECK(*(a + b).cutoff() == Exponent(3));
}

TEST_CASE("lc_invert")
{
    CHECK(lc_invert(num(1) - eps(1), Exponent(4)).to_string() == "1 + eps + eps^2 + eps^3 + O(eps^4)");
    CHECK(lc_invert(eps(1), Exponent(7)).to_string() == "eps^(-1)");
    LcNumber inv = lc_invert(num(2) + eps(1), Exponent(3));
    CHECK(inv.truncated(Exponent(3)).terms() == LcNumber::make(Mode::lc, {{Exponent(0), Rational(1, 2)},
                                                                           {Exponent(1), Rational(-1, 4)},
                                                                           {Exponent(2), Rational(1, 8)}})
                                                    .terms());
    CHECK(residual_beyond((num(2) + eps(1)) * inv - num(1), Exponent(3)));
    CHECK_THROWS_AS(lc_invert(LcNumber(Mode::lc), Exponent(3)), DomainError);
    // hahn: no nilpotent element, so a deep cutoff in a higher index is out of reach
    CHECK_THROWS_AS(lc_invert(lc_const(Mode::hahn, 1) - heps(1), Exponent::basis(2)), ConvergenceError);
    LcNumber hinv = lc_invert(lc_const(Mode::hahn, 1) - heps(2), Exponent::hahn({{2, 5}}));
    CHECK(hinv.terms().size() == 5);
}

TEST_CASE("lc_nth_root")
{
    LcNumber r = lc_nth_root(num(1) + eps(1, 4), 2, Exponent(3));
    CHECK(r.truncated(Exponent(3)).to_string() == "1 + 2*eps - 2*eps^2 + O(eps^3)");
    CHECK(residual_beyond(r * r - (num(1) + eps(1, 4)), Exponent(3)));
    CHECK(lc_nth_root(eps(2), 2, Exponent(5)).to_string() == "eps");
    CHECK(lc_nth_root(num(8), 3, Exponent(5)).to_string() == "2");
    CHECK_THROWS_AS(lc_nth_root(num(-1), 2, Exponent(2)), DomainError);
    LcNumber c = lc_nth_root(num(-2) + eps(1), 3, Exponent(4));
    CHECK(residual_beyond(lc_pow(c, 3) - (num(-2) + eps(1)), Exponent(4)));
}

TEST_CASE("valuation, standard part, classify")
{
    CHECK(lc_valuation(eps(Rational(3, 2), 3) + eps(2)) == Exponent(Rational(3, 2)));
    CHECK(lc_valuation(num(5)).is_zero());
    CHECK(lc_valuation(heps(2) + heps(1)) == Exponent::basis(1));
    CHECK(lc_standard_part(num(2) - eps(2)).to_string() == "2");
    CHECK(lc_standard_part(eps(1)).is_zero());
    CHECK_THROWS_AS(lc_standard_part(eps(-1)), DomainError);
    auto c1 = lc_classify(eps(1));
    CHECK(c1.magnitude == Magnitude::infinitesimal);
    CHECK(c1.topologically_nilpotent);
    auto c2 = lc_classify(heps(1));
    CHECK(c2.magnitude == Magnitude::infinitesimal);
    CHECK(!c2.topologically_nilpotent);
    auto c3 = lc_classify(num(7) + eps(1));
    CHECK(c3.magnitude == Magnitude::finite_appreciable);
    CHECK(!c3.topologically_nilpotent);
    CHECK(lc_classify(eps(-2)).magnitude == Magnitude::infinitely_large);
    CHECK(lc_classify(LcNumber()).magnitude == Magnitude::zero);
}

TEST_CASE("rendering")
{
    CHECK((eps(Rational(1, 2), Rational(3, 2)) + num(2) - eps(2)).to_string() == "2 + 3/2*eps^(1/2) - eps^2");
    CHECK(lc_monomial(Exponent::hahn({{2, Rational(1, 3)}})).to_string() == "eps[2]^(1/3)");
    CHECK(eps(-4).to_string() == "eps^(-4)");
    CHECK(LcNumber().to_string() == "0");
}

TEST_CASE("property: ordered field laws")
{
    for (Mode m : {Mode::lc, Mode::hahn}) {
        std::mt19937_64 rng(m == Mode::lc ? 1 : 2);
        for (int i = 0; i < 200; ++i) {
            auto a = testgen::random_number(rng, m), b = testgen::random_number(rng, m),
                 c = testgen::random_number(rng, m);
            CHECK(lc_compare((a + b) + c, a + (b + c)) == 0);
            CHECK(lc_compare(a * b, b * a) == 0);
            CHECK(lc_compare(a * (b + c), a * b + a * c) == 0);
            if (lc_compare(a, b) < 0) {
                CHECK(lc_compare(a + c, b + c) < 0);
            }
            if (a.sign() > 0 && b.sign() > 0) {
                CHECK((a * b).sign() > 0);
            }
            if (!a.is_zero() && !b.is_zero()) {
                CHECK(lc_valuation(a * b) == lc_valuation(a) + lc_valuation(b));
                LcNumber s = a + b;
                if (!s.is_zero()) {
                    CHECK(lc_valuation(s) >= std::min(lc_valuation(a), lc_valuation(b)));
                    if (lc_valuation(a) != lc_valuation(b)) {
                        CHECK(lc_valuation(s) == std::min(lc_valuation(a), lc_valuation(b)));
                    }
                }
            }
        }
    }
}

TEST_CASE("property: standard part is a ring morphism on A")
{
    for (Mode m : {Mode::lc, Mode::hahn}) {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 200; ++i) {
            auto a = lc_const(m, testgen::small_rational(rng)) + testgen::random_infinitesimal(rng, m);
            auto b = lc_const(m, testgen::small_rational(rng)) + testgen::random_infinitesimal(rng, m);
            CHECK(lc_standard_part(a + b) == lc_standard_part(a) + lc_standard_part(b));
            CHECK(lc_standard_part(a * b) == lc_standard_part(a) * lc_standard_part(b));
        }
    }
}

TEST_CASE("property: invert and root round trips")
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 60; ++i) {
        LcNumber a = testgen::random_number(rng, Mode::lc, 3);
        if (a.is_zero()) {
            continue;
        }
        Exponent cut(6);
        LcNumber inv = lc_invert(a, cut + lc_valuation(a));
        CHECK(residual_beyond(a * inv - num(1), cut));
        LcNumber pos = a.sign() > 0 ? a : -a;
        for (unsigned long n : {2UL, 3UL}) {
            LcNumber r = lc_nth_root(pos, n, Exponent(6));
            CHECK(residual_beyond(lc_pow(r, n) - pos, Exponent(6) + Rational(static_cast<long>(n - 1), static_cast<long>(n)) * lc_valuation(pos)));
        }
    }
}
