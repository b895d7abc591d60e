#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lcivt/cli.hpp>
#include <lcivt/dsl.hpp>
#include <lcivt/errors.hpp>

#include "../support/gen.hpp"

using namespace lcivt;

namespace
{

LcNumber eps(const Rational &e, const Rational &c = 1) { return lc_monomial(Exponent(e), RealAlgebraic(c)); }
LcNumber num(const Rational &c) { return lc_const(Mode::lc, c); }

ParseError parse_error(std::string_view text, Mode m)
{
    try {
        parse_series(text, m);
    } catch (const ParseError &e) {
        return e;
    }
    FAIL("no parse error");
    return ParseError("", 0, 0);
}

// Coefficient text, or the error kind when the coefficient has no certificate.
std::string coeff_or_error(const PSeries &s, std::size_t n, const Exponent &limit)
{
    try {
        return ps_coeff(s, n, limit).to_string();
    } catch (const Error &e) {
        return std::string("error:") + e.kind();
    }
}

bool same_coeffs(const PSeries &a, const PSeries &b, const Exponent &limit, std::size_t upto)
{
    for (std::size_t n = 0; n <= upto; ++n) {
        if (coeff_or_error(a, n, limit) != coeff_or_error(b, n, limit)) {
            return false;
        }
    }
    return true;
}

PSeries random_series(std::mt19937_64 &rng, Mode m, int depth)
{
    std::uniform_int_distribution<int> kind(0, depth > 0 ? 6 : 2);
    switch (kind(rng)) {
    case 0: {
        KPoly c;
        std::uniform_int_distribution<int> len(1, 4);
        for (int i = len(rng); i > 0; --i) {
            c.push_back(testgen::random_number(rng, m, 2));
        }
        return ps_poly(m, c);
    }
    case 1: {
        LcNumber u = testgen::random_infinitesimal(rng, m, 2);
        KPoly numr = {testgen::random_number(rng, m, 2), testgen::random_number(rng, m, 2)};
        return ps_ratfun(m, numr, {lc_const(m, 1), -u});
    }
    case 2: {
        std::uniform_int_distribution<int> coin(0, 1), off(0, 2);
        if (m == Mode::hahn) {
            return ps_term_rule_seq(coin(rng), testgen::nonzero_rational(rng), off(rng));
        }
        QPoly e = {testgen::small_rational(rng), Rational(1 + off(rng)), Rational(coin(rng))};
        return ps_term_rule(m, coin(rng), testgen::nonzero_rational(rng), e, off(rng));
    }
    case 3:
        return ps_sum(random_series(rng, m, depth - 1), random_series(rng, m, depth - 1));
    case 4:
        return ps_scale(testgen::random_number(rng, m, 2), random_series(rng, m, depth - 1));
    case 5:
        return ps_derivative(random_series(rng, m, depth - 1));
    default: {
        std::uniform_int_distribution<int> kk(-2, 2);
        return ps_linear_sub(lc_const(m, testgen::nonzero_rational(rng)) + testgen::random_infinitesimal(rng, m, 1),
                             lc_const(m, Rational(kk(rng))), random_series(rng, m, depth - 1));
    }
    }
}

} // namespace

TEST_CASE("parse_series examples")
{
    auto s = parse_series("term: sign=(-1)^n scale=1 expo=n^2", Mode::lc);
    CHECK(ps_coeff(s, 3).to_string() == "-eps^9");
    CHECK(ps_coeff(s, 2).to_string() == "eps^4");

    auto p = parse_series("poly: -1, 1, eps", Mode::lc);
    CHECK(ps_coeff(p, 0).to_string() == "-1");
    CHECK(ps_coeff(p, 1).to_string() == "1");
    CHECK(ps_coeff(p, 2).to_string() == "eps");
    CHECK(ps_coeff(p, 3).is_zero());

    auto h = parse_series("term: sign=(-1)^n scale=1 expo=seq(n)", Mode::hahn);
    CHECK(ps_coeff(h, 3).to_string() == "-eps[3]");
    CHECK(ps_coeff(h, 0).to_string() == "1");

    auto r = parse_series("ratfun: (2 - 2*eps*X - eps^2*X) / (1 - eps*X)", Mode::lc);
    CHECK(ps_coeff(r, 0).to_string() == "2");
    CHECK(ps_coeff(r, 4).to_string() == "-eps^5");

    auto combo = parse_series("# two leaves\npoly: 1\npoly: 0, 1\nsum:\nscale: 2*eps\nsubst: h=eps^-1 k=1\n", Mode::lc);
    CHECK(ps_coeff(combo, 0).to_string() == "4*eps");
    CHECK(ps_coeff(combo, 1).to_string() == "2");
}

TEST_CASE("literals")
{
    CHECK(parse_lcnumber("3/2*eps^(1/2) + 2 - eps^2", Mode::lc).to_string() == "2 + 3/2*eps^(1/2) - eps^2");
    CHECK(parse_lcnumber("eps[1]*eps[2]^(1/3)", Mode::hahn).to_string() == "eps[1]*eps[2]^(1/3)");
    CHECK(parse_lcnumber("1 + eps + O(eps^2)", Mode::lc).to_string() == "1 + eps + O(eps^2)");
    CHECK(parse_lcnumber("1 + eps^3 + O(eps^2)", Mode::lc).to_string() == "1 + O(eps^2)");
    CHECK(parse_lcnumber("eps^-2 / 4", Mode::lc).to_string() == "1/4*eps^(-2)");
    LcNumber r = parse_lcnumber("root(x^2 - 2, 1, 2)*eps", Mode::lc);
    CHECK(r.leading_coeff() * r.leading_coeff() == RealAlgebraic(2));
    CHECK(parse_lcnumber(r.to_string(), Mode::lc).to_string() == r.to_string());
    auto iv = parse_interval("root(x^2 - 2, 1, 2), eps^-4", Mode::lc);
    CHECK(iv.second.to_string() == "eps^(-4)");
    CHECK_THROWS_AS(parse_lcnumber("eps[1]", Mode::lc), ParseError);
    CHECK_THROWS_AS(parse_lcnumber("2 *", Mode::lc), ParseError);
    CHECK_THROWS_AS(parse_lcnumber("O(2*eps)", Mode::lc), ParseError);
}

TEST_CASE("parse errors carry line and column")
{
    auto e = parse_error("poly: 1\npoly: 1, eps[2]\nsum:", Mode::lc);
    CHECK(e.line() == 2);
    CHECK(e.column() == 10);
    auto h = parse_error("poly: 1, eps", Mode::hahn);
    CHECK(h.line() == 1);
    CHECK(h.column() == 10);
    CHECK(std::string(h.what()).find("mode mixing") != std::string::npos);
    auto s = parse_error("term: sign=(-1)^n scale=1 expo=seq(n)", Mode::lc);
    CHECK(s.column() == 32);
    CHECK(parse_error("poly: 1\npoly: 2", Mode::lc).line() == 2);
    CHECK(parse_error("bogus: 1", Mode::lc).column() == 1);
    CHECK(parse_error("sum:", Mode::lc).line() == 1);
    // Denominator without a single-term constant part has no certificate.
    CHECK(parse_error("ratfun: 1 / (1 + eps - X)", Mode::lc).line() == 1);
}

TEST_CASE("property: number literals round-trip")
{
    for (Mode m : {Mode::lc, Mode::hahn}) {
        std::mt19937_64 rng(m == Mode::lc ? 1 : 2);
        for (int i = 0; i < 300; ++i) {
            LcNumber x = testgen::random_number(rng, m, 4);
            if (i % 3 == 0) {
                x = x.truncated(testgen::random_exponent(rng, m));
            }
            CHECK(parse_lcnumber(x.to_string(), m).to_string() == x.to_string());
        }
    }
}

TEST_CASE("property: series render/parse round-trip")
{
    for (Mode m : {Mode::lc, Mode::hahn}) {
        std::mt19937_64 rng(m == Mode::lc ? 3 : 4);
        const Exponent limit = m == Mode::lc ? Exponent(8) : Exponent::hahn({{1, 8}});
        for (int i = 0; i < 60; ++i) {
            PSeries s = random_series(rng, m, 2);
            std::string text = render_series(s);
            PSeries back = parse_series(text, m);
            CHECK_MESSAGE(same_coeffs(s, back, limit, 6), text);
            CHECK(render_series(back) == text);
        }
    }
}

TEST_CASE("report schema")
{
    RunConfig cfg;
    cfg.command = "ivt";
    cfg.series_source = "poly: -1, 1, eps";
    cfg.interval = "0,3/2";
    cfg.cutoff = "4";
    Report rep = run_command(cfg);
    auto j = Json::parse(emit_report(rep, OutputFormat::json));
    for (const char *key : {"root", "multiplicity", "residual_valuation", "interval", "certificate"}) {
        CHECK(j["results"].contains(key));
    }
    CHECK(j["results"]["root"] == "1 - eps + 2*eps^2 - 5*eps^3 + O(eps^4)");
    CHECK(j["results"]["multiplicity"] == "1");
    CHECK(j.contains("timing"));

    cfg.command = "track-zeros";
    cfg.interval = "1/2,3/2";
    cfg.n_list = {1, 2};
    std::string csv = emit_report(run_command(cfg), OutputFormat::csv);
    CHECK(csv.rfind("n,kind,location,distance_valuation\n", 0) == 0);
    CHECK(csv.find("1,zero,1,1\n") != std::string::npos);

    cfg.command = "zeros";
    cfg.interval = "3/2,2";
    auto z = Json::parse(emit_report(run_command(cfg), OutputFormat::json));
    CHECK(z["results"]["roots"].is_array());
    CHECK(z["results"]["roots"].empty());
    CHECK(z["results"]["count"] == "0");
    CHECK(emit_report(Report{}, OutputFormat::json).find("\"results\": {}") != std::string::npos);
}

TEST_CASE("property: identical configs give identical json")
{
    std::vector<RunConfig> cfgs(4);
    cfgs[0].command = "zeros";
    cfgs[0].series_source = "poly: 1, 0, -1, eps";
    cfgs[0].interval = "-2,2";
    cfgs[0].cutoff = "6";
    cfgs[1].command = "example";
    cfgs[1].example = "hahn-signs";
    cfgs[2].command = "factor";
    cfgs[2].series_source = "ratfun: (eps - X + X^2) / (1 - eps*X)";
    cfgs[2].cutoff = "6";
    cfgs[3].command = "eval";
    cfgs[3].series_source = "term: sign=(-1)^n scale=1 expo=n^2";
    cfgs[3].at = "eps^-6";
    for (const auto &c : cfgs) {
        std::string a = emit_report(run_command(c), OutputFormat::json, false);
        std::string b = emit_report(run_command(c), OutputFormat::json, false);
        CHECK(a == b);
        CHECK(a.find("timing") == std::string::npos);
    }
}

TEST_CASE("examples assert the paper's claims")
{
    CHECK(run_example("nilpotent-signs", {{"l", "3"}}, Mode::lc, std::nullopt).failures.empty());
    CHECK(run_example("hahn-signs", {{"h", "5"}}, Mode::hahn, std::nullopt).failures.empty());
    auto dz = run_example("double-zero", {{"n", "10"}}, Mode::lc, std::nullopt);
    CHECK(dz.failures.empty());
    CHECK(dz.results["partial_sums"][0]["summary"] ==
          "no sign change of T_n on [3/4,5/4]: true; extreme of T_n at distance valuation > 0 from 1: true");
    CHECK_THROWS_AS(run_example("hahn-signs", {{"h", "9"}}, Mode::hahn, std::nullopt), DomainError);
    CHECK_THROWS_AS(run_example("nope", {}, Mode::lc, std::nullopt), DomainError);
}
