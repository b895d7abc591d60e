#include <lcivt/errors.hpp>
#include <lcivt/kpoly.hpp>

namespace lcivt::kpoly
{

void trim(KPoly &p)
{
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

int degree(const KPoly &p) { return static_cast<int>(p.size()) - 1; }

KPoly add(const KPoly &a, const KPoly &b)
{
    KPoly out(std::max(a.size(), b.size()), LcNumber(!a.empty() ? a[0].mode() : (!b.empty() ? b[0].mode() : Mode::lc)));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size() && i < b.size()) {
            out[i] = a[i] + b[i];
        } else if (i < a.size()) {
            out[i] = a[i];
        } else {
            out[i] = b[i];
        }
    }
    trim(out);
    return out;
}

KPoly sub(const KPoly &a, const KPoly &b)
{
    KPoly nb = b;
    for (auto &c : nb) {
        c = -c;
    }
    return add(a, nb);
}

KPoly mul(const KPoly &a, const KPoly &b, const std::optional<Exponent> &limit)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    KPoly out(a.size() + b.size() - 1, LcNumber(a[0].mode()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) {
                continue;
            }
            out[i + j] += limit ? lc_mul_trunc(a[i], b[j], *limit) : a[i] * b[j];
        }
    }
    trim(out);
    return out;
}

KPoly scale(const KPoly &a, const LcNumber &c, const std::optional<Exponent> &limit)
{
    KPoly out;
    out.reserve(a.size());
    for (const auto &x : a) {
        out.push_back(limit ? lc_mul_trunc(x, c, *limit) : x * c);
    }
    trim(out);
    return out;
}

KPoly derivative(const KPoly &a)
{
    KPoly out;
    for (std::size_t i = 1; i < a.size(); ++i) {
        out.push_back(lc_scale(a[i], RealAlgebraic(Rational(static_cast<long>(i)))));
    }
    trim(out);
    return out;
}

KPoly truncated(const KPoly &a, const Exponent &limit)
{
    KPoly out;
    out.reserve(a.size());
    for (const auto &x : a) {
        out.push_back(x.truncated(limit));
    }
    return out;
}

LcNumber eval(Mode m, const KPoly &p, const LcNumber &x, const std::optional<Exponent> &limit)
{
    std::optional<Exponent> lim = limit;
    if (lim && !x.empty() && x.valuation().sign() < 0 && !p.empty()) {
        lim = *lim - Rational(static_cast<long>(p.size())) * x.valuation();
    }
    LcNumber acc(m);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = (lim ? lc_mul_trunc(acc, x, *lim) : acc * x) + p[i];
    }
    return limit ? acc.clipped(*limit) : acc;
}

KPoly compose_linear(Mode m, const KPoly &p, const LcNumber &h, const LcNumber &k, const std::optional<Exponent> &limit)
{
    // Horner in the polynomial ring: acc = acc*(hZ + k) + p_i
    std::optional<Exponent> lim = limit;
    if (lim) {
        std::optional<Exponent> v = valuation(KPoly{k, h});
        if (v && v->sign() < 0) {
            lim = *lim - Rational(static_cast<long>(p.size())) * *v;
        }
    }
    KPoly acc;
    KPoly lin{k, h};
    kpoly::trim(lin);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = mul(acc, lin, lim);
        acc = add(acc, KPoly{p[i]});
    }
    if (limit) {
        for (auto &c : acc) {
            c = c.clipped(*limit);
        }
        trim(acc);
    }
    (void)m;
    return acc;
}

std::pair<KPoly, KPoly> divrem_monic(const KPoly &a, const KPoly &b)
{
    if (b.empty() || !(b.back().is_exact() && b.back().terms().size() == 1 && b.back().terms()[0].first.is_zero() &&
                       b.back().terms()[0].second == RealAlgebraic(1))) {
        throw DomainError("divisor must be monic");
    }
    KPoly r = a;
    const std::size_t nb = b.size();
    if (r.size() < nb) {
        return {{}, r};
    }
    Mode m = b[0].mode();
    KPoly q(r.size() - nb + 1, LcNumber(m));
    for (std::size_t i = r.size(); i-- >= nb;) {
        LcNumber c = r[i];
        q[i - nb + 1] = c;
        if (c.empty() && c.is_exact()) {
            continue;
        }
        for (std::size_t j = 0; j < nb; ++j) {
            r[i - nb + 1 + j] -= c * b[j];
        }
    }
    r.resize(nb - 1, LcNumber(m));
    trim(q);
    trim(r);
    return {q, r};
}

AlgPoly standard_part(const KPoly &p)
{
    AlgPoly out;
    out.reserve(p.size());
    for (const auto &c : p) {
        out.push_back(lc_standard_part(c));
    }
    while (!out.empty() && out.back().is_zero()) {
        out.pop_back();
    }
    return out;
}

KPoly from_alg(Mode m, const AlgPoly &p)
{
    KPoly out;
    for (const auto &c : p) {
        out.emplace_back(m, c);
    }
    trim(out);
    return out;
}

std::optional<Exponent> valuation(const KPoly &p)
{
    std::optional<Exponent> v;
    for (const auto &c : p) {
        auto b = c.valuation_bound();
        if (b && (!v || *b < *v)) {
            v = b;
        }
    }
    return v;
}

std::string to_string(const KPoly &p, const std::string &var)
{
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) {
            continue;
        }
        std::string c = "(" + p[i].to_string() + ")";
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string term = mono.empty() ? c : c + "*" + mono;
        out += out.empty() ? term : " + " + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace lcivt::kpoly
