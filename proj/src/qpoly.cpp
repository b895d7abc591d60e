#include <algorithm>
#include <sstream>

#include <lcivt/errors.hpp>
#include <lcivt/qpoly.hpp>

namespace lcivt
{

namespace qpoly
{

QPoly to_q(const IntPoly &p)
{
    return QPoly(p.begin(), p.end());
}

Integer content(const IntPoly &p)
{
    Integer g = 0;
    for (const auto &c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) {
            break;
        }
    }
    return g;
}

namespace
{

// Clears denominators and divides by the content, keeping signs.
IntPoly positive_primitive(const QPoly &p)
{
    Integer l = 1;
    for (const auto &c : p) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    IntPoly r;
    r.reserve(p.size());
    for (const auto &c : p) {
        r.push_back(c.get_num() * (l / c.get_den()));
    }
    trim(r);
    Integer g = content(r);
    if (g > 1) {
        for (auto &c : r) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
    }
    return r;
}

} // namespace

IntPoly primitive(const QPoly &p)
{
    IntPoly r = positive_primitive(p);
    if (!r.empty() && r.back() < 0) {
        for (auto &c : r) {
            c = -c;
        }
    }
    return r;
}

IntPoly primitive(const IntPoly &p)
{
    IntPoly r = p;
    trim(r);
    Integer g = content(r);
    if (g > 1) {
        for (auto &c : r) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
    }
    if (!r.empty() && r.back() < 0) {
        for (auto &c : r) {
            c = -c;
        }
    }
    return r;
}

QPoly add(const QPoly &a, const QPoly &b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] += b[i];
    }
    trim(r);
    return r;
}

QPoly sub(const QPoly &a, const QPoly &b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] -= b[i];
    }
    trim(r);
    return r;
}

QPoly mul(const QPoly &a, const QPoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

IntPoly mul(const IntPoly &a, const IntPoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    IntPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

QPoly scale(const QPoly &a, const Rational &c)
{
    if (c == 0) {
        return {};
    }
    QPoly r = a;
    for (auto &x : r) {
        x *= c;
    }
    return r;
}

QPoly derivative(const QPoly &a)
{
    if (a.size() <= 1) {
        return {};
    }
    QPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) {
        r[i - 1] = a[i] * static_cast<unsigned long>(i);
    }
    trim(r);
    return r;
}

IntPoly derivative(const IntPoly &a)
{
    if (a.size() <= 1) {
        return {};
    }
    IntPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) {
        r[i - 1] = a[i] * static_cast<unsigned long>(i);
    }
    trim(r);
    return r;
}

std::pair<QPoly, QPoly> divrem(const QPoly &a, const QPoly &b)
{
    if (b.empty()) {
        throw DomainError("polynomial division by zero");
    }
    QPoly r = a;
    trim(r);
    if (r.size() < b.size()) {
        return {QPoly{}, r};
    }
    QPoly q(r.size() - b.size() + 1);
    const Rational &lb = b.back();
    for (std::size_t k = r.size(); k-- >= b.size();) {
        if (r[k] == 0) {
            continue;
        }
        Rational f = r[k] / lb;
        std::size_t shift = k - (b.size() - 1);
        q[shift] = f;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[shift + j] -= f * b[j];
        }
        if (k == 0) {
            break;
        }
    }
    trim(q);
    trim(r);
    return {q, r};
}

QPoly rem(const QPoly &a, const QPoly &b)
{
    return divrem(a, b).second;
}

QPoly gcd(const QPoly &a, const QPoly &b)
{
    QPoly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        QPoly r = rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.empty()) {
        x = scale(x, 1 / Rational(x.back()));
    }
    return x;
}

std::optional<IntPoly> divexact(const IntPoly &a, const IntPoly &b)
{
    if (b.empty()) {
        throw DomainError("polynomial division by zero");
    }
    IntPoly r = a;
    trim(r);
    if (r.empty()) {
        return IntPoly{};
    }
    if (r.size() < b.size()) {
        return std::nullopt;
    }
    IntPoly q(r.size() - b.size() + 1);
    const Integer &lb = b.back();
    for (std::size_t k = r.size(); k-- >= b.size();) {
        if (r[k] != 0) {
            if (!mpz_divisible_p(r[k].get_mpz_t(), lb.get_mpz_t())) {
                return std::nullopt;
            }
            Integer f = r[k] / lb;
            std::size_t shift = k - (b.size() - 1);
            q[shift] = f;
            for (std::size_t j = 0; j < b.size(); ++j) {
                r[shift + j] -= f * b[j];
            }
        }
        if (k == 0) {
            break;
        }
    }
    trim(r);
    if (!r.empty()) {
        return std::nullopt;
    }
    trim(q);
    return q;
}

Rational eval(const QPoly &p, const Rational &x)
{
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * x + p[i];
    }
    return acc;
}

Rational eval(const IntPoly &p, const Rational &x)
{
    // Homogenised Horner over the integers: num(x)^k den(x)^(n-k).
    if (p.empty()) {
        return 0;
    }
    const Integer &n = x.get_num();
    const Integer &d = x.get_den();
    Integer acc = p.back();
    Integer dpow = 1;
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        dpow *= d;
        acc = acc * n + p[i] * dpow;
    }
    Rational r(acc, dpow);
    r.canonicalize();
    return r;
}

int sign_at(const IntPoly &p, const Rational &x)
{
    if (p.empty()) {
        return 0;
    }
    const Integer &n = x.get_num();
    const Integer &d = x.get_den();
    Integer acc = p.back();
    Integer dpow = 1;
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        dpow *= d;
        acc = acc * n + p[i] * dpow;
    }
    return sgn(acc);
}

IntPoly shift(const IntPoly &p, const Rational &c)
{
    // Taylor shift by repeated synthetic division over Q.
    QPoly q = to_q(p);
    const std::size_t n = q.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = n - 1; j > i; --j) {
            q[j - 1] += c * q[j];
        }
    }
    return primitive(q);
}

IntPoly scale_var(const IntPoly &p, const Rational &c)
{
    QPoly q = to_q(p);
    Rational f = 1;
    for (auto &x : q) {
        x *= f;
        f *= c;
    }
    trim(q);
    return primitive(q);
}

IntPoly reverse(const IntPoly &p)
{
    IntPoly r(p.rbegin(), p.rend());
    trim(r);
    return primitive(r);
}

std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly &p)
{
    std::vector<std::pair<IntPoly, unsigned>> out;
    QPoly f = to_q(p);
    trim(f);
    if (f.size() <= 1) {
        return out;
    }
    QPoly df = derivative(f);
    QPoly a = gcd(f, df);
    QPoly b = divrem(f, a).first;
    QPoly c = divrem(df, a).first;
    QPoly d = sub(c, derivative(b));
    unsigned i = 1;
    while (b.size() > 1) {
        a = gcd(b, d);
        if (a.size() > 1) {
            out.emplace_back(primitive(a), i);
        }
        b = divrem(b, a).first;
        c = divrem(d, a).first;
        d = sub(c, derivative(b));
        ++i;
    }
    return out;
}

IntPoly squarefree_part(const IntPoly &p)
{
    QPoly f = to_q(p);
    trim(f);
    if (f.size() <= 1) {
        return primitive(f);
    }
    QPoly g = gcd(f, derivative(f));
    return primitive(divrem(f, g).first);
}

Rational resultant(const QPoly &a0, const QPoly &b0)
{
    QPoly a = a0, b = b0;
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) {
        return 0;
    }
    Rational acc = 1;
    while (true) {
        const int da = degree(a), db = degree(b);
        if (db == 0) {
            Rational r;
            mpz_pow_ui(r.get_num_mpz_t(), b[0].get_num_mpz_t(), static_cast<unsigned long>(da));
            mpz_pow_ui(r.get_den_mpz_t(), b[0].get_den_mpz_t(), static_cast<unsigned long>(da));
            r.canonicalize();
            return acc * r;
        }
        if (da == 0) {
            Rational r = pow(a[0], static_cast<unsigned long>(db));
            return acc * r;
        }
        QPoly r = rem(a, b);
        if (r.empty()) {
            return 0;
        }
        const int dr = degree(r);
        if ((da % 2 == 1) && (db % 2 == 1)) {
            acc = -acc;
        }
        acc *= pow(b.back(), static_cast<unsigned long>(da - dr));
        a = std::move(b);
        b = std::move(r);
    }
}

QPoly interpolate(const std::vector<Rational> &xs, const std::vector<Rational> &ys)
{
    const std::size_t n = xs.size();
    std::vector<Rational> dd = ys;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) {
                break;
            }
        }
    }
    QPoly result;
    for (std::size_t k = n; k-- > 0;) {
        // result = result * (x - xs[k]) + dd[k]
        QPoly next(result.size() + 1);
        for (std::size_t i = 0; i < result.size(); ++i) {
            next[i + 1] += result[i];
            next[i] -= result[i] * xs[k];
        }
        next[0] += dd[k];
        trim(next);
        result = std::move(next);
    }
    return result;
}

Rational root_bound(const IntPoly &p)
{
    if (p.size() <= 1) {
        return 1;
    }
    Rational m = 0;
    Integer lead = abs(p.back());
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        Rational r(abs(p[i]), lead);
        r.canonicalize();
        if (r > m) {
            m = r;
        }
    }
    // Round up to a power of two so bisection stays dyadic.
    Rational b = 1;
    while (b <= m + 1) {
        b *= 2;
    }
    return b;
}

namespace
{

template <typename T>
std::string render(const std::vector<T> &p, const std::string &var)
{
    if (p.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0) {
            continue;
        }
        T c = p[i];
        bool neg = c < 0;
        if (neg) {
            c = -c;
        }
        if (first) {
            if (neg) {
                os << "-";
            }
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << c.get_str();
            continue;
        }
        if (c != 1) {
            os << c.get_str() << "*";
        }
        os << var;
        if (i > 1) {
            os << "^" << i;
        }
    }
    return os.str();
}

} // namespace

std::string to_string(const IntPoly &p, const std::string &var) { return render(p, var); }
std::string to_string(const QPoly &p, const std::string &var) { return render(p, var); }

} // namespace qpoly

SturmChain::SturmChain(const IntPoly &p)
{
    using namespace qpoly;
    IntPoly f = p;
    trim(f);
    if (f.empty()) {
        throw DomainError("Sturm chain of the zero polynomial");
    }
    chain_.push_back(f);
    if (f.size() == 1) {
        return;
    }
    chain_.push_back(positive_primitive(derivative(to_q(f))));
    while (chain_.back().size() > 1) {
        QPoly r = rem(to_q(chain_[chain_.size() - 2]), to_q(chain_.back()));
        if (r.empty()) {
            break;
        }
        chain_.push_back(positive_primitive(scale(r, -1)));
    }
}

int SturmChain::variations(const Rational &x) const
{
    int count = 0, last = 0;
    for (const auto &p : chain_) {
        int s = qpoly::sign_at(p, x);
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++count;
        }
        last = s;
    }
    return count;
}

int SturmChain::variations_at_infinity(int side) const
{
    int count = 0, last = 0;
    for (const auto &p : chain_) {
        int s = sgn(p.back());
        if (side < 0 && (p.size() - 1) % 2 == 1) {
            s = -s;
        }
        if (last != 0 && s != last) {
            ++count;
        }
        last = s;
    }
    return count;
}

int SturmChain::count(const Rational &a, const Rational &b) const
{
    if (b <= a) {
        return 0;
    }
    return variations(a) - variations(b);
}

int SturmChain::count_closed(const Rational &a, const Rational &b) const
{
    if (b < a) {
        return 0;
    }
    int c = (a == b) ? 0 : count(a, b);
    if (qpoly::sign_at(chain_.front(), a) == 0) {
        ++c;
    }
    return c;
}

int SturmChain::count_all() const
{
    return variations_at_infinity(-1) - variations_at_infinity(+1);
}

std::vector<RootInterval> isolate_squarefree(const IntPoly &p)
{
    std::vector<RootInterval> out;
    if (p.size() <= 1) {
        return out;
    }
    SturmChain sc(p);
    Rational bound = qpoly::root_bound(p);
    struct Frame {
        Rational lo, hi;
        int n;
    };
    // Depth-first, left half first, so results come out ascending.
    std::vector<Frame> stack;
    int total = sc.count(-bound, bound);
    if (total > 0) {
        stack.push_back({-bound, bound, total});
    }
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.n == 1) {
            Rational lo = f.lo, hi = f.hi;
            if (qpoly::sign_at(p, hi) == 0) {
                out.push_back({hi, hi});
                continue;
            }
            // The root lies in (lo, hi); move lo off any neighbouring root.
            while (qpoly::sign_at(p, lo) == 0) {
                Rational mid = (lo + hi) / 2;
                if (qpoly::sign_at(p, mid) == 0) {
                    if (sc.count(lo, mid) == 1) {
                        lo = hi = mid;
                        break;
                    }
                    lo = mid;
                } else if (sc.count(lo, mid) == 1) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            out.push_back({lo, hi});
            continue;
        }
        Rational mid = (f.lo + f.hi) / 2;
        int left = sc.count(f.lo, mid);
        int right = f.n - left;
        if (right > 0) {
            stack.push_back({mid, f.hi, right});
        }
        if (left > 0) {
            stack.push_back({f.lo, mid, left});
        }
    }
    return out;
}

} // namespace lcivt
