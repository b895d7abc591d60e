#include <algorithm>
#include <cstdint>
#include <random>

#include <lcivt/errors.hpp>
#include <lcivt/factor.hpp>

namespace lcivt
{

namespace
{

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

struct Field {
    u64 p;

    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return (a * b) % p; }
    u64 pow(u64 a, u64 e) const
    {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1) {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }

    void trim(ModPoly &a) const
    {
        while (!a.empty() && a.back() == 0) {
            a.pop_back();
        }
    }

    ModPoly reduce(const IntPoly &f) const
    {
        ModPoly r(f.size());
        Integer pp = static_cast<unsigned long>(p);
        for (std::size_t i = 0; i < f.size(); ++i) {
            Integer m;
            mpz_fdiv_r(m.get_mpz_t(), f[i].get_mpz_t(), pp.get_mpz_t());
            r[i] = m.get_ui();
        }
        trim(r);
        return r;
    }

    ModPoly sub(const ModPoly &a, const ModPoly &b) const
    {
        ModPoly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i] = a[i];
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            r[i] = sub(r[i], b[i]);
        }
        trim(r);
        return r;
    }

    ModPoly mul(const ModPoly &a, const ModPoly &b) const
    {
        if (a.empty() || b.empty()) {
            return {};
        }
        ModPoly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.size(); ++j) {
                r[i + j] = (r[i + j] + a[i] * b[j]) % p;
            }
        }
        trim(r);
        return r;
    }

    std::pair<ModPoly, ModPoly> divrem(const ModPoly &a, const ModPoly &b) const
    {
        ModPoly r = a;
        trim(r);
        if (r.size() < b.size()) {
            return {ModPoly{}, r};
        }
        ModPoly q(r.size() - b.size() + 1, 0);
        u64 li = inv(b.back());
        for (std::size_t k = r.size(); k-- > b.size() - 1;) {
            if (r[k] == 0) {
                continue;
            }
            u64 f = mul(r[k], li);
            std::size_t s = k - (b.size() - 1);
            q[s] = f;
            for (std::size_t j = 0; j < b.size(); ++j) {
                r[s + j] = sub(r[s + j], mul(f, b[j]));
            }
        }
        trim(q);
        trim(r);
        return {q, r};
    }

    ModPoly rem(const ModPoly &a, const ModPoly &b) const { return divrem(a, b).second; }

    ModPoly monic(ModPoly a) const
    {
        if (a.empty()) {
            return a;
        }
        u64 li = inv(a.back());
        for (auto &c : a) {
            c = mul(c, li);
        }
        return a;
    }

    ModPoly gcd(ModPoly a, ModPoly b) const
    {
        trim(a);
        trim(b);
        while (!b.empty()) {
            ModPoly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    // s*a + t*b = 1 for coprime a, b.
    void bezout(const ModPoly &a, const ModPoly &b, ModPoly &s, ModPoly &t) const
    {
        ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
        while (!r1.empty()) {
            auto [q, r] = divrem(r0, r1);
            ModPoly s2 = sub(s0, mul(q, s1));
            ModPoly t2 = sub(t0, mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        // r0 is a nonzero constant
        u64 ci = inv(r0.at(0));
        for (auto &c : s0) {
            c = mul(c, ci);
        }
        for (auto &c : t0) {
            c = mul(c, ci);
        }
        s = s0;
        t = t0;
    }

    ModPoly powmod(ModPoly base, const Integer &e, const ModPoly &m) const
    {
        ModPoly r{1};
        base = rem(base, m);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = rem(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) {
                r = rem(mul(r, base), m);
            }
        }
        return r;
    }

    ModPoly derivative(const ModPoly &a) const
    {
        if (a.size() <= 1) {
            return {};
        }
        ModPoly r(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i) {
            r[i - 1] = mul(a[i], i % p);
        }
        trim(r);
        return r;
    }
};

// Cantor-Zassenhaus over F_p, p odd; f monic squarefree.
std::vector<ModPoly> factor_mod_p(const Field &F, const ModPoly &f, std::mt19937_64 &rng)
{
    std::vector<std::pair<ModPoly, std::size_t>> ddf;
    ModPoly rest = f;
    ModPoly x{0, 1};
    ModPoly h = x;
    std::size_t d = 1;
    Integer p = static_cast<unsigned long>(F.p);
    while (rest.size() - 1 >= 2 * d) {
        h = F.powmod(h, p, rest);
        ModPoly g = F.gcd(F.sub(h, x), rest);
        if (g.size() > 1) {
            ddf.emplace_back(g, d);
            rest = F.divrem(rest, g).first;
            h = F.rem(h, rest);
        }
        ++d;
    }
    if (rest.size() > 1) {
        ddf.emplace_back(F.monic(rest), rest.size() - 1);
    }

    std::vector<ModPoly> out;
    for (auto &[g, deg] : ddf) {
        std::vector<ModPoly> work{g};
        while (!work.empty()) {
            ModPoly u = work.back();
            work.pop_back();
            if (u.size() - 1 == deg) {
                out.push_back(F.monic(u));
                continue;
            }
            Integer e;
            mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), deg);
            e = (e - 1) / 2;
            while (true) {
                ModPoly a(u.size() - 1);
                for (auto &c : a) {
                    c = rng() % F.p;
                }
                F.trim(a);
                if (a.size() <= 1) {
                    continue;
                }
                ModPoly b = F.powmod(a, e, u);
                b = F.sub(b, ModPoly{1});
                ModPoly g2 = F.gcd(b, u);
                if (g2.size() > 1 && g2.size() < u.size()) {
                    work.push_back(g2);
                    work.push_back(F.monic(F.divrem(u, g2).first));
                    break;
                }
            }
        }
    }
    return out;
}

IntPoly to_int(const ModPoly &a)
{
    IntPoly r;
    r.reserve(a.size());
    for (u64 c : a) {
        r.emplace_back(static_cast<unsigned long>(c));
    }
    return r;
}

void reduce_mod(IntPoly &a, const Integer &m)
{
    for (auto &c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
    qpoly::trim(a);
}

IntPoly sub(const IntPoly &a, const IntPoly &b)
{
    IntPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] -= b[i];
    }
    qpoly::trim(r);
    return r;
}

// Lifts f = g*h (mod p) to f = G*H (mod p^k) with G monic.
void hensel_lift(const Field &F, const IntPoly &f, const ModPoly &g, const ModPoly &h, unsigned k, IntPoly &G,
                 IntPoly &H)
{
    ModPoly s, t;
    F.bezout(g, h, s, t);
    G = to_int(g);
    H = to_int(h);
    Integer pk = static_cast<unsigned long>(F.p);
    for (unsigned j = 1; j < k; ++j) {
        IntPoly e = sub(f, qpoly::mul(G, H));
        for (auto &c : e) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
        }
        ModPoly em = F.reduce(e);
        auto [q, r] = F.divrem(F.mul(t, em), g);
        ModPoly dh = F.divrem(F.sub(em, F.mul(h, r)), g).first;
        IntPoly dG = to_int(r), dH = to_int(dh);
        G.resize(std::max(G.size(), dG.size()));
        for (std::size_t i = 0; i < dG.size(); ++i) {
            G[i] += pk * dG[i];
        }
        H.resize(std::max(H.size(), dH.size()));
        for (std::size_t i = 0; i < dH.size(); ++i) {
            H[i] += pk * dH[i];
        }
        pk *= static_cast<unsigned long>(F.p);
        reduce_mod(G, pk);
        reduce_mod(H, pk);
    }
}

IntPoly symmetric(IntPoly a, const Integer &m)
{
    Integer half = m / 2;
    for (auto &c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) {
            c -= m;
        }
    }
    qpoly::trim(a);
    return a;
}

bool is_prime(unsigned long n)
{
    if (n < 2) {
        return false;
    }
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

void next_subset(std::vector<std::size_t> &idx, std::size_t n, bool &done)
{
    std::size_t k = idx.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
            return;
        }
    }
    done = true;
}

std::vector<IntPoly> factor_squarefree(const IntPoly &f0)
{
    IntPoly f = qpoly::primitive(f0);
    const std::size_t n = f.size() - 1;
    if (n <= 1) {
        return {f};
    }
    if (f[0] == 0) {
        // x divides f
        IntPoly rest(f.begin() + 1, f.end());
        auto out = factor_squarefree(rest);
        out.push_back(IntPoly{0, 1});
        return out;
    }

    // Pick the admissible prime (of the first few) with the fewest modular factors.
    std::mt19937_64 rng(0x5eed1e55ULL);
    std::vector<ModPoly> best;
    u64 best_p = 0;
    int tried = 0;
    for (unsigned long cand = 3; tried < 5 && cand < 100000; cand += 2) {
        if (!is_prime(cand)) {
            continue;
        }
        Field F{cand};
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), cand)) {
            continue;
        }
        ModPoly fm = F.reduce(f);
        if (F.gcd(fm, F.derivative(fm)).size() != 1) {
            continue;
        }
        auto facs = factor_mod_p(F, F.monic(fm), rng);
        ++tried;
        if (best_p == 0 || facs.size() < best.size()) {
            best = facs;
            best_p = cand;
        }
        if (best.size() == 1) {
            break;
        }
    }
    if (best_p == 0) {
        throw ResourceError("no admissible prime for factorization");
    }
    if (best.size() == 1) {
        return {f};
    }

    Field F{best_p};
    // Mignotte-style bound: |coeff of any factor of lc*f| <= |lc| 2^n (n+1) max|a_i|.
    Integer maxc = 0;
    for (const auto &c : f) {
        if (abs(c) > maxc) {
            maxc = abs(c);
        }
    }
    Integer bound = abs(f.back()) * maxc * static_cast<unsigned long>(n + 1);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n + 1);
    unsigned k = 1;
    Integer pk = static_cast<unsigned long>(best_p);
    while (pk <= bound) {
        pk *= static_cast<unsigned long>(best_p);
        ++k;
    }

    // Peel factors off one at a time: f = g_i * (lc * prod_{j>i} g_j).
    std::vector<IntPoly> lifted;
    IntPoly cur = f;
    for (std::size_t i = 0; i + 1 < best.size(); ++i) {
        ModPoly rest{F.reduce(IntPoly{cur.back()})};
        for (std::size_t j = i + 1; j < best.size(); ++j) {
            rest = F.mul(rest, best[j]);
        }
        IntPoly G, H;
        hensel_lift(F, cur, best[i], rest, k, G, H);
        lifted.push_back(G);
        cur = H;
    }
    {
        // Last factor: cur = lc * g (mod p^k); divide by lc mod p^k.
        Integer lc_inv;
        Integer lcm = f.back();
        mpz_invert(lc_inv.get_mpz_t(), lcm.get_mpz_t(), pk.get_mpz_t());
        IntPoly g = cur;
        for (auto &c : g) {
            c *= lc_inv;
        }
        reduce_mod(g, pk);
        lifted.push_back(g);
    }

    std::vector<IntPoly> out;
    IntPoly rem = f;
    std::vector<IntPoly> pool = lifted;
    std::size_t s = 1;
    while (2 * s <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) {
            idx[i] = i;
        }
        bool done = false;
        while (!done) {
            IntPoly cand{rem.back()};
            for (std::size_t i : idx) {
                cand = qpoly::mul(cand, pool[i]);
                reduce_mod(cand, pk);
            }
            cand = qpoly::primitive(symmetric(cand, pk));
            if (cand.size() > 1) {
                if (auto q = qpoly::divexact(rem, cand)) {
                    out.push_back(cand);
                    rem = *q;
                    std::vector<IntPoly> next;
                    for (std::size_t i = 0; i < pool.size(); ++i) {
                        if (std::find(idx.begin(), idx.end(), i) == idx.end()) {
                            next.push_back(pool[i]);
                        }
                    }
                    pool = std::move(next);
                    found = true;
                    break;
                }
            }
            next_subset(idx, pool.size(), done);
        }
        if (!found) {
            ++s;
        }
    }
    if (rem.size() > 1) {
        out.push_back(qpoly::primitive(rem));
    }
    return out;
}

} // namespace

std::vector<IntPoly> irreducible_factors(const IntPoly &p)
{
    IntPoly f = p;
    qpoly::trim(f);
    if (f.size() <= 1) {
        throw DomainError("cannot factor a constant polynomial");
    }
    std::vector<IntPoly> out;
    for (auto &[part, mult] : qpoly::squarefree_decomposition(f)) {
        (void)mult;
        for (auto &g : factor_squarefree(part)) {
            out.push_back(qpoly::primitive(g));
        }
    }
    std::sort(out.begin(), out.end(), [](const IntPoly &a, const IntPoly &b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) {
                return a[i] < b[i];
            }
        }
        return false;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace lcivt
