#include <lcivt/errors.hpp>
#include <lcivt/rational.hpp>

namespace lcivt
{

std::string to_string(const Integer &x) { return x.get_str(); }

std::string to_string(const Rational &x) { return x.get_str(); }

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) {
        throw DomainError("empty rational literal");
    }
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
        throw DomainError("malformed rational literal '" + s + "'");
    }
    r.canonicalize();
    return r;
}

Integer ceil(const Rational &x)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Integer floor(const Rational &x)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Rational pow(const Rational &base, unsigned long exponent)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    return r;
}

bool exact_root(const Rational &x, unsigned long n, Rational &out)
{
    if (n == 0) {
        return false;
    }
    if (sgn(x) < 0 && n % 2 == 0) {
        return false;
    }
    Integer num = abs(x.get_num()), den = x.get_den();
    Integer rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) == 0) {
        return false;
    }
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) == 0) {
        return false;
    }
    out = Rational(sgn(x) < 0 ? Integer(-rn) : rn, rd);
    out.canonicalize();
    return true;
}

Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace lcivt
