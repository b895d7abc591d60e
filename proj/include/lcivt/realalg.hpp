#ifndef LCIVT_REALALG_HPP
#define LCIVT_REALALG_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <lcivt/qpoly.hpp>
#include <lcivt/rational.hpp>

namespace lcivt
{

// An exact real algebraic number. Rationals are stored directly; irrational
// values carry their minimal polynomial over Z (primitive, irreducible,
// degree >= 2) and an open rational interval isolating the root. Values are
// immutable; interval refinement happens behind a per-value lock.
class RealAlgebraic
{
public:
    RealAlgebraic() : value_(Rational(0)) {}
    RealAlgebraic(const Rational &q) : value_(q) {}
    RealAlgebraic(long n) : value_(Rational(n)) {}
    RealAlgebraic(int n) : value_(Rational(n)) {}

    // The unique root of `poly` inside the open interval (lo, hi); the
    // interval must contain exactly one distinct real root of `poly`.
    static RealAlgebraic from_root(const IntPoly &poly, const Rational &lo, const Rational &hi);

    bool is_rational() const { return std::holds_alternative<Rational>(value_); }
    // Precondition: is_rational().
    const Rational &rational() const { return std::get<Rational>(value_); }
    bool is_zero() const { return is_rational() && rational() == 0; }

    // Minimal polynomial; den*x - num for rationals.
    IntPoly defining_poly() const;
    // Current isolating interval; degenerate [q, q] for rationals.
    std::pair<Rational, Rational> interval() const;
    // Halves the isolating interval until its width is below `width`.
    void refine(const Rational &width) const;

    int sign() const;
    int compare(const RealAlgebraic &other) const;
    int compare(const Rational &q) const;

    RealAlgebraic operator-() const;
    RealAlgebraic inverse() const;
    RealAlgebraic pow(unsigned long n) const;
    // Real n-th root; requires a nonnegative value when n is even.
    RealAlgebraic nth_root(unsigned long n) const;

    friend RealAlgebraic operator+(const RealAlgebraic &a, const RealAlgebraic &b);
    friend RealAlgebraic operator-(const RealAlgebraic &a, const RealAlgebraic &b);
    friend RealAlgebraic operator*(const RealAlgebraic &a, const RealAlgebraic &b);
    friend RealAlgebraic operator/(const RealAlgebraic &a, const RealAlgebraic &b);

    RealAlgebraic &operator+=(const RealAlgebraic &b) { return *this = *this + b; }
    RealAlgebraic &operator-=(const RealAlgebraic &b) { return *this = *this - b; }
    RealAlgebraic &operator*=(const RealAlgebraic &b) { return *this = *this * b; }

    friend bool operator==(const RealAlgebraic &a, const RealAlgebraic &b) { return a.compare(b) == 0; }
    friend bool operator!=(const RealAlgebraic &a, const RealAlgebraic &b) { return a.compare(b) != 0; }
    friend bool operator<(const RealAlgebraic &a, const RealAlgebraic &b) { return a.compare(b) < 0; }
    friend bool operator>(const RealAlgebraic &a, const RealAlgebraic &b) { return a.compare(b) > 0; }
    friend bool operator<=(const RealAlgebraic &a, const RealAlgebraic &b) { return a.compare(b) <= 0; }
    friend bool operator>=(const RealAlgebraic &a, const RealAlgebraic &b) { return a.compare(b) >= 0; }

    // "p/q" for rationals, "root(<poly>, <lo>, <hi>)" otherwise. The interval
    // printed is the canonical isolating interval of the minimal polynomial,
    // so the rendering does not depend on refinement history.
    std::string to_string() const;

    struct Irrational;

private:
    explicit RealAlgebraic(std::shared_ptr<Irrational> p) : value_(std::move(p)) {}

    static RealAlgebraic make(const IntPoly &irreducible, const Rational &lo, const Rational &hi);
    const Irrational &irr() const { return *std::get<std::shared_ptr<Irrational>>(value_); }

    friend RealAlgebraic combine(int op, const RealAlgebraic &a, const RealAlgebraic &b);
    friend std::vector<struct AlgRoot> isolate_real_roots(const QPoly &p, const std::optional<std::pair<Rational, Rational>> &range);

    std::variant<Rational, std::shared_ptr<Irrational>> value_;
};

using AlgPoly = std::vector<RealAlgebraic>;

struct AlgRoot {
    RealAlgebraic value;
    unsigned multiplicity;
};

// Optional closed rational range [lo, hi].
using RationalRange = std::optional<std::pair<Rational, Rational>>;

// Distinct real roots of p (ascending) with multiplicities. Throws
// DomainError("indeterminate roots") on the zero polynomial.
std::vector<AlgRoot> isolate_real_roots(const QPoly &p, const RationalRange &range = std::nullopt);
std::vector<AlgRoot> isolate_real_roots(const AlgPoly &p, const RationalRange &range = std::nullopt);

int alg_compare(const RealAlgebraic &a, const RealAlgebraic &b);

enum class ArithOp { add, sub, mul, div };
RealAlgebraic alg_arith(ArithOp op, const RealAlgebraic &a, const RealAlgebraic &b);

RealAlgebraic alg_eval(const AlgPoly &p, const RealAlgebraic &x);
int alg_sign_at(const AlgPoly &p, const RealAlgebraic &x);

AlgPoly alg_derivative(const AlgPoly &p);

// Integer polynomial vanishing at every real root of p (product over conjugates).
QPoly alg_norm(const AlgPoly &p);

} // namespace lcivt

#endif
