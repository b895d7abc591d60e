#ifndef LCIVT_EXPONENT_HPP
#define LCIVT_EXPONENT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <lcivt/rational.hpp>

namespace lcivt
{

enum class Mode { lc, hahn };

const char *mode_name(Mode m);

// Element of the value group. LC: a rational. HAHN: a finitely supported
// rational sequence indexed by positive integers, ordered by the entry at the
// largest index where two sequences differ.
class Exponent
{
public:
    using Entry = std::pair<unsigned, Rational>;

    Exponent() = default;
    Exponent(const Rational &q) : value_(q) { value_.canonicalize(); }
    Exponent(long q) : value_(q) {}
    Exponent(int q) : value_(q) {}

    static Exponent zero(Mode m);
    // Entries with zero value are dropped; indices must be positive.
    static Exponent hahn(std::vector<Entry> entries);
    // Exponent of eps[n].
    static Exponent basis(unsigned n);

    Mode mode() const { return mode_; }
    bool is_zero() const;
    int sign() const;
    // LC value; precondition mode() == lc.
    const Rational &value() const { return value_; }
    // HAHN entries ascending by index.
    const std::vector<Entry> &entries() const { return entries_; }
    // Largest index in the support (0 when zero or LC).
    unsigned top_index() const;
    // Value at index n (HAHN).
    Rational at(unsigned n) const;

    Exponent operator-() const;
    friend Exponent operator+(const Exponent &a, const Exponent &b);
    friend Exponent operator-(const Exponent &a, const Exponent &b);
    friend Exponent operator*(const Rational &k, const Exponent &a);
    Exponent &operator+=(const Exponent &b) { return *this = *this + b; }

    friend int compare(const Exponent &a, const Exponent &b);
    friend bool operator==(const Exponent &a, const Exponent &b) { return compare(a, b) == 0; }
    friend bool operator!=(const Exponent &a, const Exponent &b) { return compare(a, b) != 0; }
    friend bool operator<(const Exponent &a, const Exponent &b) { return compare(a, b) < 0; }
    friend bool operator>(const Exponent &a, const Exponent &b) { return compare(a, b) > 0; }
    friend bool operator<=(const Exponent &a, const Exponent &b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Exponent &a, const Exponent &b) { return compare(a, b) >= 0; }

    // "3/2" in LC mode, "{1:2,3:-1/2}" in HAHN mode.
    std::string to_string() const;

private:
    Mode mode_ = Mode::lc;
    Rational value_;
    std::vector<Entry> entries_;
};

// Parses "3/2" (LC) or "{1:50}" (HAHN).
Exponent parse_exponent(std::string_view text);

// Smallest integer k >= 0 with k*step >= target; step must be positive.
// Empty when no multiple of step reaches target (possible in HAHN mode,
// where no element is topologically nilpotent).
std::optional<unsigned long> min_multiple_at_least(const Exponent &step, const Exponent &target);

// Mode of both operands; throws DomainError when they differ.
Mode common_mode(const Exponent &a, const Exponent &b);

} // namespace lcivt

#endif
