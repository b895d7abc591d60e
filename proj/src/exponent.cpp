#include <algorithm>

#include <lcivt/errors.hpp>
#include <lcivt/exponent.hpp>

namespace lcivt
{

const char *mode_name(Mode m) { return m == Mode::lc ? "lc" : "hahn"; }

Exponent Exponent::zero(Mode m)
{
    Exponent e;
    e.mode_ = m;
    return e;
}

Exponent Exponent::hahn(std::vector<Entry> entries)
{
    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) { return a.first < b.first; });
    Exponent e;
    e.mode_ = Mode::hahn;
    for (auto &[n, v] : entries) {
        v.canonicalize();
        if (n == 0) {
            throw DomainError("sequence exponents are indexed from 1");
        }
        if (!e.entries_.empty() && e.entries_.back().first == n) {
            e.entries_.back().second += v;
        } else {
            e.entries_.emplace_back(n, v);
        }
    }
    e.entries_.erase(std::remove_if(e.entries_.begin(), e.entries_.end(), [](const Entry &x) { return x.second == 0; }),
                     e.entries_.end());
    return e;
}

Exponent Exponent::basis(unsigned n) { return hahn({{n, Rational(1)}}); }

bool Exponent::is_zero() const { return mode_ == Mode::lc ? value_ == 0 : entries_.empty(); }

int Exponent::sign() const
{
    if (mode_ == Mode::lc) {
        return sgn(value_);
    }
    return entries_.empty() ? 0 : sgn(entries_.back().second);
}

unsigned Exponent::top_index() const { return entries_.empty() ? 0 : entries_.back().first; }

Rational Exponent::at(unsigned n) const
{
    for (const auto &[i, v] : entries_) {
        if (i == n) {
            return v;
        }
    }
    return 0;
}

Mode common_mode(const Exponent &a, const Exponent &b)
{
    if (a.mode() == b.mode()) {
        return a.mode();
    }
    // A plain zero is the neutral element of either group.
    if (a.mode() == Mode::lc && a.is_zero()) {
        return b.mode();
    }
    if (b.mode() == Mode::lc && b.is_zero()) {
        return a.mode();
    }
    throw DomainError("cannot mix lc and hahn exponents");
}

Exponent Exponent::operator-() const { return Rational(-1) * *this; }

Exponent operator+(const Exponent &a, const Exponent &b)
{
    if (common_mode(a, b) == Mode::lc) {
        return Exponent(Rational(a.value_ + b.value_));
    }
    std::vector<Exponent::Entry> all = a.entries_;
    all.insert(all.end(), b.entries_.begin(), b.entries_.end());
    return Exponent::hahn(std::move(all));
}

Exponent operator-(const Exponent &a, const Exponent &b) { return a + (-b); }

Exponent operator*(const Rational &k, const Exponent &a)
{
    if (a.mode_ == Mode::lc) {
        return Exponent(Rational(k * a.value_));
    }
    std::vector<Exponent::Entry> scaled;
    for (const auto &[n, v] : a.entries_) {
        scaled.emplace_back(n, k * v);
    }
    return Exponent::hahn(std::move(scaled));
}

int compare(const Exponent &a, const Exponent &b)
{
    if (common_mode(a, b) == Mode::lc) {
        int c = cmp(a.value_, b.value_);
        return (c > 0) - (c < 0);
    }
    auto ia = a.entries_.rbegin(), ib = b.entries_.rbegin();
    while (ia != a.entries_.rend() || ib != b.entries_.rend()) {
        unsigned na = ia != a.entries_.rend() ? ia->first : 0;
        unsigned nb = ib != b.entries_.rend() ? ib->first : 0;
        if (na > nb) {
            return sgn(ia->second);
        }
        if (nb > na) {
            return -sgn(ib->second);
        }
        int c = cmp(ia->second, ib->second);
        if (c != 0) {
            return (c > 0) - (c < 0);
        }
        ++ia;
        ++ib;
    }
    return 0;
}

std::string Exponent::to_string() const
{
    if (mode_ == Mode::lc) {
        return lcivt::to_string(value_);
    }
    std::string out = "{";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += std::to_string(entries_[i].first) + ":" + lcivt::to_string(entries_[i].second);
    }
    return out + "}";
}

Exponent parse_exponent(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += c;
        }
    }
    if (s.empty()) {
        throw DomainError("empty exponent");
    }
    if (s.front() != '{') {
        return Exponent(parse_rational(s));
    }
    if (s.back() != '}') {
        throw DomainError("unterminated sequence exponent: " + s);
    }
    std::vector<Exponent::Entry> entries;
    std::string body = s.substr(1, s.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw DomainError("sequence exponent entries look like index:value, got " + item);
        }
        Rational idx = parse_rational(item.substr(0, colon));
        if (idx.get_den() != 1 || idx <= 0) {
            throw DomainError("sequence index must be a positive integer: " + item);
        }
        entries.emplace_back(static_cast<unsigned>(idx.get_num().get_ui()), parse_rational(item.substr(colon + 1)));
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return Exponent::hahn(std::move(entries));
}

std::optional<unsigned long> min_multiple_at_least(const Exponent &step, const Exponent &target)
{
    if (step.sign() <= 0) {
        throw DomainError("step exponent must be positive");
    }
    if (target.sign() <= 0) {
        return 0UL;
    }
    Rational ratio;
    if (common_mode(step, target) == Mode::lc) {
        ratio = target.value() / step.value();
    } else {
        unsigned ts = step.top_index(), tt = target.top_index();
        if (tt > ts) {
            return std::nullopt;
        }
        if (tt < ts) {
            return 1UL;
        }
        ratio = target.at(tt) / step.at(ts);
    }
    Integer k = ceil(ratio);
    if (k < 0) {
        k = 0;
    }
    while (Rational(k) * step < target) {
        ++k;
    }
    if (!k.fits_ulong_p()) {
        throw ResourceError("exponent ratio too large");
    }
    return k.get_ui();
}

} // namespace lcivt
