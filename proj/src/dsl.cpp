#include <cctype>
#include <sstream>

#include <lcivt/dsl.hpp>
#include <lcivt/errors.hpp>

namespace lcivt
{

namespace
{

// Polynomial expressions over K in one variable, with positions reported
// relative to a source line.
class Parser
{
public:
    Parser(std::string_view text, Mode m, std::size_t line, std::size_t col0, std::string var, bool allow_eps)
        : s_(text), m_(m), line_(line), col0_(col0), var_(std::move(var)), allow_eps_(allow_eps)
    {
    }

    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, line_, col0_ + pos_ + 1); }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool at_end()
    {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek()
    {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    bool accept_word(std::string_view w)
    {
        skip_ws();
        if (s_.substr(pos_, w.size()) != w) {
            return false;
        }
        std::size_t end = pos_ + w.size();
        if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) {
            return false;
        }
        pos_ = end;
        return true;
    }

    std::size_t pos() const { return pos_; }
    void set_pos(std::size_t p) { pos_ = p; }

    Integer integer()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a number");
        }
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    // p or p/q, no sign.
    Rational unsigned_rational()
    {
        Rational q(integer());
        if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            Integer d = integer();
            if (d == 0) {
                fail("zero denominator");
            }
            q = Rational(q.get_num(), d);
            q.canonicalize();
        }
        return q;
    }

    Rational signed_rational()
    {
        bool neg = accept('-');
        if (!neg) {
            accept('+');
        }
        Rational q = unsigned_rational();
        return neg ? Rational(-q) : q;
    }

    // After '^': 2, -2, (1/2), (-3/2).
    Rational power_exponent()
    {
        if (accept('(')) {
            Rational q = signed_rational();
            expect(')');
            return q;
        }
        return signed_rational();
    }

    unsigned long small_power()
    {
        std::size_t at = pos_;
        Rational q = power_exponent();
        if (q < 0 || q.get_den() != 1 || q > 100000) {
            pos_ = at;
            fail("power must be a nonnegative integer");
        }
        return q.get_num().get_ui();
    }

    KPoly constant(const LcNumber &c) { return KPoly{c}; }

    KPoly expr()
    {
        KPoly acc;
        bool first = true;
        while (true) {
            char c = peek();
            bool neg = false;
            if (c == '+' || c == '-') {
                ++pos_;
                neg = c == '-';
            } else if (!first) {
                break;
            }
            KPoly t = term();
            acc = neg ? kpoly::sub(acc, t) : kpoly::add(acc, t);
            first = false;
        }
        return acc;
    }

    KPoly term()
    {
        KPoly acc = factor();
        while (true) {
            if (accept('*')) {
                acc = kpoly::mul(acc, factor());
                continue;
            }
            skip_ws();
            if (pos_ + 1 < s_.size() && s_[pos_] == '/') {
                std::size_t save = pos_++;
                skip_ws();
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    Rational d = unsigned_rational();
                    if (d == 0) {
                        fail("division by zero");
                    }
                    acc = kpoly::scale(acc, lc_const(m_, Rational(1 / d)));
                    continue;
                }
                pos_ = save;
            }
            break;
        }
        return acc;
    }

    KPoly factor()
    {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= s_.size()) {
            fail("unexpected end of input");
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational q = unsigned_rational();
            if (accept('^')) {
                q = pow(q, small_power());
            }
            return constant(lc_const(m_, q));
        }
        if (c == '(') {
            ++pos_;
            KPoly inner = expr();
            expect(')');
            if (accept('^')) {
                unsigned long k = small_power();
                KPoly r{lc_const(m_, 1)};
                for (unsigned long i = 0; i < k; ++i) {
                    r = kpoly::mul(r, inner);
                }
                return r;
            }
            return inner;
        }
        if (accept_word("root")) {
            return constant(LcNumber(m_, root_literal()));
        }
        if (accept_word("O")) {
            expect('(');
            std::size_t inner_at = pos_;
            KPoly mono = expr();
            expect(')');
            kpoly::trim(mono);
            if (mono.size() != 1 || !mono[0].is_exact() || mono[0].terms().size() != 1 ||
                mono[0].leading_coeff() != RealAlgebraic(1)) {
                pos_ = inner_at;
                fail("O(...) takes a single monomial");
            }
            return constant(LcNumber(m_).truncated(mono[0].terms()[0].first));
        }
        if (accept_word("eps")) {
            return constant(lc_monomial(eps_exponent(at)));
        }
        if (s_.substr(pos_, 4) == "eps[") {
            pos_ += 3;
            return constant(lc_monomial(eps_exponent(at)));
        }
        if (!var_.empty() && accept_word(var_)) {
            unsigned long k = 1;
            if (accept('^')) {
                k = small_power();
            }
            KPoly r(k + 1, LcNumber(m_));
            r[k] = lc_const(m_, 1);
            return r;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    // After "eps": optional [k], optional ^power.
    Exponent eps_exponent(std::size_t at)
    {
        if (!allow_eps_) {
            pos_ = at;
            fail("eps is not allowed here");
        }
        std::optional<unsigned long> index;
        if (pos_ < s_.size() && s_[pos_] == '[') {
            ++pos_;
            Integer k = integer();
            expect(']');
            if (k == 0) {
                pos_ = at;
                fail("eps indices start at 1");
            }
            index = k.get_ui();
        }
        if (index && m_ == Mode::lc) {
            pos_ = at;
            fail("eps[k] in lc mode (mode mixing)");
        }
        if (!index && m_ == Mode::hahn) {
            pos_ = at;
            fail("bare eps in hahn mode (mode mixing)");
        }
        Rational q = 1;
        if (accept('^')) {
            q = power_exponent();
        }
        if (index) {
            return Exponent::hahn({{static_cast<unsigned>(*index), q}});
        }
        return Exponent(q);
    }

    // After "root": (poly in x, lo, hi)
    RealAlgebraic root_literal()
    {
        expect('(');
        std::size_t at = pos_;
        std::string saved = var_;
        bool saved_eps = allow_eps_;
        var_ = "x";
        allow_eps_ = false;
        KPoly p = expr();
        var_ = saved;
        allow_eps_ = saved_eps;
        expect(',');
        Rational lo = signed_rational();
        expect(',');
        Rational hi = signed_rational();
        expect(')');
        QPoly q;
        for (const auto &c : p) {
            q.push_back(c.is_zero() ? Rational(0) : lc_standard_part(c).rational());
        }
        Integer den = 1;
        for (const auto &c : q) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        }
        IntPoly ip;
        for (const auto &c : q) {
            Rational r = c * den;
            ip.push_back(r.get_num());
        }
        try {
            return RealAlgebraic::from_root(ip, lo, hi);
        } catch (const Error &e) {
            pos_ = at;
            fail(e.what());
        }
    }

private:
    std::string_view s_;
    Mode m_;
    std::size_t line_, col0_;
    std::size_t pos_ = 0;
    std::string var_;
    bool allow_eps_;
};

LcNumber single(const KPoly &p, Parser &ps, Mode m)
{
    if (p.size() > 1) {
        ps.fail("expected a number, found a polynomial");
    }
    return p.empty() ? LcNumber(m) : p[0];
}

LcNumber number_at(Parser &ps, Mode m)
{
    return single(ps.expr(), ps, m);
}

void finish(Parser &ps)
{
    if (!ps.at_end()) {
        ps.fail("unexpected trailing input");
    }
}

QPoly rational_poly(const KPoly &p)
{
    QPoly q;
    for (const auto &c : p) {
        q.push_back(c.is_zero() ? Rational(0) : lc_standard_part(c).rational());
    }
    return q;
}

std::string poly_text(const KPoly &p)
{
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        out += "(" + p[i].to_string() + ")";
        if (i == 1) {
            out += "*X";
        } else if (i > 1) {
            out += "*X^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

void render_into(const PSeries &s, std::vector<std::string> &lines)
{
    const SeriesNode *n = &s.node();
    if (auto p = dynamic_cast<const PolyNode *>(n)) {
        std::string line = "poly:";
        for (std::size_t i = 0; i < p->coeffs.size(); ++i) {
            line += (i ? ", " : " ") + p->coeffs[i].to_string();
        }
        if (p->coeffs.empty()) {
            line += " 0";
        }
        lines.push_back(line);
    } else if (auto r = dynamic_cast<const RatFunNode *>(n)) {
        lines.push_back("ratfun: (" + poly_text(r->num) + ") / (" + poly_text(r->den) + ")");
    } else if (auto t = dynamic_cast<const TermRuleNode *>(n)) {
        std::string line = "term: sign=";
        line += t->alternating ? "(-1)^n" : "1";
        line += " scale=" + to_string(t->scale);
        line += " expo=" + (t->seq ? std::string("seq(n)") : qpoly::to_string(t->expo, "n"));
        if (t->offset) {
            line += " offset=" + std::to_string(t->offset);
        }
        lines.push_back(line);
    } else if (auto a = dynamic_cast<const SumNode *>(n)) {
        render_into(a->a, lines);
        render_into(a->b, lines);
        lines.push_back("sum:");
    } else if (auto c = dynamic_cast<const ScalarMulNode *>(n)) {
        render_into(c->s, lines);
        lines.push_back("scale: " + c->c.to_string());
    } else if (auto l = dynamic_cast<const LinearSubNode *>(n)) {
        render_into(l->s, lines);
        lines.push_back("subst: h=" + l->h.to_string() + " k=" + l->k.to_string());
    } else if (auto d = dynamic_cast<const DerivativeNode *>(n)) {
        render_into(d->s, lines);
        lines.push_back("deriv:");
    } else {
        throw DomainError("series has no source form");
    }
}

} // namespace

LcNumber parse_lcnumber(std::string_view text, Mode m)
{
    Parser ps(text, m, 1, 0, "", true);
    LcNumber x = number_at(ps, m);
    finish(ps);
    return x;
}

std::pair<LcNumber, LcNumber> parse_interval(std::string_view text, Mode m)
{
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(' || c == '[') {
            ++depth;
        } else if (c == ')' || c == ']') {
            --depth;
        } else if (c == ',' && depth == 0) {
            Parser left(text.substr(0, i), m, 1, 0, "", true);
            LcNumber a = number_at(left, m);
            finish(left);
            Parser right(text.substr(i + 1), m, 1, i + 1, "", true);
            LcNumber b = number_at(right, m);
            finish(right);
            return {a, b};
        }
    }
    throw ParseError("interval needs two endpoints separated by ','", 1, text.size() + 1);
}

PSeries parse_series(std::string_view text, Mode m)
{
    std::vector<PSeries> stack;
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        const std::size_t line_start = start;
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::size_t b = 0;
        while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) {
            ++b;
        }
        if (b == line.size()) {
            continue;
        }
        std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError("expected '<kind>:'", line_no, b + 1);
        }
        std::string kind(line.substr(b, colon - b));
        while (!kind.empty() && std::isspace(static_cast<unsigned char>(kind.back()))) {
            kind.pop_back();
        }
        std::string_view body = line.substr(colon + 1);
        const std::size_t col0 = colon + 1;
        (void)line_start;
        auto need = [&](std::size_t k) {
            if (stack.size() < k) {
                throw ParseError("'" + kind + ":' needs " + std::to_string(k) + " series above it", line_no, b + 1);
            }
        };
        try {
            if (kind == "poly") {
                KPoly coeffs;
                std::size_t from = 0;
                int depth = 0;
                for (std::size_t i = 0; i <= body.size(); ++i) {
                    char c = i < body.size() ? body[i] : ',';
                    if (c == '(' || c == '[') {
                        ++depth;
                    } else if (c == ')' || c == ']') {
                        --depth;
                    } else if (c == ',' && depth == 0) {
                        Parser ps(body.substr(from, i - from), m, line_no, col0 + from, "", true);
                        coeffs.push_back(number_at(ps, m));
                        finish(ps);
                        from = i + 1;
                    }
                }
                kpoly::trim(coeffs);
                stack.push_back(ps_poly(m, coeffs));
            } else if (kind == "ratfun") {
                Parser ps(body, m, line_no, col0, "X", true);
                KPoly num = ps.expr();
                KPoly den{lc_const(m, 1)};
                if (ps.accept('/')) {
                    den = ps.expr();
                }
                finish(ps);
                kpoly::trim(den);
                if (den.empty()) {
                    ps.fail("zero denominator");
                }
                try {
                    stack.push_back(ps_ratfun(m, num, den));
                } catch (const Error &e) {
                    throw ParseError(std::string("series not certifiable: ") + e.what(), line_no, col0 + 1);
                }
            } else if (kind == "term") {
                Parser ps(body, m, line_no, col0, "", false);
                bool alternating = false, seq = false;
                Rational scale = 1;
                QPoly expo;
                std::size_t offset = 0;
                bool have_expo = false;
                while (!ps.at_end()) {
                    std::string key;
                    if (ps.accept_word("sign")) {
                        key = "sign";
                    } else if (ps.accept_word("scale")) {
                        key = "scale";
                    } else if (ps.accept_word("expo")) {
                        key = "expo";
                    } else if (ps.accept_word("offset")) {
                        key = "offset";
                    } else {
                        ps.fail("expected sign=, scale=, expo= or offset=");
                    }
                    ps.expect('=');
                    if (key == "sign") {
                        std::size_t at = ps.pos();
                        if (ps.accept('(')) {
                            ps.expect('-');
                            if (ps.integer() != 1) {
                                ps.set_pos(at);
                                ps.fail("sign must be 1 or (-1)^n");
                            }
                            ps.expect(')');
                            ps.expect('^');
                            if (!ps.accept_word("n")) {
                                ps.set_pos(at);
                                ps.fail("sign must be 1 or (-1)^n");
                            }
                            alternating = true;
                        } else if (ps.integer() == 1) {
                            alternating = false;
                        } else {
                            ps.set_pos(at);
                            ps.fail("sign must be 1 or (-1)^n");
                        }
                    } else if (key == "scale") {
                        scale = ps.signed_rational();
                    } else if (key == "offset") {
                        offset = ps.integer().get_ui();
                    } else {
                        have_expo = true;
                        std::size_t at = ps.pos();
                        if (ps.accept_word("seq")) {
                            ps.expect('(');
                            if (!ps.accept_word("n")) {
                                ps.fail("expected seq(n)");
                            }
                            ps.expect(')');
                            if (m != Mode::hahn) {
                                ps.set_pos(at);
                                ps.fail("seq(n) in lc mode (mode mixing)");
                            }
                            seq = true;
                        } else {
                            Parser sub(body.substr(at), m, line_no, col0 + at, "n", false);
                            expo = rational_poly(sub.expr());
                            ps.set_pos(at + sub.pos());
                        }
                    }
                }
                if (!have_expo) {
                    throw ParseError("term rule needs expo=", line_no, col0 + 1);
                }
                stack.push_back(seq ? ps_term_rule_seq(alternating, scale, offset)
                                    : ps_term_rule(m, alternating, scale, expo, offset));
            } else if (kind == "sum") {
                Parser ps(body, m, line_no, col0, "", true);
                finish(ps);
                need(2);
                PSeries rhs = stack.back();
                stack.pop_back();
                stack.back() = ps_sum(stack.back(), rhs);
            } else if (kind == "scale") {
                need(1);
                Parser ps(body, m, line_no, col0, "", true);
                LcNumber c = number_at(ps, m);
                finish(ps);
                stack.back() = ps_scale(c, stack.back());
            } else if (kind == "deriv") {
                Parser ps(body, m, line_no, col0, "", true);
                finish(ps);
                need(1);
                stack.back() = ps_derivative(stack.back());
            } else if (kind == "subst") {
                need(1);
                Parser ps(body, m, line_no, col0, "", true);
                std::optional<LcNumber> h, k;
                while (!ps.at_end()) {
                    if (ps.accept_word("h")) {
                        ps.expect('=');
                        h = number_at(ps, m);
                    } else if (ps.accept_word("k")) {
                        ps.expect('=');
                        k = number_at(ps, m);
                    } else {
                        ps.fail("expected h= or k=");
                    }
                }
                stack.back() = ps_linear_sub(h ? *h : lc_const(m, 1), k ? *k : LcNumber(m), stack.back());
            } else {
                throw ParseError("unknown line kind '" + kind + "'", line_no, b + 1);
            }
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            throw ParseError(e.what(), line_no, b + 1);
        }
    }
    if (stack.size() != 1) {
        throw ParseError(stack.empty() ? "no series defined"
                                       : std::to_string(stack.size()) + " series left; combine them with sum:",
                         line_no, 1);
    }
    return stack.back();
}

std::string render_series(const PSeries &s)
{
    std::vector<std::string> lines;
    render_into(s, lines);
    std::string out;
    for (const auto &l : lines) {
        out += l + "\n";
    }
    return out;
}

} // namespace lcivt
