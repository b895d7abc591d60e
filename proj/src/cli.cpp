#include <chrono>
#include <cstdio>
#include <sstream>

#include <lcivt/cli.hpp>
#include <lcivt/dsl.hpp>
#include <lcivt/errors.hpp>

namespace lcivt
{

namespace
{

std::string str(std::size_t n) { return std::to_string(n); }

Json poly_json(const KPoly &p)
{
    Json a = Json::array();
    for (const auto &c : p) {
        a.push_back(c.to_string());
    }
    return a;
}

std::string distance_text(const std::optional<Exponent> &d) { return d ? d->to_string() : "inf"; }

Exponent cutoff_or(const RunConfig &cfg, const Exponent &dflt)
{
    if (!cfg.cutoff) {
        return dflt;
    }
    try {
        Exponent e = parse_exponent(*cfg.cutoff);
        if (e.mode() != cfg.mode && !e.is_zero()) {
            throw ParseError("cutoff mode does not match --mode", 1, 1);
        }
        return e;
    } catch (const ParseError &) {
        throw;
    } catch (const Error &e) {
        throw ParseError(std::string("bad cutoff: ") + e.what(), 1, 1);
    }
}

LcNumber point(const RunConfig &cfg)
{
    if (!cfg.at) {
        throw DomainError("command '" + cfg.command + "' needs --at");
    }
    return parse_lcnumber(*cfg.at, cfg.mode);
}

std::pair<LcNumber, LcNumber> interval(const RunConfig &cfg)
{
    if (!cfg.interval) {
        throw DomainError("command '" + cfg.command + "' needs --interval");
    }
    return parse_interval(*cfg.interval, cfg.mode);
}

void root_rows(Report &rep, const std::vector<RootReport> &roots)
{
    rep.csv_header = {"root", "multiplicity", "residual_valuation", "a", "b", "unresolved"};
    for (const auto &r : roots) {
        rep.csv_rows.push_back({r.root.to_string(), str(r.multiplicity), r.residual_valuation.to_string(),
                                r.a.to_string(), r.b.to_string(), r.unresolved ? "true" : "false"});
    }
}

void track_rows(Report &rep, const TrackResult &t)
{
    rep.csv_header = {"n", "kind", "location", "distance_valuation"};
    for (const auto &rec : t.records) {
        for (const auto &it : rec.items) {
            rep.csv_rows.push_back(
                {str(rec.n), track_kind_name(it.kind), it.location.to_string(), distance_text(it.distance_valuation)});
        }
    }
}

std::size_t param_size(const std::map<std::string, std::string> &params, const std::string &key, std::size_t dflt,
                       std::size_t lo, std::size_t hi)
{
    auto it = params.find(key);
    if (it == params.end()) {
        return dflt;
    }
    std::size_t v = 0;
    try {
        v = std::stoul(it->second);
    } catch (...) {
        throw ParseError("parameter " + key + " must be an integer", 1, 1);
    }
    if (v < lo || v > hi) {
        throw DomainError("parameter " + key + " must lie in [" + str(lo) + ", " + str(hi) + "]");
    }
    return v;
}

std::vector<std::size_t> parse_list(const std::string &text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoul(item));
        } catch (...) {
            throw ParseError("bad index list '" + text + "'", 1, 1);
        }
    }
    return out;
}

Json sign_row(Report &rep, const LcNumber &x, int sign, int expected)
{
    bool ok = sign == expected;
    if (!ok) {
        rep.failures.push_back("sign of S(" + x.to_string() + ") is " + std::to_string(sign) + ", expected " +
                               std::to_string(expected));
    }
    rep.csv_rows.push_back({x.to_string(), std::to_string(sign), std::to_string(expected), ok ? "true" : "false"});
    return Json{{"x", x.to_string()}, {"sign", std::to_string(sign)}, {"expected", std::to_string(expected)}, {"ok", ok}};
}

PSeries nilpotent_series() { return ps_term_rule(Mode::lc, true, 1, QPoly{0, 0, 1}); }

PSeries double_zero_series()
{
    const Mode m = Mode::lc;
    KPoly f = {lc_const(m, 2), -(lc_monomial(Exponent(1), RealAlgebraic(2)) + lc_monomial(Exponent(2)))};
    KPoly sq = {lc_const(m, 1), lc_const(m, -2), lc_const(m, 1)};
    return ps_ratfun(m, kpoly::mul(sq, f), {lc_const(m, 1), -lc_monomial(Exponent(1))});
}

void flatten(const Json &j, const std::string &path, std::string &out)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(*it, path.empty() ? it.key() : path + "." + it.key(), out);
        }
    } else if (j.is_array()) {
        if (j.empty()) {
            out += path + " = []\n";
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], path + "[" + str(i) + "]", out);
        }
    } else if (j.is_string()) {
        out += path + " = " + j.get<std::string>() + "\n";
    } else {
        out += path + " = " + j.dump() + "\n";
    }
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string format_name(OutputFormat f)
{
    switch (f) {
    case OutputFormat::json:
        return "json";
    case OutputFormat::csv:
        return "csv";
    case OutputFormat::text:
        return "text";
    }
    return "";
}

OutputFormat parse_format(const std::string &s)
{
    if (s == "json") {
        return OutputFormat::json;
    }
    if (s == "csv") {
        return OutputFormat::csv;
    }
    if (s == "text") {
        return OutputFormat::text;
    }
    throw ParseError("unknown output format '" + s + "'", 1, 1);
}

Mode parse_mode(const std::string &s)
{
    if (s == "lc") {
        return Mode::lc;
    }
    if (s == "hahn") {
        return Mode::hahn;
    }
    throw ParseError("unknown mode '" + s + "'", 1, 1);
}

Json root_report_json(const RootReport &r)
{
    const Certificate &c = r.certificate;
    Json cert = Json::object();
    cert["sign_a"] = c.sign_a ? std::to_string(*c.sign_a) : "";
    cert["sign_b"] = c.sign_b ? std::to_string(*c.sign_b) : "";
    cert["N"] = str(c.N);
    cert["d"] = c.d.to_string();
    cert["P"] = poly_json(c.P);
    cert["B"] = poly_json(c.B);
    cert["achieved_cutoff"] = c.achieved_cutoff ? c.achieved_cutoff->to_string() : "";
    cert["degree_cap"] = str(c.degree_cap);
    return Json{{"root", r.root.to_string()},
                {"multiplicity", str(r.multiplicity)},
                {"residual_valuation", r.residual_valuation.to_string()},
                {"interval", Json::array({r.a.to_string(), r.b.to_string()})},
                {"unresolved", r.unresolved},
                {"certificate", cert}};
}

Json track_json(const TrackResult &t)
{
    Json recs = Json::array();
    for (const auto &rec : t.records) {
        Json items = Json::array();
        for (const auto &it : rec.items) {
            items.push_back(Json{{"kind", track_kind_name(it.kind)},
                                 {"location", it.location.to_string()},
                                 {"distance_valuation", distance_text(it.distance_valuation)}});
        }
        recs.push_back(Json{{"n", str(rec.n)}, {"items", items}});
    }
    return Json{{"records", recs}, {"nondecreasing", t.nondecreasing}};
}

Report run_example(const std::string &name, const std::map<std::string, std::string> &params, Mode mode,
                   const std::optional<std::string> &cutoff)
{
    Report rep;
    auto cut = [&](const Exponent &dflt) {
        RunConfig c;
        c.mode = name == "hahn-signs" ? Mode::hahn : Mode::lc;
        c.cutoff = cutoff;
        return cutoff_or(c, dflt);
    };
    (void)mode;
    if (name == "nilpotent-signs") {
        const std::size_t L = param_size(params, "l", 3, 1, 5);
        const Exponent c = cut(default_sign_cutoff(Mode::lc));
        auto s = nilpotent_series();
        rep.csv_header = {"x", "sign", "expected", "ok"};
        Json table = Json::array();
        for (std::size_t l = 1; l <= L; ++l) {
            const long e = 4 * static_cast<long>(l);
            LcNumber up = lc_monomial(Exponent(-e)), down = lc_monomial(Exponent(-e - 2));
            table.push_back(sign_row(rep, up, ps_sign_at(s, up, c), 1));
            table.push_back(sign_row(rep, down, ps_sign_at(s, down, c), -1));
        }
        rep.results["series"] = render_series(s);
        rep.results["table"] = table;
        rep.certificates["cutoff"] = c.to_string();
    } else if (name == "hahn-signs") {
        const std::size_t H = param_size(params, "h", 6, 2, 8);
        const Exponent c = cut(default_sign_cutoff(Mode::hahn));
        auto s = ps_term_rule_seq(true, 1);
        rep.csv_header = {"x", "sign", "expected", "ok"};
        Json table = Json::array();
        for (std::size_t h = 2; h <= H; ++h) {
            LcNumber x = lc_monomial(-Exponent::basis(static_cast<unsigned>(h)));
            table.push_back(sign_row(rep, x, ps_sign_at(s, x, c), h % 2 == 0 ? 1 : -1));
        }
        rep.results["series"] = render_series(s);
        rep.results["table"] = table;
        rep.certificates["cutoff"] = c.to_string();
    } else if (name == "nilpotent-roots") {
        const std::size_t L = param_size(params, "l", 2, 1, 5);
        const Exponent c = cut(default_root_cutoff(Mode::lc));
        auto s = nilpotent_series();
        Json roots = Json::array();
        std::vector<RootReport> all;
        for (std::size_t l = 1; l <= L; ++l) {
            const long e = 4 * static_cast<long>(l);
            LcNumber a = lc_monomial(Exponent(-e)), b = lc_monomial(Exponent(-e - 2));
            RootReport r = ivt_root(s, a, b, c);
            bool inside = lc_compare(a, r.root) < 0 && lc_compare(r.root, b) < 0;
            LcNumber res = ps_eval(s, r.root, c);
            bool certified = res.is_zero() || (res.truncated(c).empty() && (res.is_exact() || *res.cutoff() >= c));
            if (!inside || !certified) {
                rep.failures.push_back("l=" + str(l) + ": root not certified inside the interval");
            }
            Json j = root_report_json(r);
            j["l"] = str(l);
            roots.push_back(j);
            all.push_back(r);
        }
        root_rows(rep, all);
        rep.results["series"] = render_series(s);
        rep.results["roots"] = roots;
        rep.certificates["cutoff"] = c.to_string();
    } else if (name == "double-zero") {
        auto it = params.find("n");
        std::vector<std::size_t> ns = it == params.end() ? std::vector<std::size_t>{10} : parse_list(it->second);
        for (std::size_t n : ns) {
            if (n < 1 || n > 30) {
                throw DomainError("parameter n must lie in [1, 30]");
            }
        }
        const Exponent c = cut(default_root_cutoff(Mode::lc));
        auto t = double_zero_series();
        const Mode m = Mode::lc;
        const std::pair<LcNumber, LcNumber> window{lc_const(m, Rational(3, 4)), lc_const(m, Rational(5, 4))};
        RootReport target;
        target.root = lc_const(m, 1);
        target.multiplicity = multiplicity_at(t, target.root, c);
        if (target.multiplicity != 2) {
            rep.failures.push_back("order of the zero at 1 is " + str(target.multiplicity) + ", expected 2");
        }
        Json rows = Json::array();
        TrackResult all;
        for (std::size_t n : ns) {
            KPoly Tn = ps_partial_sum(t, n);
            bool no_change = count_zeros(ps_poly(m, Tn), window.first, window.second, c).empty();
            for (int k = 0; k <= 16; ++k) {
                LcNumber v = kpoly::eval(m, Tn, lc_const(m, Rational(3, 4) + Rational(k, 32)), c);
                no_change = no_change && !v.empty() && v.sign() > 0;
            }
            TrackResult tr = track_extremes(t, target, {n}, window, c);
            std::optional<TrackItem> best;
            for (const auto &item : tr.records[0].items) {
                bool near = !item.distance_valuation || item.distance_valuation->sign() > 0;
                if (item.kind == TrackKind::min && near) {
                    best = item;
                }
            }
            if (!no_change) {
                rep.failures.push_back("T_" + str(n) + " changes sign on [3/4,5/4]");
            }
            if (!best) {
                rep.failures.push_back("T_" + str(n) + " has no minimum at positive distance valuation from 1");
            }
            Json row{{"n", str(n)},
                     {"no_sign_change", no_change},
                     {"extreme_near_1", best.has_value()},
                     {"summary", std::string("no sign change of T_n on [3/4,5/4]: ") + (no_change ? "true" : "false") +
                                     "; extreme of T_n at distance valuation > 0 from 1: " +
                                     (best ? "true" : "false")}};
            if (best) {
                row["extreme"] = Json{{"kind", track_kind_name(best->kind)},
                                      {"location", best->location.to_string()},
                                      {"distance_valuation", distance_text(best->distance_valuation)}};
            }
            rows.push_back(row);
            all.records.push_back(tr.records[0]);
        }
        track_rows(rep, all);
        rep.results["series"] = render_series(t);
        rep.results["multiplicity_at_1"] = str(target.multiplicity);
        rep.results["partial_sums"] = rows;
        rep.certificates["cutoff"] = c.to_string();
    } else {
        throw DomainError("unknown example '" + name + "'");
    }
    rep.results["ok"] = rep.failures.empty();
    return rep;
}

Report run_command(const RunConfig &cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    Json config = Json::object();
    config["mode"] = mode_name(cfg.mode);
    config["command"] = cfg.command;
    config["cutoff"] = cfg.cutoff ? *cfg.cutoff : "";
    config["degree_cap"] = cfg.degree_cap ? str(*cfg.degree_cap) : "";
    config["series"] = cfg.series_source;
    config["interval"] = cfg.interval ? *cfg.interval : "";
    config["at"] = cfg.at ? *cfg.at : "";
    Json nl = Json::array();
    for (auto n : cfg.n_list) {
        nl.push_back(str(n));
    }
    config["n_list"] = nl;
    config["example"] = cfg.example;
    Json params = Json::object();
    for (const auto &[k, v] : cfg.params) {
        params[k] = v;
    }
    config["params"] = params;
    config["output"] = format_name(cfg.output);

    if (cfg.command == "example") {
        auto params = cfg.params;
        if (!cfg.n_list.empty() && !params.count("n")) {
            std::string joined;
            for (auto n : cfg.n_list) {
                joined += (joined.empty() ? "" : ",") + std::to_string(n);
            }
            params["n"] = joined;
        }
        rep = run_example(cfg.example, params, cfg.mode, cfg.cutoff);
    } else {
        const PSeries s = parse_series(cfg.series_source, cfg.mode);
        const Mode m = cfg.mode;
        if (cfg.command == "eval") {
            const Exponent c = cutoff_or(cfg, default_sign_cutoff(m));
            LcNumber x = point(cfg);
            LcNumber v = ps_eval(s, x, c);
            std::string sign;
            try {
                sign = std::to_string(ps_sign_at(s, x, c));
            } catch (const UndecidableError &) {
                sign = "undecided";
            }
            rep.results = Json{{"x", x.to_string()}, {"value", v.to_string()}, {"sign", sign}};
            rep.certificates["cutoff"] = c.to_string();
            rep.csv_header = {"x", "value", "sign"};
            rep.csv_rows.push_back({x.to_string(), v.to_string(), sign});
        } else if (cfg.command == "ivt") {
            const Exponent c = cutoff_or(cfg, default_root_cutoff(m));
            auto [a, b] = interval(cfg);
            RootReport r = ivt_root(s, a, b, c);
            rep.results = root_report_json(r);
            rep.certificates = Json{{"residual_valuation", r.residual_valuation.to_string()},
                                    {"sign_a", std::to_string(*r.certificate.sign_a)},
                                    {"sign_b", std::to_string(*r.certificate.sign_b)}};
            root_rows(rep, {r});
        } else if (cfg.command == "zeros") {
            const Exponent c = cutoff_or(cfg, default_root_cutoff(m));
            auto [a, b] = interval(cfg);
            auto roots = count_zeros(s, a, b, c, cfg.degree_cap);
            Json arr = Json::array();
            for (const auto &r : roots) {
                arr.push_back(root_report_json(r));
            }
            rep.results = Json{{"count", str(roots.size())}, {"roots", arr}};
            rep.certificates["cutoff"] = c.to_string();
            root_rows(rep, roots);
        } else if (cfg.command == "factor") {
            const Exponent c = cutoff_or(cfg, default_root_cutoff(m));
            PSeries t = s;
            std::string origin = "identity";
            if (cfg.interval) {
                auto [a, b] = interval(cfg);
                t = ps_transform_interval(s, a, b);
                origin = "transform";
            }
            NormalizedSeries ns = ps_normalize(t, cfg.degree_cap, c, origin);
            Factorization f = weierstrass_factor(ns, cfg.degree_cap, c);
            std::optional<Exponent> worst;
            for (const auto &x : factor_residual(ns, f)) {
                if (!x.empty() && (!worst || x.valuation() < *worst)) {
                    worst = x.valuation();
                }
            }
            rep.results = Json{{"N", str(f.N)},
                               {"d", ns.d.to_string()},
                               {"P", poly_json(f.P)},
                               {"B", poly_json(f.B)},
                               {"achieved_cutoff", f.achieved_cutoff.to_string()},
                               {"degree_cap", str(f.degree_cap)},
                               {"steps", str(f.steps)},
                               {"origin", origin}};
            rep.certificates = Json{{"residual_valuation", worst ? worst->to_string() : c.to_string()},
                                    {"cutoff", c.to_string()}};
            rep.csv_header = {"index", "P", "B"};
            for (std::size_t i = 0; i < std::max(f.P.size(), f.B.size()); ++i) {
                rep.csv_rows.push_back({str(i), i < f.P.size() ? f.P[i].to_string() : "0",
                                        i < f.B.size() ? f.B[i].to_string() : "0"});
            }
        } else if (cfg.command == "mult") {
            const Exponent c = cutoff_or(cfg, default_root_cutoff(m));
            LcNumber x = point(cfg);
            unsigned k = multiplicity_at(s, x, c);
            rep.results = Json{{"at", x.to_string()}, {"multiplicity", str(k)}};
            rep.certificates["cutoff"] = c.to_string();
            rep.csv_header = {"at", "multiplicity"};
            rep.csv_rows.push_back({x.to_string(), str(k)});
        } else if (cfg.command == "track-zeros" || cfg.command == "track-extremes") {
            const Exponent c = cutoff_or(cfg, default_root_cutoff(m));
            auto window = interval(cfg);
            if (cfg.n_list.empty()) {
                throw DomainError("command '" + cfg.command + "' needs --n-list");
            }
            RootReport target;
            if (cfg.at) {
                target.root = point(cfg);
                target.multiplicity = multiplicity_at(s, target.root, c);
                target.residual_valuation = c;
            } else if (cfg.command == "track-zeros") {
                target = ivt_root(s, window.first, window.second, c);
            } else {
                throw DomainError("command 'track-extremes' needs --at");
            }
            TrackResult t = cfg.command == "track-zeros" ? track_partial_sum_zeros(s, target, cfg.n_list, window, c)
                                                         : track_extremes(s, target, cfg.n_list, window, c);
            rep.results = track_json(t);
            rep.results["target"] = Json{{"root", target.root.to_string()}, {"multiplicity", str(target.multiplicity)}};
            rep.certificates["cutoff"] = c.to_string();
            track_rows(rep, t);
        } else {
            throw ParseError("unknown command '" + cfg.command + "'", 1, 1);
        }
    }
    rep.config = config;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string emit_report(const Report &r, OutputFormat format, bool with_timing)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", r.seconds);
    if (format == OutputFormat::csv) {
        std::string out;
        for (std::size_t i = 0; i < r.csv_header.size(); ++i) {
            out += (i ? "," : "") + csv_field(r.csv_header[i]);
        }
        out += "\n";
        for (const auto &row : r.csv_rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out += (i ? "," : "") + csv_field(row[i]);
            }
            out += "\n";
        }
        return out;
    }
    Json j = Json::object();
    j["config"] = r.config.is_null() ? Json::object() : r.config;
    j["results"] = r.results;
    j["certificates"] = r.certificates;
    j["failures"] = r.failures;
    if (with_timing) {
        j["timing"] = Json{{"seconds", std::string(buf)}};
    }
    if (format == OutputFormat::json) {
        return j.dump(2) + "\n";
    }
    std::string out;
    flatten(j, "", out);
    return out;
}

} // namespace lcivt
