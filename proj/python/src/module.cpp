#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <lcivt/cli.hpp>
#include <lcivt/dsl.hpp>
#include <lcivt/errors.hpp>

namespace py = pybind11;
using namespace lcivt;

namespace
{

Exponent to_cutoff(const py::object &c)
{
    return parse_exponent(py::str(c).cast<std::string>());
}

py::object to_py(const Json &j) { return py::module_::import("json").attr("loads")(j.dump()); }

LcNumber as_number(const py::object &x, Mode m)
{
    if (py::isinstance<LcNumber>(x)) {
        return x.cast<LcNumber>();
    }
    return parse_lcnumber(py::str(x).cast<std::string>(), m);
}

} // namespace

PYBIND11_MODULE(_lcivt, m)
{
    m.doc() = "Exact root finding for power series over Levi-Civita and Hahn-type fields";

    static py::exception<Error> base(m, "LcivtError");
    static py::exception<ParseError> parse(m, "ParseError", base.ptr());
    static py::exception<DomainError> domain(m, "DomainError", base.ptr());
    static py::exception<UndecidableError> undecidable(m, "UndecidableError", base.ptr());
    static py::exception<ConvergenceError> convergence(m, "ConvergenceError", base.ptr());
    static py::exception<ResourceError> resource(m, "ResourceError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const ParseError &e) {
            py::set_error(parse, e.what());
        } catch (const DomainError &e) {
            py::set_error(domain, e.what());
        } catch (const UndecidableError &e) {
            py::set_error(undecidable, e.what());
        } catch (const ConvergenceError &e) {
            py::set_error(convergence, e.what());
        } catch (const ResourceError &e) {
            py::set_error(resource, e.what());
        } catch (const Error &e) {
            py::set_error(base, e.what());
        }
    });

    py::enum_<Mode>(m, "Mode").value("lc", Mode::lc).value("hahn", Mode::hahn);

    py::class_<LcNumber>(m, "Number")
        .def(py::init([](const std::string &text, Mode mode) { return parse_lcnumber(text, mode); }), py::arg("text"),
             py::arg("mode") = Mode::lc)
        .def_property_readonly("mode", &LcNumber::mode)
        .def_property_readonly("is_exact", &LcNumber::is_exact)
        .def_property_readonly("cutoff",
                               [](const LcNumber &x) -> std::optional<std::string> {
                                   if (!x.cutoff()) {
                                       return std::nullopt;
                                   }
                                   return x.cutoff()->to_string();
                               })
        .def("valuation", [](const LcNumber &x) { return x.valuation().to_string(); })
        .def("sign", &LcNumber::sign)
        .def("standard_part", [](const LcNumber &x) { return lc_standard_part(x).to_string(); })
        .def("truncated", [](const LcNumber &x, const py::object &c) { return x.truncated(to_cutoff(c)); })
        .def("compare", [](const LcNumber &a, const LcNumber &b) { return lc_compare(a, b); })
        .def("__lt__", [](const LcNumber &a, const LcNumber &b) { return lc_compare(a, b) < 0; })
        .def("__gt__", [](const LcNumber &a, const LcNumber &b) { return lc_compare(a, b) > 0; })
        .def("__add__", [](const LcNumber &a, const LcNumber &b) { return a + b; })
        .def("__sub__", [](const LcNumber &a, const LcNumber &b) { return a - b; })
        .def("__mul__", [](const LcNumber &a, const LcNumber &b) { return a * b; })
        .def("__neg__", [](const LcNumber &a) { return -a; })
        .def("__str__", &LcNumber::to_string)
        .def("__repr__", [](const LcNumber &x) { return "Number('" + x.to_string() + "')"; });

    py::class_<PSeries>(m, "Series")
        .def(py::init([](const std::string &text, Mode mode) { return parse_series(text, mode); }), py::arg("source"),
             py::arg("mode") = Mode::lc)
        .def_property_readonly("mode", &PSeries::mode)
        .def("render", &render_series)
        .def(
            "coeff",
            [](const PSeries &s, std::size_t n, const py::object &limit) {
                if (limit.is_none()) {
                    return ps_coeff(s, n);
                }
                return ps_coeff(s, n, to_cutoff(limit));
            },
            py::arg("n"), py::arg("limit") = py::none())
        .def(
            "eval",
            [](const PSeries &s, const py::object &x, const py::object &cutoff) {
                return ps_eval(s, as_number(x, s.mode()), to_cutoff(cutoff));
            },
            py::arg("x"), py::arg("cutoff"))
        .def(
            "sign_at",
            [](const PSeries &s, const py::object &x, const py::object &cutoff) {
                Exponent c = cutoff.is_none() ? default_sign_cutoff(s.mode()) : to_cutoff(cutoff);
                return ps_sign_at(s, as_number(x, s.mode()), c);
            },
            py::arg("x"), py::arg("cutoff") = py::none())
        .def("__str__", &render_series);

    m.def(
        "ivt_root",
        [](const PSeries &s, const py::object &a, const py::object &b, const py::object &cutoff) {
            return to_py(root_report_json(ivt_root(s, as_number(a, s.mode()), as_number(b, s.mode()), to_cutoff(cutoff))));
        },
        py::arg("series"), py::arg("a"), py::arg("b"), py::arg("cutoff"));
    m.def(
        "count_zeros",
        [](const PSeries &s, const py::object &a, const py::object &b, const py::object &cutoff,
           std::optional<std::size_t> cap) {
            Json arr = Json::array();
            for (const auto &r : count_zeros(s, as_number(a, s.mode()), as_number(b, s.mode()), to_cutoff(cutoff), cap)) {
                arr.push_back(root_report_json(r));
            }
            return to_py(arr);
        },
        py::arg("series"), py::arg("a"), py::arg("b"), py::arg("cutoff"), py::arg("degree_cap") = py::none());
    m.def(
        "multiplicity_at",
        [](const PSeries &s, const py::object &c, const py::object &cutoff) {
            return multiplicity_at(s, as_number(c, s.mode()), to_cutoff(cutoff));
        },
        py::arg("series"), py::arg("c"), py::arg("cutoff"));
    m.def(
        "factor",
        [](const PSeries &s, const py::object &cutoff, std::optional<std::size_t> cap) {
            Exponent c = to_cutoff(cutoff);
            NormalizedSeries ns = ps_normalize(s, cap, c);
            Factorization f = weierstrass_factor(ns, cap, c);
            py::dict d;
            std::vector<std::string> P, B;
            for (const auto &x : f.P) {
                P.push_back(x.to_string());
            }
            for (const auto &x : f.B) {
                B.push_back(x.to_string());
            }
            d["N"] = f.N;
            d["d"] = ns.d.to_string();
            d["P"] = P;
            d["B"] = B;
            d["achieved_cutoff"] = f.achieved_cutoff.to_string();
            d["degree_cap"] = f.degree_cap;
            return d;
        },
        py::arg("series"), py::arg("cutoff"), py::arg("degree_cap") = py::none());
    m.def(
        "run",
        [](const std::string &command, const std::string &series, Mode mode, std::optional<std::string> cutoff,
           std::optional<std::size_t> degree_cap, std::optional<std::string> interval, std::optional<std::string> at,
           std::vector<std::size_t> n_list, const std::string &example, std::map<std::string, std::string> params) {
            RunConfig cfg;
            cfg.command = command;
            cfg.series_source = series;
            cfg.mode = mode;
            cfg.cutoff = cutoff;
            cfg.degree_cap = degree_cap;
            cfg.interval = interval;
            cfg.at = at;
            cfg.n_list = std::move(n_list);
            cfg.example = example;
            cfg.params = std::move(params);
            return to_py(Json::parse(emit_report(run_command(cfg), OutputFormat::json, false)));
        },
        py::arg("command"), py::arg("series") = "", py::arg("mode") = Mode::lc, py::arg("cutoff") = py::none(),
        py::arg("degree_cap") = py::none(), py::arg("interval") = py::none(), py::arg("at") = py::none(),
        py::arg("n_list") = std::vector<std::size_t>{}, py::arg("example") = "",
        py::arg("params") = std::map<std::string, std::string>{});
}
