#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyapx/acceptance.hpp"
#include "polyapx/bounds.hpp"
#include "polyapx/chebyshev.hpp"
#include "polyapx/extension.hpp"
#include "polyapx/json_io.hpp"

namespace py = pybind11;
using namespace polyapx;

namespace {

// rationals cross the boundary as "num/den" strings; results as JSON text
std::string dumps(const Json& j) { return j.dump(); }

std::vector<Rational> rats(const std::vector<std::string>& v) {
    std::vector<Rational> out;
    for (const auto& s : v) out.push_back(parse_rational(s));
    return out;
}

Which which_of(const std::string& w) {
    if (w == "and") return Which::AND;
    if (w == "or") return Which::OR;
    throw InvalidArgument("which must be 'and' or 'or'");
}

Rational open_eps(const std::string& s) {
    const Rational e = parse_rational(s);
    if (e <= 0 || e >= rat(1, 2)) throw InvalidArgument("eps must lie in (0,1/2)");
    return e;
}

}  // namespace

PYBIND11_MODULE(_polyapx, m) {
    m.doc() = "certified polynomial approximations of symmetric functions";

    static py::exception<PrecisionRejected> precision_exc(m, "PrecisionRejected", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const PrecisionRejected& e) {
            py::set_error(precision_exc, e.what());
        } catch (const InvalidArgument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.attr("DEFAULT_PRECISION") = kDefaultPrecision;

    m.def("cheb_eval", [](int d, const std::string& t) { return to_string(cheb_eval(d, parse_rational(t))); },
          py::arg("d"), py::arg("t"));
    m.def("cheb_coeffs", [](int d) { return dumps(poly_json(cheb_coeffs(d))); }, py::arg("d"));

    m.def("and_or", [](int n, const std::string& eps, const std::string& which, long prec) {
            return dumps(sym_json(and_or_for_eps(n, open_eps(eps), which_of(which), prec)));
        }, py::arg("n"), py::arg("eps"), py::arg("which") = "and", py::arg("precision") = kDefaultPrecision);
    m.def("and_or_degree", [](int n, int d, const std::string& which, long prec) {
            return dumps(sym_json(and_or_approx(n, d, which_of(which), prec)));
        }, py::arg("n"), py::arg("d"), py::arg("which") = "and", py::arg("precision") = kDefaultPrecision);
    m.def("exact_weight", [](int n, int k, int mm, const std::string& eps, long prec) {
            return dumps(sym_json(exact_weight_approx(n, k, mm, parse_rational(eps), prec)));
        }, py::arg("n"), py::arg("k"), py::arg("m"), py::arg("eps"), py::arg("precision") = kDefaultPrecision);
    m.def("symmetric", [](const std::vector<std::string>& values, const std::string& eps, long prec) {
            return dumps(sym_json(symmetric_approx(SymSpec::from_values(rats(values)), parse_rational(eps), prec)));
        }, py::arg("values"), py::arg("eps"), py::arg("precision") = kDefaultPrecision);
    m.def("small_support", [](const std::vector<std::string>& values, const std::string& eps) {
            return dumps(sym_json(small_support_approx(SymSpec::from_values(rats(values)), parse_rational(eps))));
        }, py::arg("values"), py::arg("eps"));
    m.def("sampling", [](const std::vector<std::string>& values, const std::string& eps) {
            const auto r = sampling_approx(SymSpec::from_values(rats(values)), parse_rational(eps));
            Json j = sym_json(r.approx);
            j["pi_norm_bound"] = to_string(r.pi_norm_bound);
            j["pq_norm"] = to_string(r.pq_norm);
            return dumps(j);
        }, py::arg("values"), py::arg("eps"));
    m.def("surjectivity", [](int n, int r, const std::string& eps) {
            return dumps(block_json(surjectivity_approx(n, r, parse_rational(eps))));
        }, py::arg("n"), py::arg("r"), py::arg("eps") = "1/3");

    m.def("minimax", [](const std::vector<std::string>& values, int d) {
            return dumps(minimax_json(minimax_lp(rats(values), d)));
        }, py::arg("values"), py::arg("d"));
    m.def("deg_eps", [](const std::vector<std::string>& values, const std::string& eps) {
            return deg_eps(rats(values), parse_rational(eps));
        }, py::arg("values"), py::arg("eps"));

    m.def("verify", [](const std::string& text, long prec) {
            const VerifyReport r = verify_json(Json::parse(text), prec);
            return py::make_tuple(r.pass, to_string(r.max_err), r.argmax);
        }, py::arg("json"), py::arg("precision") = kDefaultPrecision);

    m.def("closed_form", [](const std::string& family, double n, double r, int k, double Delta) {
            const Family f = parse_family(family);
            return closed_form(BoundQuery{f, n, r, k, Delta, default_constants(f)});
        }, py::arg("family"), py::arg("n"), py::arg("r") = 1.0, py::arg("k") = 1, py::arg("Delta") = 1.0);
    m.def("sweep_csv", [](const std::string& family) {
            const Family f = parse_family(family);
            return sweep_csv(consistency_sweep(f, induction_grid(f)));
        }, py::arg("family"));

    m.def("run_criterion", [](int id, uint64_t seed) {
            CriterionResult r;
            {
                py::gil_scoped_release nogil;
                r = run_criterion(id, seed);
            }
            return py::make_tuple(r.pass, r.name, r.details);
        }, py::arg("id"), py::arg("seed") = kAcceptanceSeed);
}
