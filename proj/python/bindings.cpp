#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tauber/halfline.hpp"
#include "tauber/io.hpp"
#include "tauber/norm_series.hpp"
#include "tauber/scenario.hpp"
#include "tauber/verify.hpp"

namespace py = pybind11;
using namespace tauber;

namespace {

SemigroupModel model_named(const std::string& family, const std::vector<double>& norms) {
    if (family == "zplus") return SemigroupModel::zplus();
    if (family == "nstar") return SemigroupModel::nstar();
    if (family == "free") return SemigroupModel::free_abelian(norms);
    throw DomainError("family must be 'zplus', 'nstar' or 'free'");
}

Weight weight_named(const std::string& kind, double parameter) {
    if (kind == "one") return Weight::one();
    if (kind == "exponential") return Weight::exponential({parameter});
    if (kind == "power") return Weight::power(parameter);
    throw DomainError("weight must be 'one', 'exponential' or 'power'");
}

AlgebraElement element(const std::string& family, Index horizon, const std::map<Index, Complex>& coeffs,
                       Complex unit) {
    return AlgebraElement::from_map(model_named(family, {}), horizon, coeffs).with_unit_scalar(unit);
}

py::dict result_dict(const RunResult& r) {
    py::dict d;
    d["name"] = r.name;
    d["experiment"] = r.experiment;
    d["passed"] = r.passed();
    d["exit_code"] = r.exit_code();
    py::list assertions;
    for (const auto& a : r.assertions) assertions.append(py::make_tuple(a.name, a.passed, a.detail));
    d["assertions"] = assertions;
    py::dict summary;
    for (const auto& [k, v] : r.summary) summary[py::str(k)] = v;
    d["summary"] = summary;
    py::dict tables;
    for (const auto& [k, v] : r.tables) tables[py::str(k)] = v;
    d["tables"] = tables;
    d["summary_text"] = render_summary(r);
    return d;
}

RunOverrides overrides(std::optional<double> horizon, std::optional<double> tol) { return {horizon, tol}; }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Tauberian experiments on weighted semigroup algebras";

    auto error = py::register_exception<Error>(m, "TauberError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<HorizonError>(m, "HorizonError", error.ptr());
    py::register_exception<CapError>(m, "CapError", error.ptr());
    py::register_exception<NeumannInapplicable>(m, "NeumannInapplicable", error.ptr());

    m.def("format_number", py::overload_cast<double>(&format_number), "17 significant digits, no locale");

    m.def("list_builtins", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& b : builtin_scenarios()) out.emplace_back(b.name, b.description);
        return out;
    });
    m.def("builtin_text", [](const std::string& name) { return find_builtin(name).text; }, py::arg("name"));
    m.def(
        "run_builtin",
        [](const std::string& name, std::optional<double> horizon, std::optional<double> tol) {
            const auto& b = find_builtin(name);
            return result_dict(run_scenario(ScenarioFile::parse_string(b.text, b.name), overrides(horizon, tol)));
        },
        py::arg("name"), py::arg("horizon") = py::none(), py::arg("tol") = py::none());
    m.def(
        "run_scenario_text",
        [](const std::string& text, std::optional<double> horizon, std::optional<double> tol) {
            return result_dict(run_scenario(ScenarioFile::parse_string(text), overrides(horizon, tol)));
        },
        py::arg("text"), py::arg("horizon") = py::none(), py::arg("tol") = py::none());

    m.def(
        "convolve",
        [](const std::string& family, Index horizon, const std::map<Index, Complex>& a, const std::map<Index, Complex>& b,
           Complex unit_a, Complex unit_b) {
            const auto c = convolve(element(family, horizon, a, unit_a), element(family, horizon, b, unit_b));
            return py::make_tuple(c.unit_scalar(), c.coefficients());
        },
        py::arg("family"), py::arg("horizon"), py::arg("a"), py::arg("b"), py::arg("unit_a") = Complex(0.0),
        py::arg("unit_b") = Complex(0.0), "(unit scalar, coefficients) of (unit_a u + a) * (unit_b u + b)");
    m.def(
        "norm_w",
        [](const std::string& family, Index horizon, const std::map<Index, Complex>& k, Complex unit,
           const std::string& weight, double parameter) {
            return norm_w(element(family, horizon, k, unit), weight_named(weight, parameter));
        },
        py::arg("family"), py::arg("horizon"), py::arg("k"), py::arg("unit") = Complex(0.0), py::arg("weight") = "one",
        py::arg("parameter") = 0.0);
    m.def(
        "neumann_resolve",
        [](const std::string& family, Index horizon, const std::map<Index, Complex>& q, double tol) {
            const auto r = neumann_resolve(element(family, horizon, q, 0.0), Weight::one(), tol);
            py::dict d;
            d["inverse_part"] = r.inverse_part.coefficients();
            d["terms"] = r.terms;
            d["q_norm"] = r.q_norm;
            d["residual"] = r.residual;
            d["certified_tail"] = r.certified_tail;
            return d;
        },
        py::arg("family"), py::arg("horizon"), py::arg("q"), py::arg("tol") = 1e-12,
        "K with (u + K)(u + q) = u for ||q||_1 < 1");
    m.def(
        "dirichlet_series",
        [](Index horizon, const std::map<Index, Complex>& k, Complex unit, Complex s) {
            const auto v = dirichlet_series(element("nstar", horizon, k, unit), Weight::one(), s, TailDescriptor::finite());
            return py::make_tuple(v.value, v.tail_radius);
        },
        py::arg("horizon"), py::arg("k"), py::arg("unit"), py::arg("s"));

    m.def(
        "example1",
        [](Index horizon, double neumann_tol, std::int64_t primes_up_to) {
            const auto r = example1_counterexample(horizon, neumann_tol, primes_up_to);
            py::dict d;
            std::vector<double> f;
            for (Index n = 1; n <= r.horizon; ++n) f.push_back(r.f->at(n).real());
            d["f"] = f;
            d["identity_error"] = r.identity_error;
            d["verdict_f"] = to_string(r.f_profile.verdict);
            d["verdict_g"] = to_string(r.g_profile.verdict);
            d["limsup_f"] = r.f_profile.limsup;
            d["q_condition"] = to_string(r.q_condition.status);
            d["passed"] = r.ok();
            return d;
        },
        py::arg("horizon") = 5000, py::arg("neumann_tol") = 5e-11, py::arg("primes_up_to") = 31,
        "f = 1 + 1*q on N*: f[n-1] is f(n)");

    m.def("mercer_mean", [](const std::vector<double>& x, double alpha) { return mercer_mean(x, alpha); },
          py::arg("x"), py::arg("alpha"));
    m.def("mercer_invert", [](const std::vector<double>& y, double alpha) { return mercer_invert(y, alpha); },
          py::arg("y"), py::arg("alpha"));

    m.def(
        "prime_norm_partial_sum",
        [](double bound, const std::string& family, const std::vector<double>& norms) {
            return prime_norm_partial_sum(model_named(family, norms), bound);
        },
        py::arg("bound"), py::arg("family") = "nstar", py::arg("norms") = std::vector<double>{});
    m.def(
        "semigroup_norm_partial_sum",
        [](double bound, const std::string& family, const std::vector<double>& norms) {
            return semigroup_norm_partial_sum(model_named(family, norms), bound);
        },
        py::arg("bound"), py::arg("family") = "nstar", py::arg("norms") = std::vector<double>{});
    m.def(
        "euler_product",
        [](const std::vector<double>& norms, int degree) {
            const auto e = euler_product(norms, degree);
            return py::make_tuple(e.value, e.degree_bounded, e.truncation_bound);
        },
        py::arg("norms"), py::arg("degree_bound"), "(value, degree-bounded value, truncation bound)");

    m.def(
        "truncated_convolution_1d",
        [](const std::vector<Complex>& f, const std::vector<Complex>& k, double extent, double h) {
            const GridFunction gf({extent}, h, f), gk({extent}, h, k);
            const auto c = truncated_convolution(gf, gk);
            return std::vector<Complex>(c.values().begin(), c.values().end());
        },
        py::arg("f"), py::arg("k"), py::arg("extent"), py::arg("h"),
        "rectangle-rule (f*k)(x) on the grid 0, h, ..., extent");
    m.def(
        "laplace_halfline_1d",
        [](const std::vector<Complex>& k, double extent, double h, Complex z, double tail_bound) {
            const auto v = laplace_halfline(GridFunction({extent}, h, k), std::vector<Complex>{z}, tail_bound);
            return py::make_tuple(v.value, v.tail_radius);
        },
        py::arg("k"), py::arg("extent"), py::arg("h"), py::arg("z"), py::arg("tail_bound") = 0.0);
}
