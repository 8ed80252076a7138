#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lilsigma/certificate_io.hpp"
#include "lilsigma/certifier.hpp"
#include "lilsigma/constants.hpp"
#include "lilsigma/number_theory.hpp"
#include "lilsigma/simulator.hpp"

namespace py = pybind11;
using namespace lilsigma;

namespace pybind11::detail {

// Rational <-> fractions.Fraction (ints accepted on the way in).
template <>
struct type_caster<Rational> {
    PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (src.is_none()) return false;
        if (py::isinstance<py::int_>(src)) {
            value = Rational(mpz_class(py::str(src).cast<std::string>()), 1);
            return true;
        }
        if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
            std::string n = py::str(src.attr("numerator")).cast<std::string>();
            std::string d = py::str(src.attr("denominator")).cast<std::string>();
            value = Rational(mpz_class(n), mpz_class(d));
            return true;
        }
        if (py::isinstance<py::str>(src)) {
            value = Rational::parse(src.cast<std::string>());
            return true;
        }
        return false;
    }

    static handle cast(const Rational& r, return_value_policy, handle) {
        py::object fraction = py::module_::import("fractions").attr("Fraction");
        py::object num = py::module_::import("builtins").attr("int")(r.num().get_str());
        py::object den = py::module_::import("builtins").attr("int")(r.den().get_str());
        return fraction(num, den).release();
    }
};

template <>
struct type_caster<mpz_class> {
    PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

    bool load(handle src, bool) {
        if (!py::isinstance<py::int_>(src)) return false;
        value = mpz_class(py::str(src).cast<std::string>());
        return true;
    }

    static handle cast(const mpz_class& z, return_value_policy, handle) {
        return py::module_::import("builtins").attr("int")(z.get_str()).release();
    }
};

}  // namespace pybind11::detail

PYBIND11_MODULE(lilsigma, m) {
    m.doc() = "Exact LIL discrepancy constants for geometric progressions with rational ratio";
    m.attr("__version__") = "0.1.0";

    py::class_<RatioPair>(m, "RatioPair")
        .def(py::init<long, long>(), py::arg("p"), py::arg("q"))
        .def_readonly("p", &RatioPair::p)
        .def_readonly("q", &RatioPair::q)
        .def("__repr__",
             [](const RatioPair& r) {
                 return "RatioPair(" + std::to_string(r.p) + ", " + std::to_string(r.q) + ")";
             });

    py::class_<Interval>(m, "Interval")
        .def(py::init([](const Rational& lo, const Rational& hi) { return Interval{lo, hi}; }))
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def("__repr__", &Interval::str);

    py::class_<SigmaEnclosure>(m, "SigmaEnclosure")
        .def_readonly("lower", &SigmaEnclosure::lower)
        .def_readonly("upper", &SigmaEnclosure::upper)
        .def_readonly("depth", &SigmaEnclosure::depth)
        .def("width", &SigmaEnclosure::width);

    py::enum_<VerdictKind>(m, "VerdictKind")
        .value("QUAD_BOUND", VerdictKind::QuadBound)
        .value("MONOTONE_UP", VerdictKind::MonotoneUp)
        .value("MONOTONE_DOWN", VerdictKind::MonotoneDown);

    py::class_<Verdict>(m, "Verdict")
        .def_readonly("interval", &Verdict::interval)
        .def_readonly("kind", &Verdict::kind)
        .def_readonly("depth", &Verdict::depth)
        .def_readonly("margin", &Verdict::margin)
        .def_readonly("witness", &Verdict::witness);

    py::enum_<CertStatus>(m, "CertStatus")
        .value("PROVEN", CertStatus::Proven)
        .value("FAILED", CertStatus::Failed);

    py::class_<Certificate>(m, "Certificate")
        .def_readonly("p", &Certificate::p)
        .def_readonly("q", &Certificate::q)
        .def_readonly("c", &Certificate::c)
        .def_readonly("sigma2_c", &Certificate::sigma2_c)
        .def_readonly("status", &Certificate::status)
        .def_readonly("verdicts", &Certificate::verdicts)
        .def("serialize", &serialize)
        .def_static("parse", &parse_certificate);

    py::enum_<Provenance>(m, "Provenance")
        .value("NON_ROOT", Provenance::NonRoot)
        .value("ODD_ODD", Provenance::OddOdd)
        .value("EVEN_Q1", Provenance::EvenQ1)
        .value("TWO_Q1", Provenance::TwoQ1)
        .value("LARGE_FORMULA", Provenance::LargeFormula)
        .value("THEOREM_TABLE", Provenance::TheoremTable)
        .value("CERTIFIED", Provenance::Certified)
        .value("SEARCH_ONLY", Provenance::SearchOnly)
        .value("UNKNOWN", Provenance::Unknown);

    py::class_<SigmaDisplay>(m, "SigmaDisplay")
        .def_readonly("coeff", &SigmaDisplay::coeff)
        .def_readonly("radicand", &SigmaDisplay::radicand);

    py::class_<SigmaConstant>(m, "SigmaConstant")
        .def_readonly("sigma_squared", &SigmaConstant::sigma_squared)
        .def_readonly("display", &SigmaConstant::display)
        .def_readonly("provenance", &SigmaConstant::provenance);

    py::class_<Candidate>(m, "Candidate")
        .def_readonly("k", &Candidate::k)
        .def_readonly("n", &Candidate::n)
        .def_readonly("c", &Candidate::c)
        .def_readonly("value_lower", &Candidate::value_lower)
        .def_readonly("exact", &Candidate::exact);

    py::class_<Orbit>(m, "Orbit")
        .def_readonly("x0", &Orbit::x0)
        .def_readonly("points", &Orbit::points);

    py::class_<DiscrepancyReport>(m, "DiscrepancyReport")
        .def_readonly("n", &DiscrepancyReport::n)
        .def_readonly("d_star", &DiscrepancyReport::d_star)
        .def_readonly("d_extreme", &DiscrepancyReport::d_extreme);

    m.def("frac", &frac, "Fractional part of a rational");
    m.def("cov_kernel", &cov_kernel, "min(x,y) - x*y on [0,1)^2");
    m.def("cov_kernel_diag", &cov_kernel_diag, "<x>(1 - <x>)");
    m.def("mult_order",
          [](const mpz_class& b, const mpz_class& m) { return mult_order(b, m); });
    m.def("signed_order",
          [](const mpz_class& q, const mpz_class& m) { return signed_order(q, m); });

    m.def("sigma2_partial", &sigma2_partial, py::arg("pq"), py::arg("a"), py::arg("depth"));
    m.def("tail_bound", &tail_bound);
    m.def("deriv_tail_bound", &deriv_tail_bound);
    m.def("sigma2_exact_periodic", &sigma2_exact_periodic, py::arg("pq"), py::arg("c"));
    m.def("sigma2_exact", [](const RatioPair& pq, const Rational& a) {
        return sigma2_exact_rational(pq, a);
    });
    m.def("sigma2_enclosure", &sigma2_enclosure);
    m.def("breakpoints", &breakpoints);

    m.def(
        "certify_supremum",
        [](const RatioPair& pq, const Rational& c, int max_depth) {
            CertifyOptions opts;
            opts.max_depth = max_depth;
            return certify_supremum(pq, c, opts);
        },
        py::arg("pq"), py::arg("c"), py::arg("max_depth") = 8,
        py::call_guard<py::gil_scoped_release>());
    m.def("recheck", [](const Certificate& cert) {
        std::string why;
        bool ok = recheck(cert, &why);
        return py::make_tuple(ok, why);
    });

    m.def(
        "sigma_constant",
        [](const RatioPair& pq, int search_max_k, bool run_certify) {
            ConstantOptions opts;
            opts.search_max_k = search_max_k;
            opts.run_certify = run_certify;
            return sigma_constant(ThetaSpec::rational_root(pq), opts);
        },
        py::arg("pq"), py::arg("search_max_k") = 6, py::arg("run_certify") = true,
        py::call_guard<py::gil_scoped_release>());
    m.def("sigma_constant_irrational", [] { return sigma_constant(ThetaSpec::irrational()); });
    m.def("search_candidates", &search_candidates, py::arg("pq"), py::arg("max_k"),
          py::arg("top") = 3, py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());

    m.def("orbit", &orbit, py::arg("pq"), py::arg("x0"), py::arg("count"),
          py::arg("cap") = kOrbitCap);
    m.def("discrepancy", &discrepancy);
    m.def("lil_trace", &lil_trace, py::arg("pq"), py::arg("x0"), py::arg("checkpoints"),
          py::arg("cap") = kOrbitCap, py::call_guard<py::gil_scoped_release>());
}
