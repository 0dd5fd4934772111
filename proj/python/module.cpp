#include "voacert/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using namespace voacert;

RunConfig make_config(const std::string& variant, long p, long q, long n,
                      const std::string& cutoff, const std::string& twist,
                      const std::string& suite, long seed, long max_triples) {
    RunConfig rc;
    rc.variant = parse_variant(variant);
    rc.p = p;
    rc.q = q;
    rc.even_n = n;
    rc.cutoff = Rational::parse(cutoff);
    rc.twist = parse_twist(twist);
    rc.suite = suite;
    rc.seed = seed;
    rc.max_triples = max_triples;
    validate(rc);
    return rc;
}

}  // namespace

PYBIND11_MODULE(voacert, m) {
    m.doc() = "exact finite-cutoff certification of lattice vertex algebras "
              "and their twisted modules";

    m.def("version", [] { return std::string("1.0.0"); });

    m.def(
        "dims",
        [](const std::string& variant, long p, long q, long n, const std::string& cutoff) {
            RunConfig rc = make_config(variant, p, q, n, cutoff, "none", "dims", 1, 1);
            Algebra alg(algebra_config(rc));
            py::dict out;
            for (const auto& [h, idxs] : alg.space().blocks())
                out[py::str(h.str())] = static_cast<long>(idxs.size());
            return out;
        },
        py::arg("variant") = "Vpq", py::arg("p") = 2, py::arg("q") = 1, py::arg("n") = 1,
        py::arg("cutoff") = "3", "graded dimensions up to the cutoff, keyed by exact weight");

    m.def(
        "basis",
        [](const std::string& variant, long p, long q, long n, const std::string& cutoff) {
            RunConfig rc = make_config(variant, p, q, n, cutoff, "none", "dims", 1, 1);
            Algebra alg(algebra_config(rc));
            std::vector<std::string> names;
            for (long i = 0; i < alg.space().dim(); ++i) names.push_back(alg.space().name(i));
            return names;
        },
        py::arg("variant") = "Vpq", py::arg("p") = 2, py::arg("q") = 1, py::arg("n") = 1,
        py::arg("cutoff") = "3", "basis element names in index order");

    m.def(
        "central_charge",
        [](const std::string& variant, long p, long q, long n, const std::string& cutoff) {
            RunConfig rc = make_config(variant, p, q, n, cutoff, "none", "dims", 1, 1);
            Algebra alg(algebra_config(rc));
            return alg.central_charge().str();
        },
        py::arg("variant") = "Vpq", py::arg("p") = 2, py::arg("q") = 1, py::arg("n") = 1,
        py::arg("cutoff") = "3", "central charge as an exact rational string");

    m.def(
        "mu",
        [](const std::string& variant, long p, long q, long n, const std::string& cutoff,
           const std::string& twist) {
            RunConfig rc = make_config(variant, p, q, n, cutoff, twist, "dims", 1, 1);
            Algebra alg(algebra_config(rc));
            Twist tw = Twist::make(alg, rc.twist);
            return tw.mu().str();
        },
        py::arg("variant") = "Vpq", py::arg("p") = 2, py::arg("q") = 1, py::arg("n") = 1,
        py::arg("cutoff") = "3", py::arg("twist") = "none",
        "self-pairing constant of the twisting vector, exact");

    m.def(
        "twisted_dims",
        [](const std::string& variant, long p, long q, long n, const std::string& cutoff,
           const std::string& twist) {
            RunConfig rc = make_config(variant, p, q, n, cutoff, twist, "dims", 1, 1);
            Algebra alg(algebra_config(rc));
            Twist tw = Twist::make(alg, rc.twist);
            Rational depth;
            auto dims = tw.twisted_dims(depth);
            py::dict out;
            for (const auto& [nu, count] : dims) out[py::str(nu.str())] = count;
            return py::make_tuple(out, depth.str());
        },
        py::arg("variant") = "Vpq", py::arg("p") = 2, py::arg("q") = 1, py::arg("n") = 1,
        py::arg("cutoff") = "3", py::arg("twist") = "none",
        "twisted graded dimensions and the certified depth");

    m.def(
        "check",
        [](const std::string& variant, long p, long q, long n, const std::string& cutoff,
           const std::string& twist, const std::string& suite, long seed, long max_triples) {
            RunConfig rc = make_config(variant, p, q, n, cutoff, twist, suite, seed, max_triples);
            Algebra alg(algebra_config(rc));
            RunResult res = run_suite(alg, rc);
            return py::make_tuple(res.passed(), render_report(rc, alg, res));
        },
        py::arg("variant") = "Vpq", py::arg("p") = 2, py::arg("q") = 1, py::arg("n") = 1,
        py::arg("cutoff") = "3", py::arg("twist") = "none", py::arg("suite") = "all",
        py::arg("seed") = 1, py::arg("max_triples") = 20000,
        "run a verification suite; returns (passed, report)");

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
}
