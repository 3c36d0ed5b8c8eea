#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tubepoly/bodies.hpp"
#include "tubepoly/generators.hpp"
#include "tubepoly/oracle.hpp"
#include "tubepoly/report.hpp"
#include "tubepoly/roots.hpp"
#include "tubepoly/stability.hpp"

namespace py = pybind11;
using namespace tubepoly;

namespace {

std::vector<std::string> strings(const PiPoly& p) { return p.coeff_strings(); }

std::string classify_json(const std::string& body, const std::optional<std::string>& weyl) {
    const SteinerResult s = steiner(BodySpec::parse(body));
    if (weyl) return classification_json(classify_conservative(weyl_poly(s, WeylIndex::parse(*weyl)).poly)).dump();
    return classification_json(classify_dissipative(s.poly)).dump();
}

}  // namespace

PYBIND11_MODULE(_tubepoly, m) {
    m.doc() = "Exact Steiner and Weyl tube polynomials";

    py::register_exception<BodyParseError>(m, "BodyParseError", PyExc_ValueError);
    py::register_exception<ScalarParseError>(m, "ScalarParseError", PyExc_ValueError);

    m.def("canonical_scalar", [](const std::string& s) { return PiScalar::parse(s).to_string(); });
    m.def("canonical_body", [](const std::string& s) { return BodySpec::parse(s).to_string(); });
    m.def("steiner", [](const std::string& body) { return strings(steiner(BodySpec::parse(body)).poly); });
    m.def("cross_measures", [](const std::string& body) {
        std::vector<std::string> out;
        for (const auto& v : cross_measures(steiner(BodySpec::parse(body))).v) out.push_back(v.to_string());
        return out;
    });
    m.def("weyl", [](const std::string& body, const std::string& p) {
        return strings(weyl_poly(steiner(BodySpec::parse(body)), WeylIndex::parse(p)).poly);
    }, py::arg("body"), py::arg("p") = "inf");
    m.def("classify_json", &classify_json, py::arg("body"), py::arg("weyl") = std::nullopt);
    m.def("find_roots", [](const std::vector<std::string>& coeffs, long bits) {
        std::vector<std::pair<double, double>> out;
        for (const auto& r : find_roots(PiPoly::from_coeff_strings(coeffs), {bits, 0}).roots) out.emplace_back(r.re, r.im);
        return out;
    }, py::arg("coeffs"), py::arg("bits") = 128);
    m.def("series_coeff", [](const std::string& tag, long k) { return series_coeff(SeriesFamily::parse(tag), k).to_string(); });
    m.def("jensen", [](const std::string& tag, long n) { return strings(jensen_poly(SeriesFamily::parse(tag), n)); });
    m.def("body_distance", [](const std::string& body, const std::vector<double>& x) {
        return body_distance(BodySpec::parse(body), x);
    });
    m.def("mc_tube_volume", [](const std::string& body, double t, long samples, std::uint64_t seed) {
        const McEstimate e = mc_tube_volume(BodySpec::parse(body), t, samples, seed);
        py::dict d;
        d["mean"] = e.mean;
        d["std_error"] = e.std_error;
        d["samples"] = e.samples;
        d["hits"] = e.hits;
        d["seed"] = e.seed;
        return d;
    }, py::arg("body"), py::arg("t"), py::arg("samples"), py::arg("seed"));
    m.def("report_json", [](const std::string& body, long bits, long samples, std::uint64_t seed) {
        DossierOptions o;
        o.bits = bits;
        o.samples = samples;
        o.seed = seed;
        return dossier(BodySpec::parse(body), o).dump();
    }, py::arg("body"), py::arg("bits") = 128, py::arg("samples") = 20000, py::arg("seed") = 1);
}
