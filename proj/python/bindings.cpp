#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "freemul/convolution.hpp"
#include "freemul/density.hpp"
#include "freemul/laws.hpp"
#include "freemul/nc_oracle.hpp"
#include "freemul/rmt.hpp"
#include "freemul/transforms.hpp"

namespace py = pybind11;
using namespace freemul;

PYBIND11_MODULE(_freemul, m) {
    m.doc() = "Free multiplicative convolution via S-transforms";

    py::class_<HalfSeries>(m, "HalfSeries")
        .def_readonly("min_grade", &HalfSeries::min_grade)
        .def_readonly("coeffs", &HalfSeries::coeffs)
        .def_readonly("trunc_grade", &HalfSeries::trunc_grade)
        .def("at", &HalfSeries::at, py::arg("grade"))
        .def("is_zero", &HalfSeries::is_zero);

    py::class_<STransformPair>(m, "STransformPair")
        .def_property_readonly("mean_class",
                               [](const STransformPair& s) {
                                   return std::string(to_string(s.mean_class));
                               })
        .def_readonly("primary", &STransformPair::primary)
        .def_readonly("secondary", &STransformPair::secondary);

    py::class_<ConvolutionResult>(m, "ConvolutionResult")
        .def_property_readonly(
            "moments", [](const ConvolutionResult& r) { return r.moments.moments; })
        .def_property_readonly("case_tag",
                               [](const ConvolutionResult& r) {
                                   return std::string(to_string(r.case_tag));
                               })
        .def_readonly("s_product", &ConvolutionResult::s_product);

    py::class_<ProofIdentityReport>(m, "ProofIdentityReport")
        .def_readonly("symmetry", &ProofIdentityReport::symmetry)
        .def_readonly("moment_relation", &ProofIdentityReport::moment_relation)
        .def_readonly("first_aux", &ProofIdentityReport::first_aux)
        .def_readonly("second_aux", &ProofIdentityReport::second_aux)
        .def("max_residual", &ProofIdentityReport::max_residual);

    py::class_<DensityCurve>(m, "DensityCurve")
        .def_readonly("grid", &DensityCurve::grid)
        .def_readonly("values", &DensityCurve::values)
        .def_readonly("epsilon", &DensityCurve::epsilon);

    py::class_<HistogramReport>(m, "HistogramReport")
        .def_readonly("l1_distance", &HistogramReport::l1_distance)
        .def_readonly("ks_distance", &HistogramReport::ks_distance)
        .def_readonly("out_of_range_frac", &HistogramReport::out_of_range_frac)
        .def_readonly("bins", &HistogramReport::bins);

    py::class_<LawSpec>(m, "LawSpec");
    m.def("semicircle", &semicircle_law, py::arg("variance") = 1.0);
    m.def("free_poisson", &free_poisson_law, py::arg("rate") = 1.0);
    m.def("shifted_free_poisson", &shifted_free_poisson_law, py::arg("rate"), py::arg("shift"));
    m.def("point_mass", &point_mass_law, py::arg("c"));

    m.def(
        "moments",
        [](const LawSpec& law, int order) { return moments_of(law, order).moments; },
        py::arg("law"), py::arg("order") = 12);
    m.def(
        "cumulants",
        [](const LawSpec& law, int order) { return cumulants_of(law, order).cumulants; },
        py::arg("law"), py::arg("order") = 12);

    m.def(
        "s_transform",
        [](const std::vector<double>& moments) { return s_transform(MomentSequence{moments}); },
        py::arg("moments"));
    m.def(
        "moments_from_s",
        [](const STransformPair& s, int order) { return moments_from_s(s, order).moments; },
        py::arg("s"), py::arg("order"));

    // law overloads generate a couple of moments past the requested order so
    // the zero-mean window loss does not bite, matching the CLI
    m.def(
        "convolve",
        [](const LawSpec& a, const LawSpec& b, int order) {
            return free_mult_convolve(moments_of(a, order + 2), moments_of(b, order + 2), order);
        },
        py::arg("law_a"), py::arg("law_b"), py::arg("order") = 12);
    m.def(
        "convolve",
        [](const std::vector<double>& a, const std::vector<double>& b, int order) {
            return free_mult_convolve(MomentSequence{a}, MomentSequence{b}, order);
        },
        py::arg("moments_a"), py::arg("moments_b"), py::arg("order") = 12);

    m.def(
        "verify_identities",
        [](const LawSpec& a, const LawSpec& b, int order) {
            return verify_proof_identities(moments_of(a, order + 2), moments_of(b, order + 2),
                                           order);
        },
        py::arg("law_a"), py::arg("law_b"), py::arg("order") = 8);
    m.def(
        "verify_identities",
        [](const std::vector<double>& a, const std::vector<double>& b, int order) {
            return verify_proof_identities(MomentSequence{a}, MomentSequence{b}, order);
        },
        py::arg("moments_a"), py::arg("moments_b"), py::arg("order") = 8);

    m.def(
        "solve_density",
        [](const std::string& curve, double xmin, double xmax, double step, double eps) {
            return solve_density(builtin_curve(curve), make_grid(xmin, xmax, step), eps);
        },
        py::arg("curve"), py::arg("xmin"), py::arg("xmax"), py::arg("step") = 1e-3,
        py::arg("eps") = 1e-4);
    m.def(
        "approx_density",
        [](const std::vector<double>& moments, double xmin, double xmax, double step,
           double eps) {
            return approx_density_from_moments(MomentSequence{moments},
                                               make_grid(xmin, xmax, step), eps);
        },
        py::arg("moments"), py::arg("xmin"), py::arg("xmax"), py::arg("step") = 1e-2,
        py::arg("eps") = 0.05);
    m.def("trapezoid_mass", &trapezoid_mass, py::arg("curve"));
    m.def("trapezoid_moment", &trapezoid_moment, py::arg("curve"), py::arg("n"));

    m.def(
        "simulate",
        [](int n, int trials, std::uint64_t seed, const std::string& ensemble, int bins,
           int threads) {
            SimConfig c;
            c.n = n;
            c.trials = trials;
            c.seed = seed;
            c.ensemble_pair = ensemble_from_string(ensemble);
            c.bins = bins;
            return product_spectrum(c, threads).eigenvalues;
        },
        py::arg("n") = 50, py::arg("trials") = 4000, py::arg("seed") = 12345,
        py::arg("ensemble") = "wigner_x_wishart", py::arg("bins") = 60, py::arg("threads") = 0);
    m.def(
        "compare_histogram",
        [](const std::vector<double>& eigenvalues, int bins, const DensityCurve& density) {
            SpectrumSample s;
            s.eigenvalues = eigenvalues;
            s.config.bins = bins;
            return compare_histogram(s, density);
        },
        py::arg("eigenvalues"), py::arg("bins"), py::arg("density"));

    m.def("catalan", &catalan, py::arg("n"));
}
