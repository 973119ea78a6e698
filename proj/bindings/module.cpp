// pybind11 surface over the sdkim core: circuit specs, exact evolution,
// participation moments, reference overlap distributions, the dual transfer
// check and the Haar toolbox. Arrays cross the boundary as numpy copies.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdkim/angle.hpp"
#include "sdkim/dual.hpp"
#include "sdkim/fockspace.hpp"
#include "sdkim/model.hpp"
#include "sdkim/rmt.hpp"
#include "sdkim/rng.hpp"
#include "sdkim/statevector.hpp"

#ifndef SDKIM_VERSION
#define SDKIM_VERSION "0.0.0"
#endif

namespace py = pybind11;
using namespace sdkim;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

StateVector state_from_array(const ComplexArray& amps) {
    if (amps.ndim() != 1) throw std::invalid_argument("expected a 1-D amplitude array");
    StateVector psi;
    auto r = amps.unchecked<1>();
    psi.amps.assign(r.data(0), r.data(0) + r.shape(0));
    while ((std::uint64_t{1} << psi.L) < psi.amps.size()) ++psi.L;
    return psi;
}

py::array_t<cplx> array_from_amps(const std::vector<cplx>& amps) {
    py::array_t<cplx> out(static_cast<py::ssize_t>(amps.size()));
    std::copy(amps.begin(), amps.end(), out.mutable_data());
    return out;
}

GateU2 gate_from_array(const ComplexArray& a) {
    if (a.ndim() != 2 || a.shape(0) != 2 || a.shape(1) != 2)
        throw std::invalid_argument("GateU2 expects a 2x2 complex matrix");
    auto r = a.unchecked<2>();
    GateU2 u;
    u.m = {r(0, 0), r(0, 1), r(1, 0), r(1, 1)};
    return u;
}

}  // namespace

PYBIND11_MODULE(_sdkim, m) {
    m.doc() = "Exact self-dual kicked-Ising simulator and Fock-space analytics";
    m.attr("__version__") = SDKIM_VERSION;
    m.attr("PI") = pi;

    // ---- circuit specification -------------------------------------------
    py::class_<GateU2>(m, "GateU2")
        .def(py::init(&gate_from_array), py::arg("matrix"))
        .def_property_readonly("matrix",
                               [](const GateU2& u) {
                                   py::array_t<cplx> out({2, 2});
                                   auto r = out.mutable_unchecked<2>();
                                   r(0, 0) = u.m[0];
                                   r(0, 1) = u.m[1];
                                   r(1, 0) = u.m[2];
                                   r(1, 1) = u.m[3];
                                   return out;
                               })
        .def("unitarity_error", &GateU2::unitarity_error);

    m.def("kick_gate", &kick_gate, py::arg("b"),
          "exp(-i b sigma_x) single-site kick");
    m.def(
        "sample_gate_u2",
        [](std::uint64_t seed) {
            Rng rng(seed);
            return sample_gate_u2(rng);
        },
        py::arg("seed"), "Haar U(2) drawn from the given stream seed");

    py::class_<CircuitSpec>(m, "CircuitSpec")
        .def_readwrite("L", &CircuitSpec::L)
        .def_readwrite("J", &CircuitSpec::J)
        .def_readwrite("b", &CircuitSpec::b)
        .def_readwrite("g", &CircuitSpec::g)
        .def_readwrite("h", &CircuitSpec::h)
        .def_property_readonly("variant", &CircuitSpec::variant_name)
        .def("field", &CircuitSpec::field, py::arg("j"))
        .def("to_config_text", [](const CircuitSpec& s) { return to_config_text(s); })
        .def("to_json_text", [](const CircuitSpec& s) { return to_json_text(s); })
        .def("hash_hex", [](const CircuitSpec& s) { return spec_hash_hex(s); })
        .def("__repr__",
             [](const CircuitSpec& s) {
                 return "<CircuitSpec " + std::string(s.variant_name()) +
                        " L=" + std::to_string(s.L) + ">";
             })
        .def_static("dual_unitary", &CircuitSpec::dual_unitary, py::arg("L"),
                    py::arg("g") = pi / 3)
        .def_static("boundary_kick", &CircuitSpec::boundary_kick, py::arg("L"),
                    py::arg("theta"), py::arg("g") = pi / 3)
        .def_static("boundary_generic", &CircuitSpec::boundary_generic,
                    py::arg("L"), py::arg("u"), py::arg("g") = pi / 3)
        .def_static("mid_single_site", &CircuitSpec::mid_single_site, py::arg("L"),
                    py::arg("seed"), py::arg("g") = pi / 3)
        .def_static("mid_two_site", &CircuitSpec::mid_two_site, py::arg("L"),
                    py::arg("seed"), py::arg("g") = pi / 3)
        .def_static("random_brickwork", &CircuitSpec::random_brickwork,
                    py::arg("L"), py::arg("seed"));

    m.def("from_config_text", &from_config_text, py::arg("text"));
    m.def("from_json_text", &from_json_text, py::arg("text"));
    m.def(
        "validate",
        [](const CircuitSpec& s) {
            ValidationReport r = sdkim::validate(s);
            py::dict d;
            d["ok"] = r.ok();
            d["errors"] = r.errors;
            d["warnings"] = r.warnings;
            return d;
        },
        py::arg("spec"));

    // ---- exact evolution ---------------------------------------------------
    m.def(
        "evolve",
        [](const CircuitSpec& spec, int t) {
            return array_from_amps(evolve(spec, t).amps);
        },
        py::arg("spec"), py::arg("t"),
        "Amplitudes <z|psi(t)> from |00..0>, z_1 = most-significant bit");
    m.def(
        "probabilities",
        [](const CircuitSpec& spec, int t) {
            StateVector psi = evolve(spec, t);
            py::array_t<double> out(static_cast<py::ssize_t>(psi.amps.size()));
            double* w = out.mutable_data();
            for (std::uint64_t z = 0; z < psi.size(); ++z) w[z] = std::norm(psi.amps[z]);
            return out;
        },
        py::arg("spec"), py::arg("t"));
    m.def(
        "dump_probabilities",
        [](const CircuitSpec& spec, int t, const std::string& path) {
            StateVector psi = evolve(spec, t);
            dump_probabilities(psi, spec, t, path);
        },
        py::arg("spec"), py::arg("t"), py::arg("path"));
    m.def(
        "load_probabilities",
        [](const std::string& path) {
            ProbabilityDump d = load_probabilities(path);
            py::dict out;
            out["L"] = d.L;
            out["t"] = d.t;
            out["spec_hash"] = d.spec_hash;
            py::array_t<double> p(static_cast<py::ssize_t>(d.p.size()));
            std::copy(d.p.begin(), d.p.end(), p.mutable_data());
            out["p"] = p;
            return out;
        },
        py::arg("path"));

    // ---- participation moments ---------------------------------------------
    m.def(
        "ipr", [](const ComplexArray& amps, int q) { return ipr(state_from_array(amps), q); },
        py::arg("amplitudes"), py::arg("q"));
    m.def("participation_entropy", &participation_entropy, py::arg("ipr_value"),
          py::arg("q"));
    m.def("haar_ipr", &haar_ipr, py::arg("L"), py::arg("q"));
    m.def("ipr_du_analytic", &ipr_du_analytic, py::arg("L"), py::arg("t"), py::arg("q"));
    m.def("s_q_du_analytic", &s_q_du_analytic, py::arg("L"), py::arg("t"), py::arg("q"));
    m.def("haar_ratio_du_analytic", &haar_ratio_du_analytic, py::arg("t"), py::arg("q"));
    m.def("ipr_perturbed_analytic", &ipr_perturbed_analytic, py::arg("L"), py::arg("t"),
          py::arg("q"), py::arg("theta"));

    // ---- overlap distributions ----------------------------------------------
    m.def("p_du_density", &p_du_density, py::arg("p"), py::arg("L"), py::arg("t"));
    m.def("porter_thomas_density", &porter_thomas_density, py::arg("p"), py::arg("L"));
    m.def("p_perturbed_density", &p_perturbed_density, py::arg("p"), py::arg("L"),
          py::arg("t"), py::arg("theta"));

    py::class_<OverlapDistribution>(m, "OverlapDistribution")
        .def_readonly("L", &OverlapDistribution::L)
        .def_readonly("support_hi", &OverlapDistribution::support_hi)
        .def_property_readonly("atoms",
                               [](const OverlapDistribution& d) {
                                   py::list out;
                                   for (const PointMass& a : d.atoms)
                                       out.append(py::make_tuple(a.p, a.w));
                                   return out;
                               })
        .def("pdf", [](const OverlapDistribution& d, double p) { return d.pdf(p); },
             py::arg("p"))
        .def("cdf", [](const OverlapDistribution& d, double p) { return d.cdf(p); },
             py::arg("p"));

    m.def("du_distribution", &du_distribution, py::arg("L"), py::arg("t"));
    m.def("porter_thomas_distribution", &porter_thomas_distribution, py::arg("L"));
    m.def("perturbed_distribution", &perturbed_distribution, py::arg("L"), py::arg("t"),
          py::arg("theta"));
    m.def("normalization", &normalization, py::arg("dist"));
    m.def("moment_of_density", &moment_of_density, py::arg("dist"), py::arg("q"));
    m.def(
        "ks_statistic",
        [](std::vector<double> samples, const OverlapDistribution& ref) {
            return ks_statistic(std::move(samples), ref);
        },
        py::arg("samples"), py::arg("reference"));

    // ---- space-time dual ------------------------------------------------------
    m.def(
        "dual_deviation",
        [](const CircuitSpec& spec, int t) {
            StateVector psi = evolve(spec, t);
            DualTransferSet dts = build_dual_set(spec, t);
            double worst = 0.0;
            for (std::uint64_t z = 0; z < psi.size(); ++z)
                worst = std::max(worst,
                                 std::abs(overlap_via_dual(dts, z) - psi.amps[z]));
            return worst;
        },
        py::arg("spec"), py::arg("t"),
        "max_z |<z|psi(t)> via transfer product - direct|");
    m.def(
        "m_element", [](const GateU2& u, int t, int z) { return m_element(u, t, z); },
        py::arg("u"), py::arg("t"), py::arg("z"));
    m.def(
        "ipr_via_m",
        [](int L, int t, int q, const GateU2& u) { return ipr_via_m(L, t, q, u); },
        py::arg("L"), py::arg("t"), py::arg("q"), py::arg("u"));

    // ---- Haar toolbox -----------------------------------------------------------
    m.def(
        "sample_haar",
        [](int d, std::uint64_t seed) {
            Rng rng(seed);
            Matrix u = sample_haar(d, rng);
            py::array_t<cplx> out({d, d});
            auto r = out.mutable_unchecked<2>();
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) r(i, j) = u.at(i, j);
            return out;
        },
        py::arg("d"), py::arg("seed"));
    m.def("haar_moment_closed", &haar_moment_closed, py::arg("d"), py::arg("q"));

    py::class_<MomentEstimate>(m, "MomentEstimate")
        .def_readonly("d", &MomentEstimate::d)
        .def_readonly("q", &MomentEstimate::q)
        .def_readonly("samples", &MomentEstimate::samples)
        .def_readonly("mean", &MomentEstimate::mean)
        .def_readonly("std_error", &MomentEstimate::std_error)
        .def("__repr__", [](const MomentEstimate& e) {
            return "<MomentEstimate d=" + std::to_string(e.d) +
                   " q=" + std::to_string(e.q) + " mean=" + std::to_string(e.mean) +
                   ">";
        });
    m.def("mc_moment", &mc_moment, py::arg("d"), py::arg("q"), py::arg("n"),
          py::arg("seed"), py::arg("row") = 0, py::arg("col") = 0,
          py::arg("threads") = 0);

    // ---- small utilities -----------------------------------------------------
    m.def("parse_angle", &parse_angle, py::arg("text"));
    m.def("format_angle", &format_angle, py::arg("value"));
    m.def(
        "derive_seed",
        [](std::uint64_t master, const std::vector<std::uint64_t>& ids) {
            return derive_seed(master, ids.begin(), ids.end());
        },
        py::arg("master"), py::arg("ids"));
}
