#include <cmath>
#include <limits>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jcl/currents.hpp"
#include "jcl/dot.hpp"
#include "jcl/error.hpp"
#include "jcl/scattering.hpp"
#include "jcl/symmetry.hpp"

namespace py = pybind11;
using namespace jcl;

namespace {

py::dict report_dict(const currents::CurrentReport& r) {
    py::dict d;
    d["j_contact_left"] = r.j_contact_left;
    d["j_contact_right"] = r.j_contact_right;
    d["j_photon_left"] = r.j_photon_left;
    d["j_photon_right"] = r.j_photon_right;
    d["j_total_left"] = r.j_total_left;
    d["j_total_right"] = r.j_total_right;
    d["j_photon_number"] = r.j_photon_number;
    d["j_photon_left_direct"] = r.j_photon_left_direct;
    d["j_photon_right_direct"] = r.j_photon_right_direct;
    d["j_photon_number_paired"] = r.j_photon_number_paired;
    py::dict q;
    q["j_contact_left"] = r.quad_error.j_contact_left;
    q["j_photon_left"] = r.quad_error.j_photon_left;
    q["j_total_left"] = r.quad_error.j_total_left;
    q["j_total_right"] = r.quad_error.j_total_right;
    q["j_photon_number"] = r.quad_error.j_photon_number;
    d["quad_error"] = q;
    d["nph_used"] = r.nph_used;
    d["converged"] = r.converged;
    d["cutoff_change"] = r.cutoff_change;
    d["photon_method"] = std::string(currents::to_string(r.photon_method));
    d["evaluations"] = r.evaluations;
    d["symmetry"] = r.symmetry;
    return d;
}

currents::CurrentOptions make_options(double rel_tol, double abs_tol, std::optional<int> nph, bool strict, int threads) {
    currents::CurrentOptions o;
    o.rel_tol = rel_tol;
    o.abs_tol = abs_tol;
    o.nph = nph;
    o.strict = strict;
    o.threads = threads;
    return o;
}

}  // namespace

PYBIND11_MODULE(_jcl, m) {
    m.doc() = "Transport through a two-level dot coupled to two leads and a photon resonator";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

    py::enum_<Side>(m, "Side").value("left", Side::left).value("right", Side::right);

    py::class_<ModelConfig>(m, "ModelConfig")
        .def(py::init([](double v_left, double v_right, double g_el, double level_base, double spacing,
                         double contact_angle, double contact_phase, double omega, int cutoff, double g_ph,
                         double charge_unit) {
                 ModelConfig c;
                 c.left.bias = v_left;
                 c.right.bias = v_right;
                 c.g_el = g_el;
                 c.dot = {level_base, spacing, contact_angle, contact_phase};
                 c.photon = {omega, cutoff};
                 c.g_ph = g_ph;
                 c.charge_unit = charge_unit;
                 return c;
             }),
             py::kw_only(), py::arg("v_left") = 0.0, py::arg("v_right") = 0.0, py::arg("g_el") = 0.0,
             py::arg("level_base") = 0.0, py::arg("spacing") = 1.0, py::arg("contact_angle") = 0.0,
             py::arg("contact_phase") = 0.0, py::arg("omega") = 1.0, py::arg("cutoff") = 4, py::arg("g_ph") = 0.0,
             py::arg("charge_unit") = 1.0)
        .def_property("v_left", [](const ModelConfig& c) { return c.left.bias; },
                      [](ModelConfig& c, double v) { c.left.bias = v; })
        .def_property("v_right", [](const ModelConfig& c) { return c.right.bias; },
                      [](ModelConfig& c, double v) { c.right.bias = v; })
        .def_readwrite("g_el", &ModelConfig::g_el)
        .def_readwrite("g_ph", &ModelConfig::g_ph)
        .def_readwrite("charge_unit", &ModelConfig::charge_unit)
        .def_property("level_base", [](const ModelConfig& c) { return c.dot.level_base; },
                      [](ModelConfig& c, double v) { c.dot.level_base = v; })
        .def_property("spacing", [](const ModelConfig& c) { return c.dot.spacing; },
                      [](ModelConfig& c, double v) { c.dot.spacing = v; })
        .def_property("contact_angle", [](const ModelConfig& c) { return c.dot.contact_angle; },
                      [](ModelConfig& c, double v) { c.dot.contact_angle = v; })
        .def_property("contact_phase", [](const ModelConfig& c) { return c.dot.contact_phase; },
                      [](ModelConfig& c, double v) { c.dot.contact_phase = v; })
        .def_property("omega", [](const ModelConfig& c) { return c.photon.omega; },
                      [](ModelConfig& c, double v) { c.photon.omega = v; })
        .def_property("cutoff", [](const ModelConfig& c) { return c.photon.cutoff; },
                      [](ModelConfig& c, int v) { c.photon.cutoff = v; });

    py::class_<ThermalState>(m, "ThermalState")
        .def(py::init([](double beta, double mu_left, double mu_right) {
                 return ThermalState{Beta(beta), mu_left, mu_right};
             }),
             py::kw_only(), py::arg("beta") = 1.0, py::arg("mu_left") = 0.0, py::arg("mu_right") = 0.0)
        .def_property("beta", [](const ThermalState& t) { return t.beta.value(); },
                      [](ThermalState& t, double v) { t.beta = Beta(v); })
        .def_readwrite("mu_left", &ThermalState::mu_left)
        .def_readwrite("mu_right", &ThermalState::mu_right)
        .def("photon_weight", &ThermalState::photon_weight, py::arg("n"), py::arg("omega"));

    py::class_<ValidatedConfig>(m, "ValidatedConfig")
        .def_property_readonly("config", &ValidatedConfig::config)
        .def_property_readonly("cutoff", &ValidatedConfig::cutoff)
        .def_property_readonly("omega", &ValidatedConfig::omega)
        .def("with_cutoff", &ValidatedConfig::with_cutoff);

    m.def("validate", py::overload_cast<const ModelConfig&>(&validate), py::arg("config"));

    py::class_<symmetry::SymmetryFlags>(m, "SymmetryFlags")
        .def_readonly("time_reversible", &symmetry::SymmetryFlags::time_reversible)
        .def_readonly("mirror_symmetric", &symmetry::SymmetryFlags::mirror_symmetric)
        .def_readonly("case_E", &symmetry::SymmetryFlags::case_E)
        .def_readonly("case_S", &symmetry::SymmetryFlags::case_S)
        .def_readonly("case_C", &symmetry::SymmetryFlags::case_C)
        .def("commuting", &symmetry::SymmetryFlags::commuting);
    m.def("classify", &symmetry::classify, py::arg("config"), py::arg("thermal"));

    m.def("dot_hamiltonian",
          [](const ValidatedConfig& cfg, bool contact) {
              return dot::build_dot_hamiltonian(cfg, contact ? dot::Basis::contact : dot::Basis::eigen).matrix;
          },
          py::arg("config"), py::arg("contact_basis") = false);
    m.def("jc_spectrum", &dot::jc_spectrum_closed_form, py::arg("config"), py::arg("n_max"));

    py::class_<scattering::Channel>(m, "Channel")
        .def_readonly("lead", &scattering::Channel::lead)
        .def_readonly("n", &scattering::Channel::n)
        .def("__repr__", [](const scattering::Channel& c) {
            return std::string("Channel(") + to_string(c.lead) + ", " + std::to_string(c.n) + ")";
        });
    py::class_<scattering::SMatrix>(m, "SMatrix")
        .def_readonly("lam", &scattering::SMatrix::lambda)
        .def_property_readonly("channels", [](const scattering::SMatrix& s) { return s.channel_set.channels; })
        .def_readonly("entries", &scattering::SMatrix::entries)
        .def("unitarity_defect", &scattering::SMatrix::unitarity_defect)
        .def("cross_sections", [](const scattering::SMatrix& s) { return scattering::cross_sections(s).sigma; });
    m.def("smatrix", &scattering::smatrix, py::arg("config"), py::arg("lam"));

    m.def("cutoff_policy", &currents::cutoff_policy, py::arg("config"), py::arg("thermal"));
    m.def("compute_currents",
          [](const ValidatedConfig& cfg, const ThermalState& t, double rel_tol, double abs_tol, std::optional<int> nph,
             bool strict, int threads) {
              validate(t);
              currents::CurrentReport r;
              {
                  py::gil_scoped_release release;
                  r = currents::compute_currents(cfg, t, make_options(rel_tol, abs_tol, nph, strict, threads));
              }
              return report_dict(r);
          },
          py::arg("config"), py::arg("thermal"), py::kw_only(), py::arg("rel_tol") = 1e-8, py::arg("abs_tol") = 1e-14,
          py::arg("nph") = py::none(), py::arg("strict") = false, py::arg("threads") = 0);
    m.def("light_absorbing",
          [](double omega, double beta, double g_el, double g_ph) {
              currents::ScenarioParams p;
              p.omega = omega;
              p.beta = beta;
              p.g_el = g_el;
              p.g_ph = g_ph;
              return py::make_tuple(currents::light_absorbing_config(p), currents::light_absorbing_thermal(p));
          },
          py::kw_only(), py::arg("omega") = 4.0, py::arg("beta") = 1.0, py::arg("g_el") = 0.2, py::arg("g_ph") = 0.2);

    m.attr("inf") = std::numeric_limits<double>::infinity();
}
