// Copyright 2026 The qfimkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <optional>
#include <sstream>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfimkit/errors.hpp"
#include "qfimkit/fock_oracle.hpp"
#include "qfimkit/optimizer.hpp"
#include "qfimkit/qfim.hpp"
#include "qfimkit/scenario.hpp"

namespace py = pybind11;
using namespace qfimkit;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum Fisher information for multiphase estimation with Gaussian probes";

    static py::exception<Error> base_error(m, "QfimkitError", PyExc_RuntimeError);
    static py::exception<ConfigError> config_error(m, "ConfigError", base_error.ptr());
    static py::exception<SingularMatrix> singular_error(m, "SingularMatrixError", base_error.ptr());
    static py::exception<DomainError> domain_error(m, "DomainError", base_error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError &e) {
            py::set_error(config_error, e.what());
        } catch (const SingularMatrix &e) {
            py::set_error(singular_error, e.what());
        } catch (const DomainError &e) {
            py::set_error(domain_error, e.what());
        } catch (const Error &e) {
            py::set_error(base_error, e.what());
        }
    });

    py::class_<ModeParams>(m, "ModeParams")
        .def(py::init([](cplx beta, double xi, double theta) {
                 ModeParams p{beta, xi, theta};
                 p.validate();
                 return p;
             }),
             py::arg("beta") = cplx(0.0, 0.0), py::arg("xi") = 0.0, py::arg("theta") = 0.0)
        .def_readonly("beta", &ModeParams::beta)
        .def_readonly("xi", &ModeParams::xi_mag)
        .def_readonly("theta", &ModeParams::theta)
        .def("energy", &ModeParams::energy)
        .def("__repr__", [](const ModeParams &p) {
            std::ostringstream s;
            s << "ModeParams(beta=" << p.beta << ", xi=" << p.xi_mag << ", theta=" << p.theta << ")";
            return s.str();
        });

    py::class_<PassiveUnitary>(m, "PassiveUnitary")
        .def(py::init([](const Eigen::MatrixXcd &a) { return PassiveUnitary(ComplexMatrix(a)); }), py::arg("matrix"))
        .def_static("identity", &PassiveUnitary::identity, py::arg("n"))
        .def_static("orthogonal", &PassiveUnitary::orthogonal, py::arg("matrix"))
        .def_property_readonly("matrix", [](const PassiveUnitary &u) { return u.matrix().values(); })
        .def_property_readonly("is_orthogonal", &PassiveUnitary::is_orthogonal);

    py::class_<ProbeSpec>(m, "ProbeSpec")
        .def(py::init<std::vector<ModeParams>, PassiveUnitary>(), py::arg("modes"), py::arg("interferometer"))
        .def_static("equal_squeezing", &ProbeSpec::equal_squeezing, py::arg("d"), py::arg("xi"), py::arg("interferometer"))
        .def_property_readonly("modes", &ProbeSpec::modes)
        .def_property_readonly("interferometer", &ProbeSpec::interferometer)
        .def_property_readonly("phase_count", &ProbeSpec::phase_count)
        .def("output_displacements", &ProbeSpec::output_displacements)
        .def("total_energy", [](const ProbeSpec &p) { return total_energy(p); });

    m.def("photon_covariances",
          [](const ProbeSpec &p) { return photon_covariances(build_q_matrices(p)).entries().values(); },
          py::arg("probe"), "Raw photon-number covariance matrix h.");
    m.def("qfim", [](const ProbeSpec &p) { return probe_qfim(p).dense().values(); }, py::arg("probe"));
    m.def("trace_inverse", [](const ProbeSpec &p) { return trace_inverse(probe_qfim(p)); }, py::arg("probe"));
    m.def("q_function", [](const ProbeSpec &p, const CVector &alpha) { return q_function_value(p, alpha); },
          py::arg("probe"), py::arg("alpha"));
    m.def("oracle_covariances",
          [](const ProbeSpec &p, std::optional<Index> cutoff) { return contracted_moments(p, cutoff).entries().values(); },
          py::arg("probe"), py::arg("cutoff") = py::none(), "Photon-number covariances from the Fock-space oracle.");
    m.def("attainability", &attainability_check, py::arg("probe"), py::arg("phases"), py::arg("i"), py::arg("j"),
          py::arg("total_cutoff") = py::none());

    m.def("h_of_allocation", &h_of_allocation, py::arg("e_j"), py::arg("e_gamma"), py::arg("theta_gamma"));
    m.def("h_sim", [](double e_total, Index d) { return h_sim({e_total, d}).dense().values(); }, py::arg("e_total"),
          py::arg("d"));
    m.def(
        "optimize_allocation",
        [](double e_total, Index d) {
            const AllocationResult r = optimize_allocation({e_total, d});
            py::dict out;
            out["per_mode_energy"] = r.per_mode_energy;
            out["displacement_fraction"] = r.displacement_fraction;
            out["displacement_angle"] = r.displacement_angle;
            out["h_diag"] = r.h_diag;
            out["objective"] = r.objective;
            bool beaten = false;
            for (const auto &g : r.grid) beaten = beaten || g.interior_beats_endpoint;
            out["grid_interior_beats_endpoint"] = beaten;
            return out;
        },
        py::arg("e_total"), py::arg("d"));
    m.def("ratio_r", &ratio_r, py::arg("d"), py::arg("xi"));
    m.def("ratio_r_first_principles", &ratio_r_first_principles, py::arg("d"), py::arg("xi"));
    m.def("ratio_r_limit", &ratio_r_limit, py::arg("xi"));
    m.def("db_to_xi", &db_to_xi, py::arg("db"));
    m.def("xi_to_db", &xi_to_db, py::arg("xi"));

    m.def(
        "run_scenario",
        [](const std::string &config_json) {
            const ScenarioConfig config = parse_config(config_json);
            std::ostringstream csv;
            const ScenarioReport report = run_scenario(config, csv);
            return py::make_tuple(csv.str(), report.to_json());
        },
        py::arg("config_json"), "Returns (csv_text, summary_json).");
}
