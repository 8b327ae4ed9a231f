// Copyright 2026 The ringcluster Authors
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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "ringcluster/errors.hpp"
#include "ringcluster/fock_oracle.hpp"
#include "ringcluster/gaussian.hpp"
#include "ringcluster/model.hpp"
#include "ringcluster/protocols.hpp"
#include "ringcluster/results.hpp"
#include "ringcluster/run_config.hpp"
#include "ringcluster/verify.hpp"

namespace py = pybind11;
using namespace ringcluster;

namespace {

ClusterKind kind_of(const std::string &name) {
    return parse_cluster_kind(name);
}

GaussianState make_state(const RealVector &mean, const RealMatrix &cov) {
    std::vector<std::string> labels;
    if (cov.rows() == 8) {
        labels = {"c1", "c2", "c3", "c4"};
    } else {
        for (Eigen::Index k = 0; k < cov.rows() / 2; ++k) {
            labels.push_back("m" + std::to_string(k));
        }
    }
    return GaussianState(labels, mean, cov);
}

py::object parse_json(const nlohmann::json &doc) {
    return py::module_::import("json").attr("loads")(doc.dump());
}

py::dict run_dict(const ProtocolRun &run) {
    py::dict out;
    out["covariance"] = run.final_state.cov();
    out["mean"] = run.final_state.mean();
    out["modes"] = run.final_state.labels();
    py::list trace;
    for (const StageTrace &t : run.trace) {
        py::dict s;
        s["stage"] = t.stage;
        s["target"] = t.target ? py::object(py::int_(*t.target)) : py::object(py::none());
        s["nullifier_variances"] = t.nullifiers;
        s["ensemble_purity"] = t.ensemble_purity;
        s["cavity_deviation"] = t.cavity_deviation;
        trace.append(s);
    }
    out["trace"] = trace;
    out["warnings"] = run.warnings;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gaussian simulation of dissipative cluster-state preparation";
    m.attr("__version__") = version();

    auto base = py::register_exception<Error>(m, "RingclusterError", PyExc_RuntimeError);
    py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
    py::register_exception<InvalidTransform>(m, "InvalidTransform", base.ptr());
    auto physics = py::register_exception<PhysicsError>(m, "PhysicsError", base.ptr());
    py::register_exception<NoSteadyState>(m, "NoSteadyState", physics.ptr());
    py::register_exception<Unphysical>(m, "Unphysical", physics.ptr());
    py::register_exception<CutoffTooSmall>(m, "CutoffTooSmall", physics.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    m.def(
        "steady_state",
        [](const ComplexMatrix &F, const ComplexMatrix &G, const std::vector<double> &damping) {
            return steady_state(drift_diffusion(QuadraticHamiltonian(F, G), damping));
        },
        py::arg("F"), py::arg("G"), py::arg("damping"));
    m.def(
        "evolve",
        [](const RealMatrix &cov, const ComplexMatrix &F, const ComplexMatrix &G, const std::vector<double> &damping,
           double t) {
            const auto state = make_state(RealVector::Zero(cov.rows()), cov);
            return evolve(state, drift_diffusion(QuadraticHamiltonian(F, G), damping), t).cov();
        },
        py::arg("cov"), py::arg("F"), py::arg("G"), py::arg("damping"), py::arg("t"));
    m.def("symplectic_eigenvalues", &symplectic_eigenvalues, py::arg("cov"));
    m.def("purity", &purity, py::arg("cov"));
    m.def("quadrature_map", &quadrature_map, py::arg("U"));

    m.def(
        "builtin_transform", [](const std::string &kind) { return builtin_transform(kind_of(kind)).U; },
        py::arg("kind"));
    m.def(
        "protocol_transform", [](const std::string &kind) { return protocol_transform(kind_of(kind)).U; },
        py::arg("kind"));
    m.def(
        "analytic_targets", [](const std::string &kind, double xi) { return analytic_targets(kind_of(kind), xi); },
        py::arg("kind"), py::arg("xi"));
    m.def(
        "nullifier_variances",
        [](const RealMatrix &cov, const std::string &kind) {
            return nullifier_variances(make_state(RealVector::Zero(cov.rows()), cov), builtin_graph(kind_of(kind)));
        },
        py::arg("cov"), py::arg("kind"));

    m.def(
        "run_protocol",
        [](const std::string &kind, double r, double beta, const std::string &method, double stage_time) {
            const auto params = PhysicalParams::from_coupling(beta, r);
            const auto protocol = builtin_protocol(kind_of(kind), params, stage_time);
            const Method m = parse_method(method);
            std::optional<ProtocolRun> run;
            {
                py::gil_scoped_release release;
                run = run_protocol(protocol, params, m, stage_time);
            }
            return run_dict(*run);
        },
        py::arg("kind"), py::arg("r") = 0.5, py::arg("beta") = 2.5, py::arg("method") = "lyapunov",
        py::arg("stage_time") = 4.0);
    m.def(
        "is_cluster",
        [](const RealMatrix &cov, const std::string &kind, double xi, double tol) {
            const auto rep = is_cluster(make_state(RealVector::Zero(cov.rows()), cov), kind_of(kind), xi, tol);
            py::dict out;
            out["pass"] = rep.pass;
            out["variances"] = rep.variances;
            out["targets"] = rep.targets;
            out["max_error"] = rep.max_error();
            return out;
        },
        py::arg("cov"), py::arg("kind"), py::arg("xi"), py::arg("tol"));

    m.def(
        "convergence_eigenvalues",
        [](double beta, double r, double kappa) {
            const auto c = convergence_eigenvalues(beta, r, kappa);
            return py::make_tuple(c.lambda_plus, c.lambda_minus, c.slow());
        },
        py::arg("beta"), py::arg("r"), py::arg("kappa") = 1.0);

    m.def(
        "integrate_two_mode",
        [](double beta, double r, double t_final, std::size_t cutoff, double dt, bool step_halving) {
            FockConfig c;
            c.beta = beta;
            c.r = r;
            c.t_final = t_final;
            c.cutoff_a = c.cutoff_d = cutoff;
            c.dt = dt;
            c.step_halving = step_halving;
            FockResult res;
            {
                py::gil_scoped_release release;
                res = integrate_two_mode(c);
            }
            py::dict out;
            out["covariance"] = res.covariance;
            out["gaussian_covariance"] = gaussian_two_mode_covariance(c);
            out["max_trace_error"] = res.max_trace_error;
            out["max_leakage"] = res.max_leakage;
            out["step_halving_error"] = res.step_halving_error;
            return out;
        },
        py::arg("beta"), py::arg("r"), py::arg("t_final"), py::arg("cutoff") = 20, py::arg("dt") = 0.02,
        py::arg("step_halving") = false);

    m.def(
        "run",
        [](const std::string &config_json) { return parse_json(execute_run(parse_run_config(config_json)).document); },
        py::arg("config_json"), "Run from a JSON config string and return the result document.");
    m.def(
        "check_tables", []() { return parse_json(tables_document(check_tables())); },
        "Compare the printed stage tables with generated stages.");
}
