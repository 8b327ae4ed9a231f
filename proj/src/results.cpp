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

#include "ringcluster/results.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "ringcluster/errors.hpp"
#include "ringcluster/gaussian.hpp"

#ifndef RINGCLUSTER_VERSION
#define RINGCLUSTER_VERSION "0.0.0"
#endif

namespace ringcluster {

namespace {

using nlohmann::json;

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

json matrix_json(const RealMatrix &m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            data.push_back(m(i, k));
        }
    }
    j["data"] = data;
    return j;
}

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

SweepRow sweep_point(const RunConfig &base, double beta, double r, double stage_time) {
    SweepRow row;
    row.beta = beta;
    row.r = r;
    row.stage_time = stage_time;
    row.slow_regime = convergence_eigenvalues(beta, r, 1.0).slow();
    RunConfig c = base;
    c.beta = beta;
    c.r = r;
    c.stage_time = stage_time;
    try {
        c.validate();
        const PhysicalParams p = c.params();
        const Protocol protocol = builtin_protocol(c.protocol, p, stage_time);
        const ProtocolRun run = run_protocol(protocol, p, c.method, stage_time);
        const VarianceReport rep = is_cluster(run.final_state, c.protocol, p.xi(), c.resolved_tol());
        row.max_error = rep.max_error();
        row.pass = rep.pass;
    } catch (const Error &e) {
        row.max_error = std::numeric_limits<double>::quiet_NaN();
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::string version() {
    return RINGCLUSTER_VERSION;
}

RunOutcome execute_run(const RunConfig &config) {
    config.validate();
    const PhysicalParams params = config.params();
    const Protocol protocol = builtin_protocol(config.protocol, params, config.stage_time);
    const ProtocolRun run = run_protocol(protocol, params, config.method, config.stage_time);
    const VarianceReport report = is_cluster(run.final_state, config.protocol, params.xi(), config.resolved_tol());

    const std::vector<std::size_t> ensembles = {1, 2, 3, 4};
    const RealMatrix ensemble_cov = run.final_state.reduced(ensembles).cov();

    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = "ringcluster";
    doc["version"] = version();
    doc["timestamp"] = utc_timestamp();
    doc["config"] = to_json(config);
    doc["xi"] = params.xi();
    doc["transform"] = protocol.transform.name;

    json trace = json::array();
    for (const StageTrace &t : run.trace) {
        json s;
        s["stage"] = t.stage;
        s["target"] = t.target ? json("d" + std::to_string(*t.target + 1)) : json(nullptr);
        s["nullifier_variances"] = t.nullifiers;
        s["ensemble_purity"] = t.ensemble_purity;
        s["cavity_deviation"] = t.cavity_deviation;
        trace.push_back(s);
    }
    doc["trace"] = trace;

    json cov = matrix_json(run.final_state.cov());
    cov["modes"] = run.final_state.labels();
    cov["ordering"] = "q1,p1,...,qn,pn";
    doc["final_covariance"] = cov;

    json nullifiers = json::array();
    for (std::size_t a = 0; a < report.variances.size(); ++a) {
        nullifiers.push_back(protocol.graph.nullifier_expression(a));
    }
    doc["nullifiers"] = nullifiers;
    doc["nullifier_variances"] = report.variances;
    doc["targets"] = report.targets;
    doc["vacuum_variances"] = report.vacuum;
    doc["max_error"] = report.max_error();
    doc["purity"] = purity(ensemble_cov);
    doc["symplectic_eigenvalues"] = symplectic_eigenvalues(ensemble_cov);
    doc["warnings"] = run.warnings;

    const auto conv = convergence_eigenvalues(config.beta, config.r, 1.0);
    json regime;
    regime["lambda_plus"] = complex_json(conv.lambda_plus);
    regime["lambda_minus"] = complex_json(conv.lambda_minus);
    regime["regime"] = to_string(conv.regime);
    regime["slow"] = conv.slow();
    doc["convergence"] = regime;

    bool pass = report.pass;
    if (config.oracle) {
        FockConfig fc;
        fc.beta = config.beta;
        fc.r = config.r;
        fc.t_final = config.stage_time;
        const FockResult fock = integrate_two_mode(fc);
        const RealMatrix gauss = gaussian_two_mode_covariance(fc);
        const double diff = (fock.covariance - gauss).cwiseAbs().maxCoeff();
        json o;
        o["cutoffs"] = {fc.cutoff_a, fc.cutoff_d};
        o["dt"] = fc.dt;
        o["t_final"] = fc.t_final;
        o["fock_covariance"] = matrix_json(fock.covariance);
        o["gaussian_covariance"] = matrix_json(gauss);
        o["max_abs_difference"] = diff;
        o["tolerance"] = kOracleTolerance;
        o["max_trace_error"] = fock.max_trace_error;
        o["max_leakage"] = fock.max_leakage;
        o["step_halving_error"] = fock.step_halving_error;
        o["pass"] = diff <= kOracleTolerance;
        doc["oracle"] = o;
        pass = pass && diff <= kOracleTolerance;
    }
    doc["verdict"] = pass ? "pass" : "fail";
    return {doc, pass};
}

std::vector<SweepRow> run_sweep(const RunConfig &config) {
    config.validate();
    const auto grid = [](const std::vector<double> &g, double fallback) {
        return g.empty() ? std::vector<double>{fallback} : g;
    };
    const auto betas = grid(config.sweep_beta, config.beta);
    const auto rs = grid(config.sweep_r, config.r);
    const auto times = grid(config.sweep_stage_time, config.stage_time);
    const std::size_t total = betas.size() * rs.size() * times.size();
    if (total == 0) {
        throw ConfigError("sweep: empty grid");
    }

    std::vector<SweepRow> rows(total);
    std::size_t workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, total);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < total; i += workers) {
                    const std::size_t it = i % times.size();
                    const std::size_t ir = (i / times.size()) % rs.size();
                    const std::size_t ib = i / (times.size() * rs.size());
                    rows[i] = sweep_point(config, betas[ib], rs[ir], times[it]);
                }
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (const auto &f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    return rows;
}

json sweep_document(const RunConfig &config, const std::vector<SweepRow> &rows) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = "ringcluster";
    doc["version"] = version();
    doc["timestamp"] = utc_timestamp();
    doc["config"] = to_json(config);
    doc["columns"] = {"beta", "r", "stage_time", "max_error", "slow_regime", "verdict", "error"};
    json table = json::array();
    for (const SweepRow &row : rows) {
        table.push_back({row.beta, row.r, row.stage_time,
                         std::isfinite(row.max_error) ? json(row.max_error) : json(nullptr), row.slow_regime,
                         row.pass ? "pass" : "fail", row.error});
    }
    doc["rows"] = table;
    return doc;
}

json tables_document(const std::vector<StageComparison> &comparisons) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = "ringcluster";
    doc["version"] = version();
    json stages = json::array();
    std::size_t unexpected = 0;
    for (const StageComparison &c : comparisons) {
        json s;
        s["protocol"] = to_string(c.kind);
        s["stage"] = c.index;
        s["status"] = to_string(c.status);
        s["note"] = c.note;
        json diffs = json::array();
        for (const FieldDiff &d : c.diffs) {
            diffs.push_back({{"field", d.field}, {"printed", d.printed}, {"generated", d.generated},
                             {"whitelisted", d.flagged}});
        }
        s["differences"] = diffs;
        stages.push_back(s);
        unexpected += c.status == MatchStatus::UnexpectedMismatch;
    }
    doc["stages"] = stages;
    doc["unexpected_mismatches"] = unexpected;
    return doc;
}

json physical_document(const PhysicalInputs &in) {
    const double kappa = cavity_decay_from_finesse(in.finesse, in.round_trip_length_m);
    const double gamma_eff = effective_spontaneous_rate(in.gamma_over_2pi_hz, in.omega_over_detuning);
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = "ringcluster";
    doc["version"] = version();
    doc["inputs"] = {{"finesse", in.finesse},
                     {"round_trip_length_m", in.round_trip_length_m},
                     {"gamma_over_2pi_hz", in.gamma_over_2pi_hz},
                     {"omega_over_detuning", in.omega_over_detuning}};
    doc["kappa_rad_per_s"] = kappa;
    doc["kappa_over_2pi_hz"] = kappa / (2.0 * std::numbers::pi);
    doc["gamma_eff_hz"] = gamma_eff;
    doc["gamma_eff_over_kappa_2pi"] = gamma_eff / (kappa / (2.0 * std::numbers::pi));
    return doc;
}

json without_timestamp(json doc) {
    doc.erase("timestamp");
    return doc;
}

std::string dump_document(const json &doc) {
    return doc.dump(2) + "\n";
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw Error("failed writing '" + path + "'");
    }
}

}  // namespace ringcluster
