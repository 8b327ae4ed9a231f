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

#include "ringcluster/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ringcluster/errors.hpp"

namespace ringcluster {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

ComplexMatrix rows(std::initializer_list<std::array<Complex, 4>> list) {
    ComplexMatrix U(4, 4);
    Eigen::Index j = 0;
    for (const auto &row : list) {
        for (Eigen::Index k = 0; k < 4; ++k) {
            U(j, k) = row[static_cast<std::size_t>(k)];
        }
        ++j;
    }
    return U;
}

std::string field_name(const char *what, std::size_t ensemble) {
    std::ostringstream out;
    out << what << '[' << ensemble + 1 << ']';
    return out.str();
}

// Amplitudes in units of Omega. s_has_r marks Omega_s printed as r * coefficient.
struct TableRow {
    std::array<double, 4> u;
    std::array<double, 4> s;
    std::array<bool, 4> s_has_r;
    std::array<double, 4> phi_u;
    std::array<double, 4> phi_s;
    std::array<bool, 4> printed;
    std::vector<std::string> flags;
    const char *note;
};

const TableRow &table_row(ClusterKind kind, int index) {
    const double r2 = std::sqrt(2.0);
    const double a10 = 2.0 / std::sqrt(10.0);
    const double b10 = 4.0 / std::sqrt(10.0);
    const double t1 = std::sqrt(3.0) / 3.0;
    const double t2 = std::sqrt(6.0) / 3.0;
    constexpr std::array<bool, 4> all{true, true, true, true};
    constexpr std::array<bool, 4> first_two{true, true, false, false};
    constexpr std::array<bool, 4> with_r{true, true, true, true};
    constexpr std::array<bool, 4> r_on_first_two{true, true, false, false};
    static const std::array<TableRow, 12> kTables = {{
        // linear
        {{r2, r2, 0, 0}, {r2, r2, 0, 0}, with_r, {1.5 * kPi, kPi, 0, 0}, {0.5 * kPi, kPi, 0, 0}, first_two, {}, ""},
        {{a10, a10, b10, b10},
         {a10, a10, b10, b10},
         with_r,
         {1.5 * kPi, 0, 0.5 * kPi, 0},
         {0.5 * kPi, 0, 1.5 * kPi, 0},
         all,
         {},
         ""},
        {{0, 0, r2, r2},
         {0, 0, r2, r2},
         with_r,
         {0, 0, 1.5 * kPi, kPi},
         {0, 0, 0.5 * kPi, kPi},
         all,
         {"phi_u[3]", "phi_s[3]", "phi_u[4]", "phi_s[4]"},
         "phases of ensembles 3 and 4 are swapped relative to d_L3 = -(c3 + i c4)/sqrt2; the printed "
         "table addresses -(i c3 + c4)/sqrt2, which is not orthogonal to d_L2"},
        {{b10, b10, a10, a10},
         {b10, b10, a10, a10},
         with_r,
         {0, 0.5 * kPi, 0, 1.5 * kPi},
         {0, 1.5 * kPi, 0, 0.5 * kPi},
         all,
         {},
         "printed for -d_L4 (overall sign only)"},
        // square
        {{a10, a10, b10, b10},
         {a10, a10, b10, b10},
         r_on_first_two,
         {1.5 * kPi, 1.5 * kPi, kPi, kPi},
         {0.5 * kPi, 0.5 * kPi, kPi, kPi},
         all,
         {"omega_s[3]", "omega_s[4]"},
         "Omega_s of ensembles 3,4 printed without the factor r"},
        {{r2, r2, 0, 0},
         {r2, r2, 0, 0},
         with_r,
         {1.5 * kPi, 0.5 * kPi, 0, 0},
         {0.5 * kPi, 1.5 * kPi, 0, 0},
         first_two,
         {},
         ""},
        {{b10, b10, a10, a10},
         {b10, b10, a10, a10},
         r_on_first_two,
         {1.5 * kPi, 1.5 * kPi, 1.5 * kPi, 1.5 * kPi},
         {kPi, kPi, 0.5 * kPi, 0.5 * kPi},
         all,
         {"omega_s[3]", "omega_s[4]", "phi_u[1]", "phi_u[2]"},
         "Omega_s of ensembles 3,4 printed without r; phi_u of ensembles 1,2 printed 3pi/2 where d_S3 needs pi"},
        {{0, 0, r2, r2},
         {0, 0, r2, r2},
         r_on_first_two,
         {0, 0, 1.5 * kPi, 0.5 * kPi},
         {0, 0, 0.5 * kPi, 1.5 * kPi},
         all,
         {"omega_s[3]", "omega_s[4]"},
         "Omega_s of ensembles 3,4 printed without the factor r"},
        // tshape
        {{0, t1, t1, t1},
         {0, t1, t1, t1},
         with_r,
         {0.5 * kPi, kPi, kPi, kPi},
         {1.5 * kPi, kPi, kPi, kPi},
         all,
         {"omega_u[1]", "omega_s[1]"},
         "Omega_u1 = Omega_s1/r printed as 0; d_T1 needs sqrt3 Omega"},
        {{0, 2.0 * t2, t2, t2},
         {0, 2.0 * t2, t2, t2},
         {true, false, true, true},
         {1.5 * kPi, 0.5 * kPi, 0, 0},
         {0.5 * kPi, 1.5 * kPi, 0, 0},
         first_two,
         {"omega_s[2]", "phi_u[2]", "phi_s[2]"},
         "Omega_s2 printed without r; ensembles 3,4 printed as Omega_r_n (read as Omega_u) with no phases; "
         "phi_u2/phi_s2 printed pi/2, 3pi/2 where d_T2 needs 0"},
        {{0, 0, r2, r2},
         {0, 0, r2, r2},
         with_r,
         {0, 0, kPi, kPi},
         {0, 0, kPi, kPi},
         all,
         {"phi_u[3]", "phi_s[3]"},
         "phi of ensemble 3 printed pi; d_T3 = (c3 - c4)/sqrt2 needs 0"},
        {{1, 1, 1, 1}, {1, 1, 1, 1}, with_r, {0.5 * kPi, 0, 0, 0}, {1.5 * kPi, 0, 0, 0}, all, {}, ""},
    }};
    return kTables.at(static_cast<std::size_t>(static_cast<int>(kind) * 4 + (index - 1)));
}

double phase_distance(double a, double b) {
    const double w = wrap_phase(a - b);
    return std::min(w, 2.0 * kPi - w);
}

std::vector<FieldDiff> stage_diffs(const StageFixture &fixture, const PulseStage &generated, double phase_shift,
                                   double tol) {
    std::vector<FieldDiff> diffs;
    const PulseStage &p = fixture.stage;
    const double scale = std::max({1.0, *std::max_element(p.omega_u.begin(), p.omega_u.end()),
                                   *std::max_element(generated.omega_u.begin(), generated.omega_u.end())});
    auto flagged = [&fixture](const std::string &name) {
        return std::find(fixture.flagged_fields.begin(), fixture.flagged_fields.end(), name) !=
               fixture.flagged_fields.end();
    };
    auto amp = [&](const char *what, double printed, double gen, std::size_t j) {
        if (std::abs(printed - gen) > tol * scale) {
            const auto name = field_name(what, j);
            diffs.push_back({name, printed, gen, flagged(name)});
        }
    };
    auto phase = [&](const char *what, double printed, double gen, double a_printed, double a_gen, std::size_t j) {
        if (!fixture.phase_printed[j] || a_printed == 0.0 || a_gen == 0.0) {
            return;
        }
        if (phase_distance(printed, gen + phase_shift) > tol) {
            const auto name = field_name(what, j);
            diffs.push_back({name, printed, wrap_phase(gen + phase_shift), flagged(name)});
        }
    };
    for (std::size_t j = 0; j < kEnsembles; ++j) {
        amp("omega_u", p.omega_u[j], generated.omega_u[j], j);
        amp("omega_s", p.omega_s[j], generated.omega_s[j], j);
    }
    for (std::size_t j = 0; j < kEnsembles; ++j) {
        phase("phi_u", p.phi_u[j], generated.phi_u[j], p.omega_u[j], generated.omega_u[j], j);
        phase("phi_s", p.phi_s[j], generated.phi_s[j], p.omega_s[j], generated.omega_s[j], j);
    }
    return diffs;
}

bool all_flagged(const std::vector<FieldDiff> &diffs) {
    return std::all_of(diffs.begin(), diffs.end(), [](const FieldDiff &d) { return d.flagged; });
}

}  // namespace

void ModeTransform::validate() const {
    if (U.rows() != 4 || U.cols() != 4) {
        throw InvalidTransform("ModeTransform " + name + ": expected a 4x4 matrix",
                               std::numeric_limits<double>::infinity());
    }
    const double dev = unitarity_deviation(U);
    if (dev > 1e-12) {
        std::ostringstream msg;
        msg << "ModeTransform " << name << ": rows are not orthonormal (deviation " << dev << ")";
        throw InvalidTransform(msg.str(), dev);
    }
}

ModeTransform builtin_transform(ClusterKind kind) {
    const double s2 = 1.0 / std::sqrt(2.0);
    const double s10 = 1.0 / std::sqrt(10.0);
    ModeTransform t;
    switch (kind) {
        case ClusterKind::Linear:
            t.name = "T1";
            t.U = rows({{-kI * s2, -s2, 0.0, 0.0},
                        {-kI * s10, s10, 2.0 * kI * s10, 2.0 * s10},
                        {0.0, 0.0, -s2, -kI * s2},
                        {-2.0 * s10, -2.0 * kI * s10, -s10, kI * s10}});
            break;
        case ClusterKind::Square:
            t.name = "T2";
            t.U = rows({{-kI * s10, -kI * s10, -2.0 * s10, -2.0 * s10},
                        {-kI * s2, kI * s2, 0.0, 0.0},
                        {-2.0 * s10, -2.0 * s10, -kI * s10, -kI * s10},
                        {0.0, 0.0, -kI * s2, kI * s2}});
            break;
        case ClusterKind::TShape: {
            t.name = "T3";
            const double h3 = std::sqrt(3.0) / 2.0;
            const double h6 = std::sqrt(6.0) / 3.0;
            t.U = rows({{kI * h3, -h3 / 3.0, -h3 / 3.0, -h3 / 3.0},
                        {0.0, h6, -0.5 * h6, -0.5 * h6},
                        {0.0, 0.0, s2, -s2},
                        {0.5 * kI, 0.5, 0.5, 0.5}});
            break;
        }
    }
    t.validate();
    return t;
}

ModeTransform protocol_transform(ClusterKind kind) {
    ModeTransform t = builtin_transform(kind);
    if (kind == ClusterKind::TShape) {
        t.name = "T3'";
        t.U.topRows(3) *= kI;
        t.validate();
    }
    return t;
}

PulseStage stage_from_mode_vector(const ComplexVector &v, double omega, double r, double duration) {
    if (v.size() != static_cast<Eigen::Index>(kEnsembles)) {
        throw InvalidParameter("stage_from_mode_vector: mode vector must have four components");
    }
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "stage_from_mode_vector: mode vector must be normalized, |v| = " << norm;
        throw InvalidParameter(msg.str());
    }
    PulseStage stage;
    stage.duration = duration;
    for (std::size_t j = 0; j < kEnsembles; ++j) {
        const Complex c = v(static_cast<Eigen::Index>(j));
        const double mag = std::abs(c);
        const double arg = mag > 0.0 ? wrap_phase(std::arg(c)) : 0.0;
        stage.omega_u[j] = 2.0 * omega * mag;
        stage.omega_s[j] = 2.0 * r * omega * mag;
        stage.phi_u[j] = arg;
        stage.phi_s[j] = wrap_phase(-arg);
    }
    stage.validate();
    return stage;
}

StageFixture printed_stage_fixture(ClusterKind kind, int stage_index, double omega, double r, double duration) {
    if (stage_index < 1 || stage_index > 4) {
        std::ostringstream msg;
        msg << "printed_stage_fixture: stage index must be 1..4, got " << stage_index;
        throw InvalidParameter(msg.str());
    }
    const TableRow &row = table_row(kind, stage_index);
    StageFixture f;
    f.kind = kind;
    f.index = stage_index;
    f.stage.duration = duration;
    for (std::size_t j = 0; j < kEnsembles; ++j) {
        f.stage.omega_u[j] = row.u[j] * omega;
        f.stage.omega_s[j] = row.s[j] * omega * (row.s_has_r[j] ? r : 1.0);
        f.stage.phi_u[j] = row.phi_u[j];
        f.stage.phi_s[j] = row.phi_s[j];
    }
    f.phase_printed = row.printed;
    f.flagged_fields = row.flags;
    f.note = row.note;
    return f;
}

CouplingReport transformed_coupling(const PulseStage &stage, const ModeTransform &transform,
                                    const PhysicalParams &params) {
    transform.validate();
    const QuadraticHamiltonian h = build_effective_hamiltonian(stage, params);
    // c_k = sum_j conj(U_jk) d_j, so a^dag sum_k F_0k c_k = a^dag sum_j (sum_k F_0k conj(U_jk)) d_j.
    const ComplexVector f0 = h.F().row(0).segment(1, 4).transpose();
    const ComplexVector g0 = h.G().row(0).segment(1, 4).transpose();
    const ComplexVector bs = transform.U.conjugate() * f0;
    const ComplexVector sq = transform.U * g0;

    CouplingReport report;
    double largest = 0.0;
    std::array<double, kEnsembles> mag{};
    for (std::size_t j = 0; j < kEnsembles; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        report.beam_splitter[j] = bs(jj);
        report.squeezing[j] = sq(jj);
        mag[j] = std::max(std::abs(bs(jj)), std::abs(sq(jj)));
        largest = std::max(largest, mag[j]);
    }
    if (largest == 0.0) {
        return report;
    }
    const double threshold = 1e-10 * std::max(params.beta(), largest);
    for (std::size_t j = 0; j < kEnsembles; ++j) {
        if (mag[j] >= threshold) {
            report.coupled.push_back(j);
        }
    }
    if (report.coupled.size() == 1) {
        report.target = report.coupled.front();
        for (std::size_t j = 0; j < kEnsembles; ++j) {
            if (j != *report.target) {
                report.off_target = std::max(report.off_target, mag[j]);
            }
        }
    }
    return report;
}

Protocol builtin_protocol(ClusterKind kind, const PhysicalParams &params, double stage_time) {
    params.validate();
    Protocol p;
    p.kind = kind;
    p.transform = protocol_transform(kind);
    p.graph = builtin_graph(kind);
    p.xi = params.xi();
    for (Eigen::Index j = 0; j < 4; ++j) {
        p.stages.push_back(
            stage_from_mode_vector(p.transform.U.row(j).transpose(), params.omega, params.r, stage_time));
    }
    return p;
}

std::string to_string(Method method) {
    return method == Method::LyapunovSequential ? "lyapunov_sequential" : "time_domain";
}

Method parse_method(std::string_view name) {
    if (name == "lyapunov" || name == "lyapunov_sequential") {
        return Method::LyapunovSequential;
    }
    if (name == "ode" || name == "time_domain") {
        return Method::TimeDomain;
    }
    throw InvalidParameter("unknown method '" + std::string(name) + "' (expected lyapunov or ode)");
}

ProtocolRun run_protocol(const Protocol &protocol, const PhysicalParams &params, Method method,
                         double stage_time) {
    params.validate();
    protocol.transform.validate();
    if (protocol.stages.size() != kEnsembles) {
        throw InvalidParameter("run_protocol: a protocol needs exactly four stages");
    }
    if (method == Method::TimeDomain && !(stage_time > 0.0)) {
        throw InvalidParameter("run_protocol: stage_time must be positive");
    }

    ProtocolRun run;
    const auto conv = convergence_eigenvalues(params.beta(), params.r, params.kappa);
    if (conv.slow()) {
        std::ostringstream msg;
        msg << "slow regime: beta*sqrt(1-r^2) = " << params.beta() * std::sqrt(1.0 - params.r * params.r)
            << " <= kappa/2; steady state needs about " << conv.time_to_steady << " per stage";
        run.warnings.push_back(msg.str());
    }

    const std::vector<double> damping = model_damping(params.kappa);
    const std::vector<std::size_t> ensembles = {1, 2, 3, 4};
    const std::vector<std::size_t> ensemble_only = {1, 2, 3, 4};
    GaussianState state = GaussianState::vacuum(model_mode_labels());
    std::vector<std::size_t> seen_targets;

    for (std::size_t s = 0; s < protocol.stages.size(); ++s) {
        const PulseStage &stage = protocol.stages[s];
        const CouplingReport coupling = transformed_coupling(stage, protocol.transform, params);
        if (coupling.coupled.size() > 1) {
            std::ostringstream msg;
            msg << "stage " << s + 1 << " couples the cavity to " << coupling.coupled.size() << " combined modes";
            run.warnings.push_back(msg.str());
        }
        if (coupling.target) {
            if (std::find(seen_targets.begin(), seen_targets.end(), *coupling.target) != seen_targets.end()) {
                std::ostringstream msg;
                msg << "stage " << s + 1 << " re-targets combined mode d" << *coupling.target + 1;
                run.warnings.push_back(msg.str());
            }
            seen_targets.push_back(*coupling.target);
        }

        if (method == Method::TimeDomain) {
            const auto dd = drift_diffusion(build_effective_hamiltonian(stage, params), damping);
            state = evolve(state, dd, stage_time);
        } else {
            // Work in the combined-mode frame; the stage acts on the cavity and the
            // coupled combined modes only.
            GaussianState framed = apply_mode_transform(state, protocol.transform.U, ensembles);
            const auto m = static_cast<Eigen::Index>(1 + coupling.coupled.size());
            ComplexMatrix F = ComplexMatrix::Zero(m, m);
            ComplexMatrix G = ComplexMatrix::Zero(m, m);
            for (Eigen::Index i = 1; i < m; ++i) {
                const std::size_t j = coupling.coupled[static_cast<std::size_t>(i - 1)];
                F(0, i) = coupling.beam_splitter[j];
                F(i, 0) = std::conj(F(0, i));
                G(0, i) = G(i, 0) = coupling.squeezing[j];
            }
            std::vector<double> sub_damping(static_cast<std::size_t>(m), 0.0);
            sub_damping[0] = cavity_lindblad_rate(params.kappa);
            RealMatrix sub_cov;
            try {
                sub_cov = steady_state(drift_diffusion(QuadraticHamiltonian(F, G), sub_damping));
            } catch (const NoSteadyState &e) {
                std::ostringstream msg;
                msg << "stage " << s + 1 << " of the " << to_string(protocol.kind)
                    << " protocol has no steady state: " << e.what();
                throw NoSteadyState(msg.str(), e.offending_real(), e.offending_imag());
            }

            std::vector<Eigen::Index> sub_modes = {0};
            for (std::size_t j : coupling.coupled) {
                sub_modes.push_back(static_cast<Eigen::Index>(j + 1));
            }
            RealVector mean = framed.mean();
            RealMatrix cov = framed.cov();
            for (Eigen::Index a : sub_modes) {
                mean.segment<2>(2 * a).setZero();
                for (Eigen::Index b = 0; b < static_cast<Eigen::Index>(kModelModes); ++b) {
                    cov.block<2, 2>(2 * a, 2 * b).setZero();
                    cov.block<2, 2>(2 * b, 2 * a).setZero();
                }
            }
            for (std::size_t i = 0; i < sub_modes.size(); ++i) {
                for (std::size_t k = 0; k < sub_modes.size(); ++k) {
                    cov.block<2, 2>(2 * sub_modes[i], 2 * sub_modes[k]) =
                        sub_cov.block<2, 2>(2 * static_cast<Eigen::Index>(i), 2 * static_cast<Eigen::Index>(k));
                }
            }
            framed = GaussianState(framed.labels(), std::move(mean), std::move(cov));
            state = apply_mode_transform(framed, protocol.transform.U.adjoint(), ensembles);
        }

        StageTrace t;
        t.stage = static_cast<int>(s + 1);
        t.target = coupling.target;
        t.nullifiers = nullifier_variances(state, protocol.graph);
        t.ensemble_purity = purity(state.reduced(ensemble_only).cov());
        const RealMatrix &cov = state.cov();
        t.cavity_deviation = std::max((cov.topLeftCorner(2, 2) - 0.5 * RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(),
                                      cov.block(0, 2, 2, 8).cwiseAbs().maxCoeff());
        run.trace.push_back(std::move(t));
    }
    run.final_state = std::move(state);
    return run;
}

std::string to_string(MatchStatus status) {
    switch (status) {
        case MatchStatus::Exact:
            return "exact";
        case MatchStatus::SignEquivalent:
            return "sign_equivalent";
        case MatchStatus::ExpectedMismatch:
            return "expected_mismatch";
        case MatchStatus::UnexpectedMismatch:
            return "unexpected_mismatch";
    }
    return "unknown";
}

StageComparison compare_stage(const StageFixture &fixture, const PulseStage &generated, double tol) {
    StageComparison out;
    out.kind = fixture.kind;
    out.index = fixture.index;
    out.note = fixture.note;
    const PulseStage gen = generated.normalized();
    out.diffs = stage_diffs(fixture, gen, 0.0, tol);
    if (out.diffs.empty()) {
        out.status = MatchStatus::Exact;
        return out;
    }
    const auto flipped = stage_diffs(fixture, gen, kPi, tol);
    if (flipped.empty()) {
        out.status = MatchStatus::SignEquivalent;
    } else if (all_flagged(out.diffs) || all_flagged(flipped)) {
        out.status = MatchStatus::ExpectedMismatch;
    } else {
        out.status = MatchStatus::UnexpectedMismatch;
    }
    return out;
}

std::vector<StageComparison> check_tables(double omega, double r) {
    std::vector<StageComparison> out;
    for (ClusterKind kind : kAllClusterKinds) {
        const ModeTransform t = builtin_transform(kind);
        for (int i = 1; i <= 4; ++i) {
            const auto fixture = printed_stage_fixture(kind, i, omega, r);
            const auto generated = stage_from_mode_vector(t.U.row(i - 1).transpose(), omega, r, 4.0);
            out.push_back(compare_stage(fixture, generated));
        }
    }
    return out;
}

}  // namespace ringcluster
