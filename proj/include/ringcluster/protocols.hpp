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

#pragma once

// Four-stage pulse protocols that prepare linear, square and T-shape cluster
// states. Each stage couples the cavity to one combined mode d_j = sum_k U_jk c_k
// through beta (a^dag d_j + r a^dag d_j^dag) + h.c.; cavity decay then pumps
// d_j into the squeezed vacuum S(xi)|0>, xi = atanh r.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringcluster/gaussian.hpp"
#include "ringcluster/model.hpp"
#include "ringcluster/verify.hpp"

namespace ringcluster {

/// Rows are the combined-mode coefficient vectors over (c1, c2, c3, c4).
struct ModeTransform {
    std::string name;
    ComplexMatrix U;

    /// Throws InvalidTransform unless U is 4x4 and unitary to 1e-12.
    void validate() const;
};

/// The transform exactly as printed for each cluster kind (T1, T2, T3).
ModeTransform builtin_transform(ClusterKind kind);

/// The transform whose squeezed-vacuum product state is the cluster state.
/// Equal to builtin_transform for linear and square. For the T-shape the
/// printed rows 1-3 carry an extra factor i; without it the product of
/// squeezed vacua is U^T U = diag(-1, 1, 1, 1), i.e. not entangled.
ModeTransform protocol_transform(ClusterKind kind);

/// Laser settings that couple the cavity to the combined mode sum_k v_k c_k with
/// coefficients (beta, r beta): Omega_u = 2 Omega |v|, phi_u = arg v,
/// Omega_s = r Omega_u, phi_s = -arg v. Components with v_k = 0 get phase 0.
PulseStage stage_from_mode_vector(const ComplexVector &v, double omega, double r, double duration);

/// One printed stage table, stored verbatim (including suspected typos).
struct StageFixture {
    ClusterKind kind = ClusterKind::Linear;
    int index = 1;  // 1..4
    PulseStage stage;
    std::array<bool, kEnsembles> phase_printed{};
    bool verbatim = true;
    /// Fields known to disagree with the generated stage, e.g. "omega_s[3]".
    std::vector<std::string> flagged_fields;
    std::string note;
};

StageFixture printed_stage_fixture(ClusterKind kind, int stage_index, double omega = 1.0, double r = 0.5,
                                 double duration = 4.0);

struct CouplingReport {
    /// Coefficient of a^dag d_j, per combined mode.
    std::array<Complex, kEnsembles> beam_splitter{};
    /// Coefficient of a^dag d_j^dag, per combined mode.
    std::array<Complex, kEnsembles> squeezing{};
    /// Zero-based indices of combined modes with non-negligible coupling.
    std::vector<std::size_t> coupled;
    /// Set when exactly one combined mode is coupled.
    std::optional<std::size_t> target;
    /// Largest off-target magnitude when a target exists, else 0.
    double off_target = 0.0;
};

CouplingReport transformed_coupling(const PulseStage &stage, const ModeTransform &transform,
                                    const PhysicalParams &params);

struct Protocol {
    ClusterKind kind = ClusterKind::Linear;
    ModeTransform transform;
    std::vector<PulseStage> stages;
    ClusterGraph graph = builtin_graph(ClusterKind::Linear);
    double xi = 0.0;
};

/// Stages generated from the rows of protocol_transform(kind).
Protocol builtin_protocol(ClusterKind kind, const PhysicalParams &params, double stage_time = 4.0);

enum class Method { LyapunovSequential, TimeDomain };

std::string to_string(Method method);
/// Accepts "lyapunov", "lyapunov_sequential", "ode", "time_domain".
Method parse_method(std::string_view name);

struct StageTrace {
    int stage = 0;  // 1-based
    std::optional<std::size_t> target;
    std::vector<double> nullifiers;
    double ensemble_purity = 0.0;
    /// max |cov_cavity - I/2| together with the cavity-ensemble cross block.
    double cavity_deviation = 0.0;
};

struct ProtocolRun {
    GaussianState final_state = GaussianState::vacuum(model_mode_labels());
    std::vector<StageTrace> trace;
    std::vector<std::string> warnings;
};

/// Starts from global vacuum and applies the stages in order.
///
/// TimeDomain integrates each stage for `stage_time`. LyapunovSequential
/// replaces each stage by the exact steady state of the cavity together with
/// the combined modes it couples to, leaving the other combined modes alone.
ProtocolRun run_protocol(const Protocol &protocol, const PhysicalParams &params, Method method,
                         double stage_time = 4.0);

enum class MatchStatus { Exact, SignEquivalent, ExpectedMismatch, UnexpectedMismatch };

std::string to_string(MatchStatus status);

struct FieldDiff {
    std::string field;
    double printed = 0.0;
    double generated = 0.0;
    bool flagged = false;
};

struct StageComparison {
    ClusterKind kind = ClusterKind::Linear;
    int index = 1;
    MatchStatus status = MatchStatus::Exact;
    /// Differences against the generated stage as-is.
    std::vector<FieldDiff> diffs;
    std::string note;
};

/// Compares amplitudes to `tol` and phases modulo 2 pi. Phases are skipped
/// where either amplitude is zero or the table does not print them.
StageComparison compare_stage(const StageFixture &fixture, const PulseStage &generated, double tol = 1e-12);

/// All twelve printed tables against stages generated from the printed transform rows.
std::vector<StageComparison> check_tables(double omega = 1.0, double r = 0.5);

}  // namespace ringcluster
