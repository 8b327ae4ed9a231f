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

#include "ringcluster/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ringcluster/errors.hpp"

namespace ringcluster {

namespace {

void require_positive(double value, const char *name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be positive and finite, got " << value;
        throw InvalidParameter(msg.str());
    }
}

}  // namespace

std::vector<std::string> model_mode_labels() {
    return {"a", "c1", "c2", "c3", "c4"};
}

PhysicalParams PhysicalParams::from_coupling(double beta, double r, double kappa) {
    PhysicalParams p;
    p.g = 1.0;
    p.detuning = 1.0;
    p.atoms = 1.0;
    p.kappa = kappa;
    p.omega = beta;
    p.r = r;
    return p;
}

void PhysicalParams::validate() const {
    require_positive(g, "g");
    require_positive(detuning, "detuning");
    require_positive(kappa, "kappa");
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw InvalidParameter("omega must be finite and non-negative");
    }
    if (!(atoms >= 1.0) || !std::isfinite(atoms)) {
        throw InvalidParameter("atom number N must be at least 1");
    }
    if (!(r >= 0.0 && r < 1.0)) {
        std::ostringstream msg;
        msg << "squeezing ratio r must lie in [0, 1), got " << r;
        throw InvalidParameter(msg.str());
    }
}

double PhysicalParams::beta() const {
    return std::sqrt(atoms) * g * omega / detuning;
}

double PhysicalParams::xi() const {
    return std::atanh(r);
}

double cavity_lindblad_rate(double kappa) {
    return 2.0 * kappa;
}

std::vector<double> model_damping(double kappa) {
    std::vector<double> damping(kModelModes, 0.0);
    damping[0] = cavity_lindblad_rate(kappa);
    return damping;
}

double wrap_phase(double phase) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phase, two_pi);
    if (w < 0.0) {
        w += two_pi;
    }
    // fmod of a value just below 0 can round up to exactly 2 pi.
    return w >= two_pi ? 0.0 : w;
}

void PulseStage::validate() const {
    for (std::size_t j = 0; j < kEnsembles; ++j) {
        if (!(omega_u[j] >= 0.0) || !(omega_s[j] >= 0.0) || !std::isfinite(omega_u[j]) ||
            !std::isfinite(omega_s[j])) {
            throw InvalidParameter("PulseStage: Rabi amplitudes must be finite and non-negative");
        }
        if (!std::isfinite(phi_u[j]) || !std::isfinite(phi_s[j])) {
            throw InvalidParameter("PulseStage: phases must be finite");
        }
    }
    require_positive(duration, "PulseStage duration");
}

PulseStage PulseStage::normalized() const {
    PulseStage out = *this;
    for (std::size_t j = 0; j < kEnsembles; ++j) {
        out.phi_u[j] = wrap_phase(phi_u[j]);
        out.phi_s[j] = wrap_phase(phi_s[j]);
    }
    return out;
}

EffectiveCouplings effective_couplings(double omega_u, double phi_u, double omega_s, double phi_s, double g,
                                       double detuning) {
    if (detuning == 0.0) {
        throw InvalidParameter("effective_couplings: detuning must be non-zero");
    }
    return {std::polar(omega_u * g / (2.0 * detuning), phi_u), std::polar(omega_s * g / (2.0 * detuning), phi_s)};
}

QuadraticHamiltonian build_effective_hamiltonian(const PulseStage &stage, const PhysicalParams &params) {
    stage.validate();
    params.validate();
    const auto n = static_cast<Eigen::Index>(kModelModes);
    ComplexMatrix F = ComplexMatrix::Zero(n, n);
    ComplexMatrix G = ComplexMatrix::Zero(n, n);
    const double root_n = std::sqrt(params.atoms);
    for (std::size_t j = 0; j < kEnsembles; ++j) {
        const auto c = static_cast<Eigen::Index>(j + 1);
        const auto [bu, bs] = effective_couplings(stage.omega_u[j], stage.phi_u[j], stage.omega_s[j],
                                                  stage.phi_s[j], params.g, params.detuning);
        F(0, c) = root_n * bu;  // a^dag c_j
        F(c, 0) = std::conj(F(0, c));
        G(0, c) = root_n * bs;  // a^dag c_j^dag
        G(c, 0) = G(0, c);
    }
    return QuadraticHamiltonian(std::move(F), std::move(G));
}

DispersiveReport validate_dispersive_regime(const PhysicalParams &params, const PulseStage &stage,
                                            const Detunings &detunings, std::optional<double> cavity_detuning,
                                            double ratio_threshold) {
    DispersiveReport report;
    report.threshold = ratio_threshold;

    double max_laser = 0.0;
    for (std::size_t j = 0; j < kEnsembles; ++j) {
        max_laser = std::max({max_laser, std::abs(stage.omega_u[j]), std::abs(stage.omega_s[j])});
    }
    const double min_detuning = std::min({std::abs(detunings.delta_u), std::abs(detunings.delta_s),
                                          std::abs(detunings.cavity_u), std::abs(detunings.cavity_s)});
    if (cavity_detuning) {
        report.resonance_residual = *cavity_detuning + 4.0 * params.g * params.g * params.atoms / params.detuning;
    }

    std::ostringstream msg;
    if (max_laser == 0.0) {
        report.pass = true;
        report.margin = std::numeric_limits<double>::infinity();
        msg << "no laser field is on; dispersive condition holds vacuously";
    } else {
        const double max_coupling = std::max(max_laser, std::abs(params.g));
        report.margin = min_detuning / max_coupling;
        report.pass = report.margin >= ratio_threshold;
        msg << "detuning/coupling margin " << report.margin << (report.pass ? " >= " : " < ") << ratio_threshold;
    }
    report.message = msg.str();
    return report;
}

double cavity_decay_from_finesse(double finesse, double round_trip_length_m) {
    require_positive(finesse, "finesse");
    require_positive(round_trip_length_m, "round-trip length");
    const double fsr = kSpeedOfLight / round_trip_length_m;
    return 2.0 * std::numbers::pi * fsr / finesse;
}

double effective_spontaneous_rate(double gamma_over_2pi_hz, double omega_over_detuning) {
    if (!(gamma_over_2pi_hz >= 0.0) || !(omega_over_detuning >= 0.0)) {
        throw InvalidParameter("effective_spontaneous_rate: inputs must be non-negative");
    }
    return 0.25 * gamma_over_2pi_hz * omega_over_detuning * omega_over_detuning;
}

ConvergenceEstimate convergence_eigenvalues(double beta, double r, double kappa) {
    require_positive(kappa, "kappa");
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw InvalidParameter("convergence_eigenvalues: beta must be non-negative");
    }
    if (!(r >= 0.0 && r < 1.0)) {
        std::ostringstream msg;
        msg << "convergence_eigenvalues: r must lie in [0, 1), got " << r;
        throw InvalidParameter(msg.str());
    }
    const double half = 0.5 * kappa;
    const double coupling = beta * std::sqrt(1.0 - r * r);
    const double disc = half * half - coupling * coupling;
    const Complex root = std::sqrt(Complex(disc, 0.0));

    ConvergenceEstimate est;
    est.lambda_plus = Complex(-half, 0.0) + root;
    est.lambda_minus = Complex(-half, 0.0) - root;
    if (std::abs(coupling - half) <= 1e-12 * half) {
        est.regime = ConvergenceRegime::Critical;
    } else if (coupling > half) {
        est.regime = ConvergenceRegime::Underdamped;
    } else {
        est.regime = ConvergenceRegime::Overdamped;
    }

    if (est.regime == ConvergenceRegime::Underdamped) {
        est.time_to_steady = 4.0 / kappa;
    } else {
        const double slow_rate = std::abs(est.lambda_plus.real());
        est.time_to_steady = slow_rate > 0.0 ? 8.0 / slow_rate : std::numeric_limits<double>::infinity();
    }
    return est;
}

std::string to_string(ConvergenceRegime regime) {
    switch (regime) {
        case ConvergenceRegime::Underdamped:
            return "underdamped";
        case ConvergenceRegime::Critical:
            return "critical";
        case ConvergenceRegime::Overdamped:
            return "overdamped";
    }
    return "unknown";
}

}  // namespace ringcluster
