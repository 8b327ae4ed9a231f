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

// Effective bosonic model of four atomic ensembles coupled to one cavity mode.
//
// Mode 0 is the cavity field a, modes 1..4 are the ensemble modes c_1..c_4.
// Rates default to units of the cavity decay rate kappa, where kappa is the
// field (amplitude) decay rate: <a> relaxes as exp(-kappa t).

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringcluster/gaussian.hpp"

namespace ringcluster {

inline constexpr std::size_t kEnsembles = 4;
inline constexpr std::size_t kModelModes = kEnsembles + 1;
inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

/// Labels of the five model modes: "a", "c1", ..., "c4".
std::vector<std::string> model_mode_labels();

struct PhysicalParams {
    double g = 1.0;         // atom-cavity coupling
    double detuning = 1.0;  // Delta
    double atoms = 1.0;     // N per ensemble
    double kappa = 1.0;     // cavity field decay rate
    double omega = 1.0;     // Rabi-frequency scale
    double r = 0.5;         // squeezing ratio Omega_s / Omega_u

    /// Params with g = Delta = N = 1 and Omega = beta, so that beta() == beta.
    static PhysicalParams from_coupling(double beta, double r, double kappa = 1.0);

    /// Throws InvalidParameter. r = 0 is admitted as the no-squeezing limit.
    void validate() const;

    /// sqrt(N) g Omega / Delta.
    double beta() const;
    /// atanh(r).
    double xi() const;
};

/// Lindblad rate of the cavity dissipator for field decay rate kappa.
double cavity_lindblad_rate(double kappa);

/// Per-mode Lindblad rates for the five-mode model: only the cavity decays.
std::vector<double> model_damping(double kappa);

/// Piecewise-constant laser settings for one pulse stage. Index j is ensemble j+1.
struct PulseStage {
    std::array<double, kEnsembles> omega_u{};
    std::array<double, kEnsembles> omega_s{};
    std::array<double, kEnsembles> phi_u{};
    std::array<double, kEnsembles> phi_s{};
    double duration = 4.0;

    void validate() const;
    /// Copy with every phase reduced to [0, 2 pi).
    PulseStage normalized() const;
};

/// Phase reduced to [0, 2 pi).
double wrap_phase(double phase);

struct EffectiveCouplings {
    Complex beta_u;
    Complex beta_s;
};

EffectiveCouplings effective_couplings(double omega_u, double phi_u, double omega_s, double phi_s, double g,
                                       double detuning);

/// Five-mode Hamiltonian with cavity-ensemble couplings only.
QuadraticHamiltonian build_effective_hamiltonian(const PulseStage &stage, const PhysicalParams &params);

struct Detunings {
    double delta_u = 0.0;  // laser detunings Delta_u, Delta_s
    double delta_s = 0.0;
    double cavity_u = 0.0;  // cavity detunings delta_u, delta_s
    double cavity_s = 0.0;
};

struct DispersiveReport {
    bool pass = true;
    double margin = 0.0;  // min detuning / max coupling
    double threshold = 100.0;
    std::optional<double> resonance_residual;  // delta_a + 4 g^2 N / Delta
    std::string message;
};

DispersiveReport validate_dispersive_regime(const PhysicalParams &params, const PulseStage &stage,
                                            const Detunings &detunings,
                                            std::optional<double> cavity_detuning = std::nullopt,
                                            double ratio_threshold = 100.0);

/// kappa = 2 pi c / (L F), in rad/s.
double cavity_decay_from_finesse(double finesse, double round_trip_length_m);

/// gamma_eff = (1/4) (gamma / 2 pi) (Omega / Delta)^2, in Hz.
double effective_spontaneous_rate(double gamma_over_2pi_hz, double omega_over_detuning);

enum class ConvergenceRegime { Underdamped, Critical, Overdamped };

struct ConvergenceEstimate {
    Complex lambda_plus;
    Complex lambda_minus;
    double time_to_steady = 0.0;
    ConvergenceRegime regime = ConvergenceRegime::Underdamped;

    bool slow() const noexcept {
        return regime != ConvergenceRegime::Underdamped;
    }
};

/// lambda_pm = -kappa/2 +- sqrt((kappa/2)^2 - beta^2 (1 - r^2)) for a stage that
/// couples the cavity to one combined mode.
ConvergenceEstimate convergence_eigenvalues(double beta, double r, double kappa);

std::string to_string(ConvergenceRegime regime);

}  // namespace ringcluster
