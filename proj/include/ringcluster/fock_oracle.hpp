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

// Brute-force check of the Gaussian solver: the cavity plus one combined mode,
// H = beta (a^dag d + r a^dag d^dag) + h.c. with cavity damping, integrated
// as a density matrix in a truncated number basis.

#include <cstddef>
#include <vector>

#include "ringcluster/gaussian.hpp"

namespace ringcluster {

struct FockConfig {
    std::size_t cutoff_a = 20;  // max photon number of the cavity
    std::size_t cutoff_d = 20;  // max excitation of the combined mode
    double beta = 1.0;
    double r = 0.3;
    double kappa = 1.0;  // field decay rate; the cavity Lindblad rate is 2 kappa
    double t_final = 6.0;
    double dt = 0.02;
    double leakage_guard = 1e-6;
    /// Repeat the integration at dt/2 and report the covariance difference.
    bool step_halving = true;

    /// Throws InvalidParameter.
    void validate() const;
};

struct FockResult {
    ComplexMatrix rho;
    /// Ordering (q_a, p_a, q_d, p_d), vacuum = I/2.
    RealMatrix covariance;
    std::size_t steps = 0;
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    /// Largest population seen on the top Fock level of either mode.
    double max_leakage = 0.0;
    /// Max-abs covariance difference between dt and dt/2; NaN when not run.
    double step_halving_error = 0.0;
};

/// Throws CutoffTooSmall when the top-level population exceeds the guard.
FockResult integrate_two_mode(const FockConfig &config);

/// The same model propagated by the Gaussian solver, ordering (q_a, p_a, q_d, p_d).
RealMatrix gaussian_two_mode_covariance(const FockConfig &config);

/// Quadrature covariance of a state on the product basis |n_1, ..., n_m>,
/// mode 1 slowest-varying, `cutoffs[k]` the max excitation of mode k.
/// Throws Unphysical unless rho is Hermitian, unit-trace and positive.
RealMatrix covariance_from_density(const ComplexMatrix &rho, const std::vector<std::size_t> &cutoffs);

/// |n><n| truncated at `cutoff`.
ComplexMatrix number_state_density(std::size_t n, std::size_t cutoff);

/// S(xi)|0><0|S(xi)^dag with S(xi) = exp[xi/2 (a^2 - a^dag^2)], built by
/// exponentiating in a larger space and truncating at `cutoff`.
ComplexMatrix squeezed_vacuum_density(double xi, std::size_t cutoff);

}  // namespace ringcluster
